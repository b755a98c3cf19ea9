#include "extscen/demo.hpp"

#include "extscen/rng.hpp"
#include "extscen/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace extscen::demo {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

double clamp_range(double v, double lo, double hi)
{
    return std::min(std::max(v, lo), hi);
}

struct YearProfiles {
    std::vector<double> wind_cf;
    std::vector<double> pv_cf;
    std::vector<double> load_mw;
};

YearProfiles make_year(const DemoSpec& spec, int year_index)
{
    const int nt = spec.n_periods;
    YearProfiles p;
    p.wind_cf.resize(static_cast<std::size_t>(nt));
    p.pv_cf.resize(static_cast<std::size_t>(nt));
    p.load_mw.resize(static_cast<std::size_t>(nt));

    Rng rng(derive_seed(spec.seed, 0x9e, static_cast<std::uint64_t>(year_index)));

    // Periods map onto a nominal hourly year; shorter horizons just cover
    // the start of it, which keeps small desk cases cheap and varied.
    const double hours_per_year = 8760.0;

    // Multi-day weather states as AR(1) processes.
    double wind_state = rng.normal();
    double cloud_state = rng.normal();
    const double wind_rho = 0.995;
    const double cloud_rho = 0.985;

    // Year-to-year spread of the annual peak, zero-mean across a large
    // ensemble so the average peak stays at spec.peak_load_mw.
    const double peak_jitter = 0.06 * rng.normal();
    const double year_peak = spec.peak_load_mw * (1.0 + peak_jitter);

    std::vector<double> raw_load(static_cast<std::size_t>(nt));
    double raw_load_max = 0.0;
    double load_noise = 0.0;

    for (int t = 0; t < nt; ++t) {
        const auto tu = static_cast<std::size_t>(t);
        const int hour = t % 24;
        const int day = t / 24;
        const double season = static_cast<double>(t) / hours_per_year; // 0 = Jan 1

        wind_state = wind_rho * wind_state + std::sqrt(1.0 - wind_rho * wind_rho) * rng.normal();
        cloud_state = cloud_rho * cloud_state + std::sqrt(1.0 - cloud_rho * cloud_rho) * rng.normal();

        // Wind: winter-leaning seasonal mean plus synoptic swings.
        const double wind_seasonal = 0.36 + 0.16 * std::cos(kTwoPi * (season - 0.02));
        p.wind_cf[tu] = clamp_range(wind_seasonal + 0.30 * wind_state + 0.03 * rng.normal(), 0.0, 0.98);

        // PV: daylight bell with seasonal amplitude and day length,
        // attenuated by slow cloud cover.
        const double day_len = 12.0 + 4.0 * std::cos(kTwoPi * (season - 0.5));
        const double sunrise = 12.0 - 0.5 * day_len;
        const double sunset = 12.0 + 0.5 * day_len;
        double bell = 0.0;
        if (hour > sunrise && hour < sunset) {
            bell = std::sin(3.14159265358979323846 * (hour - sunrise) / day_len);
        }
        const double pv_amp = 0.50 + 0.25 * std::cos(kTwoPi * (season - 0.5));
        const double cloud = clamp_range(0.65 + 0.30 * cloud_state, 0.12, 1.0);
        p.pv_cf[tu] = clamp_range(pv_amp * bell * bell * cloud, 0.0, 0.95);

        // Load: winter-peaking seasonal base, double diurnal peak, weekend
        // dip, small fast noise. Scaled afterwards to the year's peak.
        const double seasonal = 0.62 + 0.14 * std::cos(kTwoPi * (season - 0.03));
        const double morning = std::exp(-0.5 * std::pow((hour - 9.0) / 2.6, 2.0));
        const double evening = std::exp(-0.5 * std::pow((hour - 19.0) / 2.2, 2.0));
        const double weekend = (day % 7 >= 5) ? 0.94 : 1.0;
        load_noise = 0.9 * load_noise + 0.1 * rng.normal();
        const double shape =
            (seasonal + 0.11 * morning + 0.15 * evening) * weekend * (1.0 + 0.02 * load_noise);
        raw_load[tu] = std::max(shape, 0.05);
        raw_load_max = std::max(raw_load_max, raw_load[tu]);
    }

    const double scale = year_peak / raw_load_max;
    for (int t = 0; t < nt; ++t) {
        p.load_mw[static_cast<std::size_t>(t)] = raw_load[static_cast<std::size_t>(t)] * scale;
    }
    return p;
}

} // namespace

std::vector<Scenario> make_historical(const DemoSpec& spec)
{
    if (spec.n_years < 1 || spec.n_periods < 1) {
        throw std::invalid_argument("demo: need at least one year and one period");
    }
    std::vector<Scenario> out;
    out.reserve(static_cast<std::size_t>(spec.n_years));
    for (int y = 0; y < spec.n_years; ++y) {
        const YearProfiles p = make_year(spec, y);
        Scenario s;
        s.label = std::to_string(spec.first_year + y);
        s.rg_mw.resize(2);
        s.ld_mw.resize(1);
        s.rg_mw[0].resize(p.wind_cf.size());
        s.rg_mw[1].resize(p.pv_cf.size());
        for (std::size_t t = 0; t < p.wind_cf.size(); ++t) {
            s.rg_mw[0][t] = p.wind_cf[t] * spec.wind_capacity_mw;
            s.rg_mw[1][t] = p.pv_cf[t] * spec.pv_capacity_mw;
        }
        s.ld_mw[0] = p.load_mw;
        out.push_back(std::move(s));
    }
    return out;
}

std::filesystem::path write_dataset(const std::filesystem::path& dir, const DemoSpec& spec)
{
    std::filesystem::create_directories(dir);

    std::vector<YearProfiles> years;
    years.reserve(static_cast<std::size_t>(spec.n_years));
    for (int y = 0; y < spec.n_years; ++y) {
        years.push_back(make_year(spec, y));
    }

    auto write_wide = [&](const std::string& name, auto value_of) {
        std::ofstream out(dir / name);
        if (!out) {
            throw std::runtime_error("cannot write: " + (dir / name).string());
        }
        out << "period";
        for (int y = 0; y < spec.n_years; ++y) {
            out << ',' << (spec.first_year + y);
        }
        out << '\n';
        for (int t = 0; t < spec.n_periods; ++t) {
            out << (t + 1);
            for (int y = 0; y < spec.n_years; ++y) {
                out << ',' << format_double(value_of(years[static_cast<std::size_t>(y)],
                                                     static_cast<std::size_t>(t)));
            }
            out << '\n';
        }
    };
    write_wide("wind.csv", [](const YearProfiles& p, std::size_t t) { return p.wind_cf[t]; });
    write_wide("pv.csv", [](const YearProfiles& p, std::size_t t) { return p.pv_cf[t]; });
    write_wide("load.csv", [](const YearProfiles& p, std::size_t t) { return p.load_mw[t]; });

    ingest::DatasetDescriptor desc;
    desc.n_periods = spec.n_periods;
    desc.leap_policy = ingest::LeapPolicy::reject;
    desc.units = {
        {"wind", "rg", "wind.csv", ingest::ValueKind::capacity_factor, spec.wind_capacity_mw},
        {"pv", "rg", "pv.csv", ingest::ValueKind::capacity_factor, spec.pv_capacity_mw},
        {"load", "ld", "load.csv", ingest::ValueKind::mw, 2.0 * spec.peak_load_mw},
    };
    const auto desc_path = dir / "dataset.json";
    desc.save(desc_path);
    return desc_path;
}

} // namespace extscen::demo
