#include "extscen/risk.hpp"

#include <algorithm>
#include <stdexcept>

namespace extscen {

namespace {

int checked_period(const Scenario& s, int t)
{
    const int nt = static_cast<int>(s.n_periods());
    if (t < 1 || t > nt) {
        throw std::out_of_range("period " + std::to_string(t) + " outside [1, " +
                                std::to_string(nt) + "]");
    }
    return nt;
}

double column_sum(const std::vector<std::vector<double>>& m, std::size_t t0)
{
    double sum = 0.0;
    for (const auto& row : m) {
        sum += row[t0];
    }
    return sum;
}

inline double sgn_pos(double x)
{
    return x > 0.0 ? 1.0 : 0.0;
}

double shortage_at(const Scenario& s, const SystemModel& sys, std::size_t t0)
{
    const double balance = column_sum(s.ld_mw, t0) -
                           sys.params().alpha_sg * sys.sg_capacity_mw() -
                           column_sum(s.rg_mw, t0);
    return std::max(balance, 0.0);
}

double fluctuation_at(const Scenario& s, const SystemModel& sys, std::size_t t0)
{
    if (t0 == 0) {
        return 0.0;
    }
    double ld_delta = 0.0;
    for (const auto& row : s.ld_mw) {
        ld_delta += row[t0] - row[t0 - 1];
    }
    double rg_delta = 0.0;
    for (const auto& row : s.rg_mw) {
        rg_delta += row[t0 - 1] - row[t0];
    }
    const double ru = std::max(ld_delta + rg_delta - sys.sg_ramp_up_mw(), 0.0);
    const double rd = std::max(-ld_delta - rg_delta - sys.sg_ramp_down_mw(), 0.0);
    return std::max(ru, rd);
}

double windowed_index(const std::vector<double>& values, int t, int sigma, int horizon,
                      FluctForm form)
{
    const int t0 = t - 1;
    const int w_end = std::min(t0 + sigma, horizon - 1);
    if (form == FluctForm::literal) {
        double count = 0.0;
        for (int tau = t0; tau <= w_end; ++tau) {
            count += sgn_pos(values[static_cast<std::size_t>(tau)]);
        }
        const double v = values[static_cast<std::size_t>(t0)];
        return count * v * v;
    }
    double sum = 0.0;
    for (int tau = t0; tau <= w_end; ++tau) {
        const double v = values[static_cast<std::size_t>(tau)];
        sum += sgn_pos(v) * v * v;
    }
    return sum;
}

} // namespace

double RiskProfile::sum_ips() const
{
    double sum = 0.0;
    for (double v : ips) {
        sum += v;
    }
    return sum;
}

double RiskProfile::sum_ipf() const
{
    double sum = 0.0;
    for (double v : ipf) {
        sum += v;
    }
    return sum;
}

double power_shortage(const Scenario& s, const SystemModel& sys, int t)
{
    checked_period(s, t);
    return shortage_at(s, sys, static_cast<std::size_t>(t - 1));
}

double power_fluctuation(const Scenario& s, const SystemModel& sys, int t)
{
    checked_period(s, t);
    return fluctuation_at(s, sys, static_cast<std::size_t>(t - 1));
}

double shortage_index(const Scenario& s, const SystemModel& sys, int t)
{
    const int nt = checked_period(s, t);
    const int w_end = std::min(t - 1 + sys.params().sigma, nt - 1);
    std::vector<double> values(static_cast<std::size_t>(nt), 0.0);
    for (int tau = t - 1; tau <= w_end; ++tau) {
        values[static_cast<std::size_t>(tau)] = shortage_at(s, sys, static_cast<std::size_t>(tau));
    }
    return windowed_index(values, t, sys.params().sigma, nt, sys.params().fluct_form);
}

double fluctuation_index(const Scenario& s, const SystemModel& sys, int t)
{
    const int nt = checked_period(s, t);
    const int w_end = std::min(t - 1 + sys.params().sigma, nt - 1);
    std::vector<double> values(static_cast<std::size_t>(nt), 0.0);
    for (int tau = t - 1; tau <= w_end; ++tau) {
        values[static_cast<std::size_t>(tau)] = fluctuation_at(s, sys, static_cast<std::size_t>(tau));
    }
    return windowed_index(values, t, sys.params().sigma, nt, sys.params().fluct_form);
}

RiskProfile risk_profile(const Scenario& s, const SystemModel& sys, std::optional<int> horizon)
{
    sys.check_scenario_shape(s);
    validate_scenario(s);
    const int nt = static_cast<int>(s.n_periods());
    const int h = horizon.value_or(nt);
    if (h < 1 || h > nt) {
        throw std::out_of_range("horizon " + std::to_string(h) + " outside [1, " +
                                std::to_string(nt) + "]");
    }

    const RiskParams& p = sys.params();
    RiskProfile prof;
    const auto n = static_cast<std::size_t>(h);
    prof.ps_mw.resize(n);
    prof.pf_mw.resize(n);
    prof.ips.resize(n);
    prof.ipf.resize(n);

    for (std::size_t t0 = 0; t0 < n; ++t0) {
        prof.ps_mw[t0] = shortage_at(s, sys, t0);
        prof.pf_mw[t0] = fluctuation_at(s, sys, t0);
    }
    for (int t = 1; t <= h; ++t) {
        prof.ips[static_cast<std::size_t>(t - 1)] =
            windowed_index(prof.ps_mw, t, p.sigma, h, p.fluct_form);
        prof.ipf[static_cast<std::size_t>(t - 1)] =
            windowed_index(prof.pf_mw, t, p.sigma, h, p.fluct_form);
    }

    double ilt = 0.0;
    for (std::size_t t0 = 0; t0 < n; ++t0) {
        ilt += p.theta * prof.ips[t0] + (1.0 - p.theta) * prof.ipf[t0];
    }
    prof.ilt = ilt;
    return prof;
}

} // namespace extscen
