#include "extscen/scenariogen.hpp"

#include "extscen/hash.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace extscen::scenariogen {

using nlohmann::json;

namespace {

constexpr std::uint64_t kStreamInit = 0x11;
constexpr std::uint64_t kStreamAdvance = 0x22;
constexpr std::uint64_t kFitRg = 0x33;
constexpr std::uint64_t kFitLd = 0x44;

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body)
{
    const auto nw = static_cast<std::size_t>(std::max(workers, 1));
    if (nw <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    const std::size_t threads = std::min(nw, n);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

double clamp_to(double v, double upper)
{
    return std::min(std::max(v, 0.0), upper);
}

std::string member_label(std::uint64_t uid)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "cand_%06llu", static_cast<unsigned long long>(uid));
    return std::string(buf);
}

/// Local risk increment of one period's joint values against the previous
/// period's sums: theta-weighted squared shortage plus squared fluctuation.
double local_risk_increment(double sum_ld, double sum_rg, double sum_ld_prev, double sum_rg_prev,
                            const SystemModel& sys)
{
    const RiskParams& p = sys.params();
    const double ps =
        std::max(sum_ld - p.alpha_sg * sys.sg_capacity_mw() - sum_rg, 0.0);
    const double ld_delta = sum_ld - sum_ld_prev;
    const double rg_delta = sum_rg_prev - sum_rg;
    const double ru = std::max(ld_delta + rg_delta - sys.sg_ramp_up_mw(), 0.0);
    const double rd = std::max(-ld_delta - rg_delta - sys.sg_ramp_down_mw(), 0.0);
    const double pf = std::max(ru, rd);
    const double ps_term = ps > 0.0 ? ps * ps : 0.0;
    const double pf_term = pf > 0.0 ? pf * pf : 0.0;
    return p.theta * ps_term + (1.0 - p.theta) * pf_term;
}

double median_of(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Picks an index with probability proportional to exp(tilt * delta / s).
/// The shared uniform comes from the member's period stream.
std::size_t select_candidate(const std::vector<double>& deltas, double tilt, double u)
{
    const std::size_t m = deltas.size();
    std::vector<double> positives;
    positives.reserve(m);
    for (double d : deltas) {
        if (d > 0.0) {
            positives.push_back(d);
        }
    }
    const double scale = positives.empty() ? 1e-12 : std::max(median_of(positives), 1e-12);
    double max_delta = 0.0;
    for (double d : deltas) {
        max_delta = std::max(max_delta, d);
    }
    std::vector<double> weights(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        weights[i] = std::exp(tilt * (deltas[i] - max_delta) / scale);
        total += weights[i];
    }
    const double target = u * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += weights[i];
        if (target < acc) {
            return i;
        }
    }
    return m - 1;
}

json bank_models_to_json(const std::vector<gmm::GmmModel>& models)
{
    json arr = json::array();
    for (const auto& m : models) {
        arr.push_back(gmm::to_json(m));
    }
    return arr;
}

json bank_transitions_to_json(const std::vector<std::vector<gmm::BivariateGmmModel>>& rows)
{
    json arr = json::array();
    for (const auto& row : rows) {
        json inner = json::array();
        for (const auto& m : row) {
            inner.push_back(gmm::to_json(m));
        }
        arr.push_back(std::move(inner));
    }
    return arr;
}

std::uint64_t bank_cache_key(const std::vector<Scenario>& historical, const gmm::FitConfig& fit)
{
    Fnv1a64 h;
    h.update(hash_scenarios(historical));
    h.update(fit.k_max);
    h.update(fit.max_iters);
    h.update(fit.tol);
    h.update(fit.variance_floor);
    h.update(fit.n_init);
    h.update(fit.seed);
    return h.value();
}

} // namespace

void GenerationConfig::validate(const SystemModel& sys) const
{
    if (n_ext < 1) {
        throw std::invalid_argument("generation: n_ext must be >= 1");
    }
    if (screen_interval < 1) {
        throw std::invalid_argument("generation: screen_interval must be >= 1");
    }
    if (n_candidates < 1) {
        throw std::invalid_argument("generation: n_candidates must be >= 1");
    }
    if (!(tilt >= 0.0) || !std::isfinite(tilt)) {
        throw std::invalid_argument("generation: tilt must be finite and >= 0");
    }
    if (rg_upper_bounds.size() != sys.inventory().rg_units.size() ||
        ld_upper_bounds.size() != sys.inventory().ld_units.size()) {
        throw std::invalid_argument("generation: per-unit bounds must match the inventory");
    }
    for (double b : rg_upper_bounds) {
        if (!(b >= 0.0) || !std::isfinite(b)) {
            throw std::invalid_argument("generation: invalid renewable upper bound");
        }
    }
    for (double b : ld_upper_bounds) {
        if (!(b >= 0.0) || !std::isfinite(b)) {
            throw std::invalid_argument("generation: invalid load upper bound");
        }
    }
}

json TransitionModelBank::to_json() const
{
    return json{{"schema_version", 1},
                {"n_periods", n_periods},
                {"rg_units", rg_units},
                {"ld_units", ld_units},
                {"rg_initial", bank_models_to_json(rg_initial)},
                {"ld_initial", bank_models_to_json(ld_initial)},
                {"rg_transitions", bank_transitions_to_json(rg_transitions)},
                {"ld_transitions", bank_transitions_to_json(ld_transitions)}};
}

TransitionModelBank TransitionModelBank::from_json(const json& j)
{
    TransitionModelBank bank;
    bank.n_periods = j.at("n_periods").get<std::size_t>();
    bank.rg_units = j.at("rg_units").get<std::vector<std::string>>();
    bank.ld_units = j.at("ld_units").get<std::vector<std::string>>();
    for (const auto& m : j.at("rg_initial")) {
        bank.rg_initial.push_back(gmm::gmm_from_json(m));
    }
    for (const auto& m : j.at("ld_initial")) {
        bank.ld_initial.push_back(gmm::gmm_from_json(m));
    }
    for (const auto& row : j.at("rg_transitions")) {
        std::vector<gmm::BivariateGmmModel> models;
        for (const auto& m : row) {
            models.push_back(gmm::bivariate_gmm_from_json(m));
        }
        bank.rg_transitions.push_back(std::move(models));
    }
    for (const auto& row : j.at("ld_transitions")) {
        std::vector<gmm::BivariateGmmModel> models;
        for (const auto& m : row) {
            models.push_back(gmm::bivariate_gmm_from_json(m));
        }
        bank.ld_transitions.push_back(std::move(models));
    }
    return bank;
}

TransitionModelBank build_model_bank(const std::vector<Scenario>& historical,
                                     const gmm::FitConfig& fit)
{
    if (historical.size() < 2) {
        throw std::invalid_argument("build_model_bank: need at least 2 historical scenarios");
    }
    const std::size_t nt = historical.front().n_periods();
    const std::size_t n_rg = historical.front().n_rg();
    const std::size_t n_ld = historical.front().n_ld();
    for (const auto& h : historical) {
        if (h.n_periods() != nt || h.n_rg() != n_rg || h.n_ld() != n_ld) {
            throw std::invalid_argument("build_model_bank: historical scenario '" + h.label +
                                        "' has a different shape");
        }
        validate_scenario(h);
    }

    TransitionModelBank bank;
    bank.n_periods = nt;
    bank.rg_units.resize(n_rg);
    bank.ld_units.resize(n_ld);

    const std::size_t n_hist = historical.size();
    auto fit_unit = [&](const bool is_rg, std::size_t u) {
        const std::uint64_t role_tag = is_rg ? kFitRg : kFitLd;
        auto row_of = [&](const Scenario& h) -> const std::vector<double>& {
            return is_rg ? h.rg_mw[u] : h.ld_mw[u];
        };

        std::vector<double> first(n_hist);
        for (std::size_t h = 0; h < n_hist; ++h) {
            first[h] = row_of(historical[h])[0];
        }
        gmm::FitConfig cfg = fit;
        cfg.seed = derive_seed(fit.seed, role_tag, u, 1);
        gmm::GmmModel initial = fit_gmm(first, cfg).model;

        std::vector<gmm::BivariateGmmModel> transitions;
        transitions.reserve(nt - 1);
        std::vector<std::array<double, 2>> pairs(n_hist);
        for (std::size_t t = 1; t < nt; ++t) {
            for (std::size_t h = 0; h < n_hist; ++h) {
                const auto& row = row_of(historical[h]);
                pairs[h] = {row[t - 1], row[t]};
            }
            cfg.seed = derive_seed(fit.seed, role_tag, u, t + 1);
            transitions.push_back(fit_bivariate_gmm(pairs, cfg).model);
        }
        if (is_rg) {
            bank.rg_initial[u] = std::move(initial);
            bank.rg_transitions[u] = std::move(transitions);
        } else {
            bank.ld_initial[u] = std::move(initial);
            bank.ld_transitions[u] = std::move(transitions);
        }
    };

    bank.rg_initial.resize(n_rg);
    bank.ld_initial.resize(n_ld);
    bank.rg_transitions.resize(n_rg);
    bank.ld_transitions.resize(n_ld);
    for (std::size_t u = 0; u < n_rg; ++u) {
        bank.rg_units[u] = "rg" + std::to_string(u);
        fit_unit(true, u);
    }
    for (std::size_t u = 0; u < n_ld; ++u) {
        bank.ld_units[u] = "ld" + std::to_string(u);
        fit_unit(false, u);
    }
    return bank;
}

CachedBank build_model_bank_cached(const std::vector<Scenario>& historical,
                                   const gmm::FitConfig& fit,
                                   const std::filesystem::path& cache_dir)
{
    CachedBank result;
    Fnv1a64 key;
    key.update(bank_cache_key(historical, fit));
    result.hash_hex = key.hex();
    std::filesystem::create_directories(cache_dir);
    result.cache_file = cache_dir / ("bank_" + result.hash_hex + ".json");

    if (std::filesystem::exists(result.cache_file)) {
        try {
            std::ifstream in(result.cache_file);
            json j;
            in >> j;
            result.bank = TransitionModelBank::from_json(j);
            result.cache_hit = true;
            return result;
        } catch (const std::exception&) {
            // unreadable or stale cache entry; fall through and refit
        }
    }

    result.bank = build_model_bank(historical, fit);
    std::ofstream out(result.cache_file);
    if (!out) {
        throw std::runtime_error("cannot write bank cache: " + result.cache_file.string());
    }
    out << result.bank.to_json().dump() << '\n';
    return result;
}

Ensemble init_ensemble(const TransitionModelBank& bank, const GenerationConfig& config)
{
    if (bank.n_periods == 0) {
        throw std::invalid_argument("init_ensemble: empty model bank");
    }
    const auto nt = static_cast<double>(bank.n_periods);
    const auto cohorts =
        static_cast<std::size_t>(std::ceil(nt / static_cast<double>(config.screen_interval))) + 1;
    const std::size_t n_sam = cohorts * static_cast<std::size_t>(config.n_ext);

    const std::size_t n_rg = bank.rg_initial.size();
    const std::size_t n_ld = bank.ld_initial.size();
    if (config.rg_upper_bounds.size() != n_rg || config.ld_upper_bounds.size() != n_ld) {
        throw std::invalid_argument("init_ensemble: bounds do not match the model bank");
    }

    Ensemble ensemble;
    ensemble.t_current = 1;
    ensemble.members.resize(n_sam);
    for (std::size_t m = 0; m < n_sam; ++m) {
        Member& member = ensemble.members[m];
        member.uid = m;
        member.scenario.label = member_label(member.uid);
        member.scenario.rg_mw.assign(n_rg, std::vector<double>(bank.n_periods, 0.0));
        member.scenario.ld_mw.assign(n_ld, std::vector<double>(bank.n_periods, 0.0));

        Rng rng(derive_seed(config.seed, kStreamInit, member.uid, 1));
        for (std::size_t u = 0; u < n_rg; ++u) {
            member.scenario.rg_mw[u][0] =
                clamp_to(gmm::sample(bank.rg_initial[u], rng), config.rg_upper_bounds[u]);
        }
        for (std::size_t u = 0; u < n_ld; ++u) {
            member.scenario.ld_mw[u][0] =
                clamp_to(gmm::sample(bank.ld_initial[u], rng), config.ld_upper_bounds[u]);
        }
    }
    return ensemble;
}

void advance_period(Ensemble& ensemble, const TransitionModelBank& bank, const SystemModel& sys,
                    const GenerationConfig& config, int workers)
{
    const int t_next = ensemble.t_current + 1;
    if (ensemble.t_current < 1 || static_cast<std::size_t>(t_next) > bank.n_periods) {
        throw std::logic_error("advance_period: past the horizon");
    }
    const std::size_t n_rg = bank.rg_initial.size();
    const std::size_t n_ld = bank.ld_initial.size();
    const auto m_count = static_cast<std::size_t>(config.n_candidates);
    const auto prev_idx = static_cast<std::size_t>(ensemble.t_current - 1);
    const auto next_idx = static_cast<std::size_t>(t_next - 1);
    const auto trans_idx = static_cast<std::size_t>(t_next - 2);

    parallel_for(ensemble.members.size(), workers, [&](std::size_t mi) {
        Member& member = ensemble.members[mi];
        Rng rng(derive_seed(config.seed, kStreamAdvance, member.uid,
                            static_cast<std::uint64_t>(t_next)));

        // Conditional slices at the member's current values, and the clamped
        // conditional means used as stand-ins when scoring other units.
        std::vector<gmm::GmmModel> rg_slices(n_rg);
        std::vector<gmm::GmmModel> ld_slices(n_ld);
        double sum_rg_mean = 0.0;
        double sum_ld_mean = 0.0;
        std::vector<double> rg_means(n_rg);
        std::vector<double> ld_means(n_ld);
        for (std::size_t u = 0; u < n_rg; ++u) {
            rg_slices[u] =
                gmm::conditional_slice(bank.rg_transitions[u][trans_idx], member.scenario.rg_mw[u][prev_idx]);
            double mean = 0.0;
            for (int j = 0; j < rg_slices[u].k(); ++j) {
                mean += rg_slices[u].weights[static_cast<std::size_t>(j)] *
                        rg_slices[u].means[static_cast<std::size_t>(j)];
            }
            rg_means[u] = clamp_to(mean, config.rg_upper_bounds[u]);
            sum_rg_mean += rg_means[u];
        }
        for (std::size_t u = 0; u < n_ld; ++u) {
            ld_slices[u] =
                gmm::conditional_slice(bank.ld_transitions[u][trans_idx], member.scenario.ld_mw[u][prev_idx]);
            double mean = 0.0;
            for (int j = 0; j < ld_slices[u].k(); ++j) {
                mean += ld_slices[u].weights[static_cast<std::size_t>(j)] *
                        ld_slices[u].means[static_cast<std::size_t>(j)];
            }
            ld_means[u] = clamp_to(mean, config.ld_upper_bounds[u]);
            sum_ld_mean += ld_means[u];
        }

        double sum_rg_prev = 0.0;
        double sum_ld_prev = 0.0;
        for (std::size_t u = 0; u < n_rg; ++u) {
            sum_rg_prev += member.scenario.rg_mw[u][prev_idx];
        }
        for (std::size_t u = 0; u < n_ld; ++u) {
            sum_ld_prev += member.scenario.ld_mw[u][prev_idx];
        }

        std::vector<double> candidates(m_count);
        std::vector<double> deltas(m_count);
        std::vector<double> rg_picks(n_rg);
        std::vector<double> ld_picks(n_ld);
        for (std::size_t u = 0; u < n_rg; ++u) {
            for (std::size_t c = 0; c < m_count; ++c) {
                candidates[c] = clamp_to(gmm::sample(rg_slices[u], rng), config.rg_upper_bounds[u]);
                const double sum_rg = sum_rg_mean - rg_means[u] + candidates[c];
                deltas[c] = local_risk_increment(sum_ld_mean, sum_rg, sum_ld_prev, sum_rg_prev, sys);
            }
            rg_picks[u] = candidates[select_candidate(deltas, config.tilt, rng.uniform01())];
        }
        for (std::size_t u = 0; u < n_ld; ++u) {
            for (std::size_t c = 0; c < m_count; ++c) {
                candidates[c] = clamp_to(gmm::sample(ld_slices[u], rng), config.ld_upper_bounds[u]);
                const double sum_ld = sum_ld_mean - ld_means[u] + candidates[c];
                deltas[c] = local_risk_increment(sum_ld, sum_rg_mean, sum_ld_prev, sum_rg_prev, sys);
            }
            ld_picks[u] = candidates[select_candidate(deltas, config.tilt, rng.uniform01())];
        }

        for (std::size_t u = 0; u < n_rg; ++u) {
            member.scenario.rg_mw[u][next_idx] = rg_picks[u];
        }
        for (std::size_t u = 0; u < n_ld; ++u) {
            member.scenario.ld_mw[u][next_idx] = ld_picks[u];
        }
    });
    ensemble.t_current = t_next;
}

ScreeningRecord screen(Ensemble& ensemble, const SystemModel& sys, const GenerationConfig& config,
                       int workers)
{
    if (ensemble.t_current < config.screen_interval ||
        ensemble.t_current % config.screen_interval != 0) {
        throw std::logic_error("screen: called off the screening schedule (t = " +
                               std::to_string(ensemble.t_current) + ")");
    }
    const auto n_ext = static_cast<std::size_t>(config.n_ext);
    if (ensemble.n_sam() < 2 * n_ext) {
        throw std::logic_error("screen: would leave fewer than n_ext members");
    }

    const std::size_t n = ensemble.members.size();
    parallel_for(n, workers, [&](std::size_t i) {
        Member& member = ensemble.members[i];
        member.last_prefix_ilt =
            risk_profile(member.scenario, sys, ensemble.t_current).ilt;
    });

    // Removal order: lowest prefix ILT first; within ties, higher uid is
    // removed first so the lower uid survives.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Member& ma = ensemble.members[a];
        const Member& mb = ensemble.members[b];
        if (ma.last_prefix_ilt != mb.last_prefix_ilt) {
            return ma.last_prefix_ilt < mb.last_prefix_ilt;
        }
        return ma.uid > mb.uid;
    });

    ScreeningRecord rec;
    rec.t = ensemble.t_current;
    rec.before = n;
    rec.removed = n_ext;

    std::vector<bool> remove(n, false);
    double cut = 0.0;
    for (std::size_t i = 0; i < n_ext; ++i) {
        remove[order[i]] = true;
        cut = std::max(cut, ensemble.members[order[i]].last_prefix_ilt);
    }
    rec.cut_ilt = cut;

    std::vector<Member> kept;
    kept.reserve(n - n_ext);
    double min_survivor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (!remove[i]) {
            min_survivor = std::min(min_survivor, ensemble.members[i].last_prefix_ilt);
            kept.push_back(std::move(ensemble.members[i]));
        }
    }
    ensemble.members = std::move(kept);
    rec.after = ensemble.members.size();
    rec.min_survivor_ilt = min_survivor;
    return rec;
}

json RunManifest::to_json() const
{
    json screenings_json = json::array();
    for (const auto& s : screenings) {
        screenings_json.push_back({{"t", s.t},
                                   {"before", s.before},
                                   {"removed", s.removed},
                                   {"after", s.after},
                                   {"cut_ilt", s.cut_ilt},
                                   {"min_survivor_ilt", s.min_survivor_ilt}});
    }
    return json{{"schema_version", 1},
                {"seed", seed},
                {"initial_members", initial_members},
                {"screenings", screenings_json},
                {"final_candidates", final_candidates},
                {"selected", selected},
                {"bank", json{{"hash", bank_hash}, {"cache_hit", bank_cache_hit}}},
                {"config", config_echo},
                {"timing", json{{"generate_seconds", generate_seconds}}}};
}

GenerationResult generate(const std::vector<Scenario>& historical, const SystemModel& sys,
                          const GenerationConfig& config, const GenerateOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    config.validate(sys);

    GenerationResult result;
    TransitionModelBank bank;
    if (options.cache_dir) {
        CachedBank cached = build_model_bank_cached(historical, config.fit, *options.cache_dir);
        bank = std::move(cached.bank);
        result.manifest.bank_hash = cached.hash_hex;
        result.manifest.bank_cache_hit = cached.cache_hit;
    } else {
        bank = build_model_bank(historical, config.fit);
        Fnv1a64 key;
        key.update(bank_cache_key(historical, config.fit));
        result.manifest.bank_hash = key.hex();
    }
    if (bank.rg_initial.size() != sys.inventory().rg_units.size() ||
        bank.ld_initial.size() != sys.inventory().ld_units.size()) {
        throw std::invalid_argument("generate: model bank does not match the system inventory");
    }

    Ensemble ensemble = init_ensemble(bank, config);
    result.manifest.seed = config.seed;
    result.manifest.initial_members = ensemble.n_sam();

    const auto nt = static_cast<int>(bank.n_periods);
    while (ensemble.t_current < nt) {
        advance_period(ensemble, bank, sys, config, options.workers);
        if (ensemble.t_current < nt && ensemble.t_current % config.screen_interval == 0) {
            result.manifest.screenings.push_back(screen(ensemble, sys, config, options.workers));
        }
    }

    result.manifest.final_candidates = ensemble.n_sam();

    std::vector<RiskProfile> profiles(ensemble.n_sam());
    parallel_for(ensemble.n_sam(), options.workers, [&](std::size_t i) {
        profiles[i] = risk_profile(ensemble.members[i].scenario, sys);
    });

    std::vector<std::size_t> order(ensemble.n_sam());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (profiles[a].ilt != profiles[b].ilt) {
            return profiles[a].ilt > profiles[b].ilt;
        }
        return ensemble.members[a].uid < ensemble.members[b].uid;
    });

    const auto n_keep = std::min(static_cast<std::size_t>(config.n_ext), ensemble.n_sam());
    result.selected.reserve(n_keep);
    for (std::size_t i = 0; i < n_keep; ++i) {
        RankedScenario rs;
        rs.scenario = std::move(ensemble.members[order[i]].scenario);
        rs.profile = std::move(profiles[order[i]]);
        result.selected.push_back(std::move(rs));
    }
    result.manifest.selected = result.selected.size();

    result.manifest.config_echo =
        json{{"n_ext", config.n_ext},
             {"screen_interval", config.screen_interval},
             {"n_candidates", config.n_candidates},
             {"tilt", config.tilt},
             {"seed", config.seed},
             {"fit",
              json{{"k_max", config.fit.k_max},
                   {"max_iters", config.fit.max_iters},
                   {"tol", config.fit.tol},
                   {"variance_floor", config.fit.variance_floor},
                   {"n_init", config.fit.n_init},
                   {"seed", config.fit.seed}}},
             {"risk",
              json{{"alpha_sg", sys.params().alpha_sg},
                   {"sigma", sys.params().sigma},
                   {"theta", sys.params().theta},
                   {"fluct_form",
                    sys.params().fluct_form == FluctForm::literal ? "literal" : "tau_squared"}}},
             {"rg_upper_bounds", config.rg_upper_bounds},
             {"ld_upper_bounds", config.ld_upper_bounds}};

    result.manifest.generate_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace extscen::scenariogen
