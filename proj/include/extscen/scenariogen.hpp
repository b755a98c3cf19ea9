#pragma once

#include "extscen/gmm.hpp"
#include "extscen/power.hpp"
#include "extscen/risk.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace extscen::scenariogen {

struct GenerationConfig {
    int n_ext = 100;          // scenarios to keep
    int screen_interval = 1;  // periods between risk screenings
    int n_candidates = 8;     // proposals per transition
    double tilt = 1.0;        // importance-tilt strength, >= 0
    std::uint64_t seed = 1;   // master seed; all streams derive from it
    gmm::FitConfig fit;

    // Physical sampling bounds per unit, [0, max]; sizes must match the
    // system inventory. Typically the installed capacities.
    std::vector<double> rg_upper_bounds;
    std::vector<double> ld_upper_bounds;

    void validate(const SystemModel& sys) const;
};

/// Per-unit marginal models for period 1 plus per-unit transition models
/// for every later period, fit on the historical (t-1, t) pairs.
struct TransitionModelBank {
    std::size_t n_periods = 0;
    std::vector<std::string> rg_units;
    std::vector<std::string> ld_units;
    std::vector<gmm::GmmModel> rg_initial; // [unit]
    std::vector<gmm::GmmModel> ld_initial;
    std::vector<std::vector<gmm::BivariateGmmModel>> rg_transitions; // [unit][t-2], t = 2..N_T
    std::vector<std::vector<gmm::BivariateGmmModel>> ld_transitions;

    [[nodiscard]] nlohmann::json to_json() const;
    static TransitionModelBank from_json(const nlohmann::json& j);
};

/// Fits the full bank from >= 2 historical scenarios with identical shape.
/// For period t the training pairs are the historical (value at t-1,
/// value at t) across scenarios.
TransitionModelBank build_model_bank(const std::vector<Scenario>& historical,
                                     const gmm::FitConfig& fit);

struct CachedBank {
    TransitionModelBank bank;
    std::string hash_hex; // content hash of inputs and fit config
    bool cache_hit = false;
    std::filesystem::path cache_file;
};

/// Disk-cached variant: the bank is stored under a content hash of the
/// historical data and fit config, and reread bit-exactly on a hit.
CachedBank build_model_bank_cached(const std::vector<Scenario>& historical,
                                   const gmm::FitConfig& fit,
                                   const std::filesystem::path& cache_dir);

struct Member {
    std::uint64_t uid = 0; // creation index; stable across screenings
    Scenario scenario;     // periods 1..t_current filled
    double last_prefix_ilt = 0.0;
};

struct Ensemble {
    std::vector<Member> members;
    int t_current = 0;

    [[nodiscard]] std::size_t n_sam() const { return members.size(); }
};

/// Creates ceil(N_T / screen_interval) + 1 cohorts of n_ext members and
/// fills period 1 from the per-unit marginal models, clamped to the unit
/// bounds. Deterministic in the seed.
Ensemble init_ensemble(const TransitionModelBank& bank, const GenerationConfig& config);

/// Advances every member from t_current to t_current + 1: per unit, slice
/// the transition model at the member's current value, draw n_candidates
/// proposals, clamp, and pick one with self-normalized weights
/// exp(tilt * delta / s), where delta is the local risk increment of the
/// candidate (other units held at their clamped conditional means) and s
/// is the median positive delta. tilt = 0 or a single candidate reduces to
/// plain conditional sampling. Draws derive from (seed, member uid, period),
/// so results are independent of member order and worker count.
void advance_period(Ensemble& ensemble, const TransitionModelBank& bank, const SystemModel& sys,
                    const GenerationConfig& config, int workers = 1);

struct ScreeningRecord {
    int t = 0;
    std::size_t before = 0;
    std::size_t removed = 0;
    std::size_t after = 0;
    double cut_ilt = 0.0;          // highest prefix ILT among the removed
    double min_survivor_ilt = 0.0; // lowest prefix ILT among the survivors
};

/// Removes exactly n_ext members with the lowest prefix ILT over periods
/// 1..t_current (index windows truncated at t_current). Ties at the cut are
/// broken by member uid: lower uid is kept. Must be called on schedule
/// (t_current a multiple of screen_interval, below the horizon) and must
/// leave at least n_ext members.
ScreeningRecord screen(Ensemble& ensemble, const SystemModel& sys,
                       const GenerationConfig& config, int workers = 1);

struct RankedScenario {
    Scenario scenario;
    RiskProfile profile;
};

struct RunManifest {
    std::uint64_t seed = 0;
    std::size_t initial_members = 0;
    std::vector<ScreeningRecord> screenings;
    std::size_t final_candidates = 0;
    std::size_t selected = 0;
    std::string bank_hash;
    bool bank_cache_hit = false;
    double generate_seconds = 0.0;
    nlohmann::json config_echo;

    /// Full manifest including the timing subtree. Timing varies run to
    /// run; everything else is deterministic for fixed inputs and seed.
    [[nodiscard]] nlohmann::json to_json() const;
};

struct GenerationResult {
    std::vector<RankedScenario> selected; // ILT descending, ties by uid
    RunManifest manifest;
};

struct GenerateOptions {
    std::optional<std::filesystem::path> cache_dir;
    int workers = 1;
};

/// Runs the full pipeline: model bank (cached if requested), initial
/// sampling, per-period advancement with screening at every multiple of
/// screen_interval strictly below the horizon, then final ranking of the
/// remaining members by full-horizon ILT. Returns the top n_ext.
GenerationResult generate(const std::vector<Scenario>& historical, const SystemModel& sys,
                          const GenerationConfig& config, const GenerateOptions& options = {});

} // namespace extscen::scenariogen
