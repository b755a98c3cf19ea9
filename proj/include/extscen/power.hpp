#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace extscen {

/// Dispatchable generator with symmetric power/ramp limits in MW.
struct SynchronousGenerator {
    std::string id;
    double capacity_mw = 0.0;
    double ramp_up_mw = 0.0;   // per period
    double ramp_down_mw = 0.0; // per period
};

/// Unit lists for one study system. Renewable and load units are identified
/// by name only; their per-period values live in Scenario.
struct UnitInventory {
    std::vector<std::string> rg_units;
    std::vector<std::string> ld_units;
    std::vector<SynchronousGenerator> sg_units;
};

/// Squared-term interpretation used by the windowed indices: `literal`
/// squares the value at the window anchor, `tau_squared` squares each
/// value inside the window.
enum class FluctForm {
    literal,
    tau_squared,
};

struct RiskParams {
    double alpha_sg = 0.95; // available fraction of synchronous capacity, [0,1]
    int sigma = 0;          // lookahead bandwidth in periods, >= 0
    double theta = 0.5;     // shortage/fluctuation weight, [0,1]
    FluctForm fluct_form = FluctForm::literal;
};

/// One joint renewable-generation / load trajectory. Matrices are indexed
/// [unit][period] with 0-based storage; the public period index used by the
/// risk operations is 1-based.
struct Scenario {
    std::vector<std::vector<double>> rg_mw; // [rg unit][period]
    std::vector<std::vector<double>> ld_mw; // [ld unit][period]
    std::string label;

    [[nodiscard]] std::size_t n_periods() const
    {
        if (!rg_mw.empty()) {
            return rg_mw.front().size();
        }
        return ld_mw.empty() ? 0 : ld_mw.front().size();
    }
    [[nodiscard]] std::size_t n_rg() const { return rg_mw.size(); }
    [[nodiscard]] std::size_t n_ld() const { return ld_mw.size(); }
};

/// Validated system handle. Construction via validate_system() checks every
/// inventory and parameter invariant once; afterwards the aggregates are
/// served from cached values. Immutable, safe to share across threads.
class SystemModel {
public:
    [[nodiscard]] const UnitInventory& inventory() const { return inventory_; }
    [[nodiscard]] const RiskParams& params() const { return params_; }

    [[nodiscard]] double sg_capacity_mw() const { return sg_capacity_mw_; }
    [[nodiscard]] double sg_ramp_up_mw() const { return sg_ramp_up_mw_; }
    [[nodiscard]] double sg_ramp_down_mw() const { return sg_ramp_down_mw_; }

    /// Shape check against the inventory (unit counts, equal row lengths,
    /// at least one period). Throws std::invalid_argument on mismatch.
    void check_scenario_shape(const Scenario& s) const;

private:
    friend SystemModel validate_system(UnitInventory inventory, RiskParams params);

    UnitInventory inventory_;
    RiskParams params_;
    double sg_capacity_mw_ = 0.0;
    double sg_ramp_up_mw_ = 0.0;
    double sg_ramp_down_mw_ = 0.0;
};

/// Validates all inventory and parameter invariants and returns the handle.
/// Throws std::invalid_argument naming the first violated invariant and the
/// offending unit id.
SystemModel validate_system(UnitInventory inventory, RiskParams params);

/// Full scenario validation: consistent row lengths across both matrices,
/// at least one period, every entry finite and nonnegative. Throws
/// std::invalid_argument with the offending location.
void validate_scenario(const Scenario& s);

} // namespace extscen
