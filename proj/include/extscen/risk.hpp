#pragma once

#include "extscen/power.hpp"

#include <optional>
#include <vector>

namespace extscen {

/// Per-period shortage/fluctuation values and indices for one scenario,
/// plus the horizon-summed scalar. All quantities are strategy independent:
/// they depend only on the scenario, the system aggregates, and RiskParams.
struct RiskProfile {
    std::vector<double> ps_mw; // power shortage per period (MW)
    std::vector<double> pf_mw; // power fluctuation per period (MW)
    std::vector<double> ips;   // windowed shortage index (MW^2)
    std::vector<double> ipf;   // windowed fluctuation index (MW^2)
    double ilt = 0.0;          // theta-weighted horizon sum (MW^2)

    [[nodiscard]] double sum_ips() const;
    [[nodiscard]] double sum_ipf() const;
};

/// Shortage at period t (1-based): positive part of total load minus derated
/// synchronous capacity minus total renewable output.
double power_shortage(const Scenario& s, const SystemModel& sys, int t);

/// Fluctuation at period t (1-based): the larger of the ramp-up and ramp-down
/// shortfalls between t-1 and t beyond the aggregate synchronous ramps.
/// Period 1 has no predecessor and returns 0.
double power_fluctuation(const Scenario& s, const SystemModel& sys, int t);

/// Windowed shortage index at t over the window [t, min(t+sigma, N_T)].
/// The `literal` form multiplies the count of positive-shortage periods in
/// the window by the squared shortage at t; `tau_squared` sums the squared
/// shortages over the window instead.
double shortage_index(const Scenario& s, const SystemModel& sys, int t);

/// Same window structure as shortage_index, applied to the fluctuation.
double fluctuation_index(const Scenario& s, const SystemModel& sys, int t);

/// Computes the full profile over periods 1..horizon (default: all periods).
/// During partial evaluation the index windows are truncated at the horizon,
/// never looking past it. ilt accumulates theta*ips[t] + (1-theta)*ipf[t]
/// in ascending t, so the theta = 1 and theta = 0 endpoints are bit-equal to
/// sum_ips() / sum_ipf().
RiskProfile risk_profile(const Scenario& s, const SystemModel& sys,
                         std::optional<int> horizon = std::nullopt);

} // namespace extscen
