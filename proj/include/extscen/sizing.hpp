#pragma once

#include "extscen/power.hpp"

#include <vector>

namespace extscen::sizing {

struct StorageSpec {
    double power_mw = 0.0;
    double energy_mwh = 0.0;
    double efficiency = 1.0; // round-trip, applied on the charge side
};

/// Signed supply-demand balance per period: total load minus derated
/// synchronous capacity minus renewable output. Positive values are
/// deficits the storage must cover, negative values are surplus available
/// for charging. The positive part equals power_shortage.
std::vector<double> residual_profile(const Scenario& s, const SystemModel& sys);

/// True when a store of the given power and energy rating, starting full,
/// rides through the residual profile with zero unserved deficit under the
/// greedy policy: discharge deficits up to power and state of charge,
/// charge from surplus up to power and remaining headroom, with the
/// round-trip loss taken while charging.
bool rides_through(const std::vector<double>& residual_mw, double power_mw, double energy_mwh,
                   double efficiency);

/// Smallest storage that rides through every scenario: per scenario the
/// power rating is the worst deficit and the energy rating is found by
/// bisection to 0.1 MWh; the result is the component-wise maximum across
/// scenarios. Starting full bounds the energy search by the summed deficit,
/// so the search is always feasible.
StorageSpec size_storage(const std::vector<Scenario>& scenarios, const SystemModel& sys,
                         double efficiency = 0.8);

} // namespace extscen::sizing
