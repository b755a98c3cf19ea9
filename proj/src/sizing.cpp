#include "extscen/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extscen::sizing {

std::vector<double> residual_profile(const Scenario& s, const SystemModel& sys)
{
    sys.check_scenario_shape(s);
    const std::size_t nt = s.n_periods();
    std::vector<double> residual(nt, 0.0);
    const double derated = sys.params().alpha_sg * sys.sg_capacity_mw();
    for (std::size_t t = 0; t < nt; ++t) {
        double balance = -derated;
        for (const auto& row : s.ld_mw) {
            balance += row[t];
        }
        for (const auto& row : s.rg_mw) {
            balance -= row[t];
        }
        residual[t] = balance;
    }
    return residual;
}

bool rides_through(const std::vector<double>& residual_mw, double power_mw, double energy_mwh,
                   double efficiency)
{
    double soc = energy_mwh;
    for (double r : residual_mw) {
        if (r > 0.0) {
            const double discharge = std::min({r, power_mw, soc});
            soc -= discharge;
            if (r - discharge > 1e-9) {
                return false;
            }
        } else if (r < 0.0) {
            const double headroom_in = (energy_mwh - soc) / efficiency;
            const double charge = std::min({-r, power_mw, headroom_in});
            soc += efficiency * charge;
        }
    }
    return true;
}

StorageSpec size_storage(const std::vector<Scenario>& scenarios, const SystemModel& sys,
                         double efficiency)
{
    if (scenarios.empty()) {
        throw std::invalid_argument("size_storage: need at least one scenario");
    }
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("size_storage: efficiency must be in (0, 1]");
    }

    StorageSpec spec;
    spec.efficiency = efficiency;
    for (const auto& s : scenarios) {
        const auto residual = residual_profile(s, sys);
        double power = 0.0;
        double total_deficit = 0.0;
        for (double r : residual) {
            if (r > 0.0) {
                power = std::max(power, r);
                total_deficit += r;
            }
        }
        if (power == 0.0) {
            continue; // surplus everywhere, nothing to cover
        }

        // Starting full, energy = total deficit always rides through, so
        // bisection on [0, total] converges to the minimum.
        double lo = 0.0;
        double hi = total_deficit;
        while (hi - lo > 0.1) {
            const double mid = 0.5 * (lo + hi);
            if (rides_through(residual, power, mid, efficiency)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        spec.power_mw = std::max(spec.power_mw, power);
        spec.energy_mwh = std::max(spec.energy_mwh, hi);
    }
    return spec;
}

} // namespace extscen::sizing
