#include "extscen/power.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace extscen {

namespace {

void check_unique(const std::vector<std::string>& ids, const char* kind)
{
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second) {
            throw std::invalid_argument(std::string("duplicate ") + kind + " unit id '" + id + "'");
        }
    }
}

} // namespace

void SystemModel::check_scenario_shape(const Scenario& s) const
{
    if (s.rg_mw.size() != inventory_.rg_units.size()) {
        throw std::invalid_argument("scenario '" + s.label + "': expected " +
                                    std::to_string(inventory_.rg_units.size()) +
                                    " renewable rows, got " + std::to_string(s.rg_mw.size()));
    }
    if (s.ld_mw.size() != inventory_.ld_units.size()) {
        throw std::invalid_argument("scenario '" + s.label + "': expected " +
                                    std::to_string(inventory_.ld_units.size()) +
                                    " load rows, got " + std::to_string(s.ld_mw.size()));
    }
    const std::size_t nt = s.n_periods();
    if (nt == 0) {
        throw std::invalid_argument("scenario '" + s.label + "': no periods");
    }
    for (const auto& row : s.rg_mw) {
        if (row.size() != nt) {
            throw std::invalid_argument("scenario '" + s.label + "': ragged renewable matrix");
        }
    }
    for (const auto& row : s.ld_mw) {
        if (row.size() != nt) {
            throw std::invalid_argument("scenario '" + s.label + "': ragged load matrix");
        }
    }
}

SystemModel validate_system(UnitInventory inventory, RiskParams params)
{
    if (inventory.rg_units.empty()) {
        throw std::invalid_argument("no renewable units");
    }
    if (inventory.ld_units.empty()) {
        throw std::invalid_argument("no load units");
    }
    check_unique(inventory.rg_units, "renewable");
    check_unique(inventory.ld_units, "load");

    std::unordered_set<std::string> sg_seen;
    for (const auto& g : inventory.sg_units) {
        if (!sg_seen.insert(g.id).second) {
            throw std::invalid_argument("duplicate synchronous unit id '" + g.id + "'");
        }
        if (!(g.capacity_mw >= 0.0) || !std::isfinite(g.capacity_mw)) {
            throw std::invalid_argument("sg unit '" + g.id + "': capacity_mw must be finite and >= 0");
        }
        if (!(g.ramp_up_mw >= 0.0) || !std::isfinite(g.ramp_up_mw)) {
            throw std::invalid_argument("sg unit '" + g.id + "': ramp_up_mw must be finite and >= 0");
        }
        if (!(g.ramp_down_mw >= 0.0) || !std::isfinite(g.ramp_down_mw)) {
            throw std::invalid_argument("sg unit '" + g.id + "': ramp_down_mw must be finite and >= 0");
        }
        if (g.ramp_up_mw > g.capacity_mw) {
            throw std::invalid_argument("sg unit '" + g.id + "': ramp_up_mw " +
                                        std::to_string(g.ramp_up_mw) + " exceeds capacity_mw " +
                                        std::to_string(g.capacity_mw));
        }
        if (g.ramp_down_mw > g.capacity_mw) {
            throw std::invalid_argument("sg unit '" + g.id + "': ramp_down_mw " +
                                        std::to_string(g.ramp_down_mw) + " exceeds capacity_mw " +
                                        std::to_string(g.capacity_mw));
        }
    }

    if (!(params.alpha_sg >= 0.0 && params.alpha_sg <= 1.0)) {
        throw std::invalid_argument("alpha_sg must be in [0,1]");
    }
    if (!(params.theta >= 0.0 && params.theta <= 1.0)) {
        throw std::invalid_argument("theta must be in [0,1]");
    }
    if (params.sigma < 0) {
        throw std::invalid_argument("sigma must be >= 0");
    }

    SystemModel m;
    m.inventory_ = std::move(inventory);
    m.params_ = params;
    for (const auto& g : m.inventory_.sg_units) {
        m.sg_capacity_mw_ += g.capacity_mw;
        m.sg_ramp_up_mw_ += g.ramp_up_mw;
        m.sg_ramp_down_mw_ += g.ramp_down_mw;
    }
    return m;
}

void validate_scenario(const Scenario& s)
{
    const std::size_t nt = s.n_periods();
    if (nt == 0) {
        throw std::invalid_argument("scenario '" + s.label + "': no periods");
    }
    auto check_matrix = [&](const std::vector<std::vector<double>>& m, const char* which) {
        for (std::size_t u = 0; u < m.size(); ++u) {
            if (m[u].size() != nt) {
                throw std::invalid_argument("scenario '" + s.label + "': " + which + " row " +
                                            std::to_string(u) + " has " + std::to_string(m[u].size()) +
                                            " periods, expected " + std::to_string(nt));
            }
            for (std::size_t t = 0; t < nt; ++t) {
                const double v = m[u][t];
                if (!std::isfinite(v)) {
                    throw std::invalid_argument("scenario '" + s.label + "': non-finite " + which +
                                                " value at unit " + std::to_string(u) + ", period " +
                                                std::to_string(t + 1));
                }
                if (v < 0.0) {
                    throw std::invalid_argument("scenario '" + s.label + "': negative " + which +
                                                " value at unit " + std::to_string(u) + ", period " +
                                                std::to_string(t + 1));
                }
            }
        }
    };
    check_matrix(s.rg_mw, "renewable");
    check_matrix(s.ld_mw, "load");
}

} // namespace extscen
