#include <doctest.h>

#include "extscen/risk.hpp"
#include "extscen/sizing.hpp"

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace extscen;
using namespace extscen::sizing;

namespace {

/// Independent step-by-step store simulation used as the oracle; accounts
/// energy the same way (losses while charging) but is written separately
/// from the library's greedy policy.
double oracle_unserved(const std::vector<double>& residual, double power, double energy,
                       double eff)
{
    double stored = energy;
    double unserved = 0.0;
    for (double r : residual) {
        if (r > 0.0) {
            double d = r;
            if (d > power) {
                d = power;
            }
            if (d > stored) {
                d = stored;
            }
            stored -= d;
            unserved += r - d;
        } else {
            double intake = -r;
            if (intake > power) {
                intake = power;
            }
            if (stored + eff * intake > energy) {
                intake = (energy - stored) / eff;
            }
            stored += eff * intake;
        }
    }
    return unserved;
}

} // namespace

TEST_CASE("residual_profile agrees with the shortage definition")
{
    const auto sys = support::small_system(RiskParams{0.95, 0, 0.5, FluctForm::literal});
    const auto s = support::single_unit_scenario({20.0, 50.0, 10.0}, {264.0, 100.0, 150.0});
    const auto r = residual_profile(s, sys);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(54.0).epsilon(1e-12));
    CHECK(r[1] <= 0.0);
    for (int t = 1; t <= 3; ++t) {
        CHECK(std::max(r[static_cast<std::size_t>(t - 1)], 0.0) ==
              doctest::Approx(power_shortage(s, sys, t)).epsilon(1e-12));
    }
}

TEST_CASE("residual_profile matches a recomputation after scaling loads")
{
    extscen::Rng rng(3);
    const auto sys = support::small_system();
    auto s = support::random_scenario(rng, 1, 1, 24);
    const auto base = residual_profile(s, sys);
    auto scaled = s;
    for (auto& v : scaled.ld_mw[0]) {
        v *= 2.0;
    }
    const auto after = residual_profile(scaled, sys);
    for (std::size_t t = 0; t < 24; ++t) {
        CHECK(after[t] == doctest::Approx(base[t] + s.ld_mw[0][t]).epsilon(1e-9));
    }
}

TEST_CASE("size_storage: all-surplus scenarios need nothing")
{
    const auto sys = support::small_system();
    const auto s = support::single_unit_scenario(std::vector<double>(10, 100.0),
                                                 std::vector<double>(10, 50.0));
    const auto spec = size_storage({s}, sys, 1.0);
    CHECK(spec.power_mw == 0.0);
    CHECK(spec.energy_mwh == 0.0);
}

TEST_CASE("size_storage: single rectangular deficit pulse")
{
    const auto sys = support::small_system(RiskParams{0.95, 0, 0.5, FluctForm::literal});
    // ample surplus, then three periods of 54 MW deficit (load 244, rg 0, derated cap 190)
    std::vector<double> rg{200.0, 200.0, 200.0, 0.0, 0.0, 0.0};
    std::vector<double> ld{100.0, 100.0, 100.0, 244.0, 244.0, 244.0};
    const auto spec = size_storage({support::single_unit_scenario(rg, ld)}, sys, 1.0);
    CHECK(spec.power_mw == doctest::Approx(54.0).epsilon(1e-12));
    CHECK(std::abs(spec.energy_mwh - 162.0) <= 0.1);
}

TEST_CASE("size_storage: rides through its own rating, barely")
{
    extscen::Rng rng(17);
    const auto sys = support::small_system();
    for (int trial = 0; trial < 12; ++trial) {
        const double eff = trial % 2 == 0 ? 1.0 : 0.8;
        auto s = support::random_scenario(rng, 1, 1, 48, 120.0, 320.0);
        const auto residual = residual_profile(s, sys);
        const auto spec = size_storage({s}, sys, eff);

        CHECK(oracle_unserved(residual, spec.power_mw, spec.energy_mwh, eff) <= 1e-9);
        if (spec.energy_mwh > 0.25) {
            CHECK(oracle_unserved(residual, spec.power_mw, spec.energy_mwh - 0.25, eff) > 0.0);
        }
        // a single period's deficit must come straight from the store
        double worst = 0.0;
        for (double r : residual) {
            worst = std::max(worst, r);
        }
        CHECK(spec.power_mw == doctest::Approx(worst).epsilon(1e-12));
        CHECK(spec.energy_mwh >= worst - 0.1);
    }
}

TEST_CASE("size_storage: monotone in the scenario set, idempotent on duplicates")
{
    extscen::Rng rng(29);
    const auto sys = support::small_system();
    std::vector<Scenario> pool;
    for (int i = 0; i < 6; ++i) {
        pool.push_back(support::random_scenario(rng, 1, 1, 36, 120.0, 320.0));
    }

    StorageSpec prev{0.0, 0.0, 0.8};
    for (std::size_t n = 1; n <= pool.size(); ++n) {
        const std::vector<Scenario> subset(pool.begin(), pool.begin() + static_cast<long>(n));
        const auto spec = size_storage(subset, sys, 0.8);
        CHECK(spec.power_mw >= prev.power_mw - 1e-12);
        CHECK(spec.energy_mwh >= prev.energy_mwh - 1e-12);
        prev = spec;
    }

    auto doubled = pool;
    doubled.insert(doubled.end(), pool.begin(), pool.end());
    const auto a = size_storage(pool, sys, 0.8);
    const auto b = size_storage(doubled, sys, 0.8);
    CHECK(a.power_mw == b.power_mw);
    CHECK(a.energy_mwh == b.energy_mwh);
}

TEST_CASE("size_storage input validation")
{
    const auto sys = support::small_system();
    CHECK_THROWS_AS(size_storage({}, sys, 0.8), std::invalid_argument);
    const auto s = support::single_unit_scenario({1.0}, {1.0});
    CHECK_THROWS_AS(size_storage({s}, sys, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(size_storage({s}, sys, 1.5), std::invalid_argument);
}
