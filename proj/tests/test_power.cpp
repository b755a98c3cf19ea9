#include <doctest.h>

#include "extscen/power.hpp"
#include "extscen/rng.hpp"
#include "extscen/scenario_io.hpp"

#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

using namespace extscen;

TEST_CASE("validate_system caches aggregates for the study case")
{
    UnitInventory inv;
    inv.rg_units = {"wind"};
    inv.ld_units = {"load"};
    inv.sg_units = {{"sg1", 200.0, 60.0, 60.0}};
    const auto sys = validate_system(inv, RiskParams{0.95, 24, 0.5, FluctForm::literal});
    CHECK(sys.sg_capacity_mw() == 200.0);
    CHECK(sys.sg_ramp_up_mw() == 60.0);
    CHECK(sys.sg_ramp_down_mw() == 60.0);
    CHECK(sys.params().alpha_sg == 0.95);
}

TEST_CASE("validate_system rejects ramp above capacity, naming the unit")
{
    UnitInventory inv;
    inv.rg_units = {"wind"};
    inv.ld_units = {"load"};
    inv.sg_units = {{"sg_big_ramp", 200.0, 300.0, 60.0}};
    try {
        validate_system(inv, {});
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("sg_big_ramp") != std::string::npos);
    }
}

TEST_CASE("validate_system rejects an empty renewable list")
{
    UnitInventory inv;
    inv.ld_units = {"load"};
    try {
        validate_system(inv, {});
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("no renewable units") != std::string::npos);
    }
}

TEST_CASE("validate_system rejects duplicate ids and bad params")
{
    UnitInventory inv;
    inv.rg_units = {"wind", "wind"};
    inv.ld_units = {"load"};
    CHECK_THROWS_AS(validate_system(inv, {}), std::invalid_argument);

    inv.rg_units = {"wind"};
    RiskParams p;
    p.alpha_sg = 1.5;
    CHECK_THROWS_AS(validate_system(inv, p), std::invalid_argument);
    p = {};
    p.theta = -0.1;
    CHECK_THROWS_AS(validate_system(inv, p), std::invalid_argument);
    p = {};
    p.sigma = -1;
    CHECK_THROWS_AS(validate_system(inv, p), std::invalid_argument);
}

TEST_CASE("aggregates are permutation invariant")
{
    std::mt19937_64 order_rng(7);
    extscen::Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SynchronousGenerator> units;
        const int n = 2 + static_cast<int>(rng.uniform01() * 6);
        for (int i = 0; i < n; ++i) {
            const double cap = 50.0 + 150.0 * rng.uniform01();
            units.push_back({"sg" + std::to_string(i), cap, cap * rng.uniform01(),
                             cap * rng.uniform01()});
        }
        UnitInventory a;
        a.rg_units = {"wind"};
        a.ld_units = {"load"};
        a.sg_units = units;
        std::shuffle(units.begin(), units.end(), order_rng);
        UnitInventory b;
        b.rg_units = {"wind"};
        b.ld_units = {"load"};
        b.sg_units = units;

        const auto sys_a = validate_system(a, {});
        const auto sys_b = validate_system(b, {});
        CHECK(sys_a.sg_capacity_mw() == doctest::Approx(sys_b.sg_capacity_mw()).epsilon(1e-12));
        CHECK(sys_a.sg_ramp_up_mw() == doctest::Approx(sys_b.sg_ramp_up_mw()).epsilon(1e-12));
        CHECK(sys_a.sg_ramp_down_mw() == doctest::Approx(sys_b.sg_ramp_down_mw()).epsilon(1e-12));
    }
}

TEST_CASE("scenario validation flags bad entries")
{
    auto s = support::single_unit_scenario({10.0, 20.0}, {30.0, 40.0});
    CHECK_NOTHROW(validate_scenario(s));

    s.ld_mw[0][1] = -1.0;
    CHECK_THROWS_AS(validate_scenario(s), std::invalid_argument);

    s = support::single_unit_scenario({10.0, 20.0}, {30.0});
    CHECK_THROWS_AS(validate_scenario(s), std::invalid_argument);

    s = support::single_unit_scenario({}, {});
    CHECK_THROWS_AS(validate_scenario(s), std::invalid_argument);
}

TEST_CASE("scenario CSV serialization round-trips bit-exactly")
{
    support::TempDir tmp("scenario_io");
    extscen::Rng rng(99);
    Scenario s = support::random_scenario(rng, 2, 1, 50);
    s.label = "rt";
    // include values that stress decimal printing
    s.rg_mw[0][0] = 0.1;
    s.rg_mw[1][1] = 1.0 / 3.0;
    s.ld_mw[0][2] = 1e-17;

    const auto path = tmp.path() / "rt.csv";
    write_scenario_csv(path, s, {"wind", "pv"}, {"load"});
    const Scenario back = read_scenario_csv(path, {"wind", "pv"}, {"load"});

    REQUIRE(back.rg_mw.size() == s.rg_mw.size());
    REQUIRE(back.ld_mw.size() == s.ld_mw.size());
    for (std::size_t u = 0; u < s.rg_mw.size(); ++u) {
        for (std::size_t t = 0; t < s.rg_mw[u].size(); ++t) {
            CHECK(back.rg_mw[u][t] == s.rg_mw[u][t]);
        }
    }
    for (std::size_t t = 0; t < s.ld_mw[0].size(); ++t) {
        CHECK(back.ld_mw[0][t] == s.ld_mw[0][t]);
    }
    CHECK(back.label == "rt");
}

TEST_CASE("scenario CSV reader rejects malformed files")
{
    support::TempDir tmp("scenario_io_bad");
    const auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(tmp.path() / name);
        out << text;
        return tmp.path() / name;
    };

    CHECK_THROWS(read_scenario_csv(write("h.csv", "wrong,header\n1,2\n"), {"wind"}, {"load"}));
    CHECK_THROWS(read_scenario_csv(write("r.csv", "period,wind,load\n1,2\n"), {"wind"}, {"load"}));
    CHECK_THROWS(
        read_scenario_csv(write("n.csv", "period,wind,load\n1,abc,3\n"), {"wind"}, {"load"}));
    CHECK_THROWS(
        read_scenario_csv(write("p.csv", "period,wind,load\n2,1,3\n"), {"wind"}, {"load"}));
}
