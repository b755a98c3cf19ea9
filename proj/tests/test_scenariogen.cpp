#include <doctest.h>

#include "extscen/demo.hpp"
#include "extscen/hash.hpp"
#include "extscen/risk.hpp"
#include "extscen/scenariogen.hpp"

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace extscen;
using namespace extscen::scenariogen;

namespace {

SystemModel demo_system(int sigma = 3, double theta = 0.5)
{
    UnitInventory inv;
    inv.rg_units = {"wind", "pv"};
    inv.ld_units = {"load"};
    inv.sg_units = {{"sg1", 200.0, 60.0, 60.0}};
    return validate_system(std::move(inv), RiskParams{0.95, sigma, theta, FluctForm::literal});
}

GenerationConfig demo_config(int n_ext, int screen_interval, std::uint64_t seed = 1)
{
    GenerationConfig cfg;
    cfg.n_ext = n_ext;
    cfg.screen_interval = screen_interval;
    cfg.n_candidates = 4;
    cfg.tilt = 1.0;
    cfg.seed = seed;
    cfg.fit.k_max = 2;
    cfg.fit.n_init = 2;
    cfg.rg_upper_bounds = {300.0, 300.0};
    cfg.ld_upper_bounds = {528.0};
    return cfg;
}

std::vector<Scenario> demo_history(int n_years = 8, int n_periods = 24)
{
    demo::DemoSpec spec;
    spec.n_years = n_years;
    spec.n_periods = n_periods;
    return demo::make_historical(spec);
}

/// Single-unit-pair bank built directly from closed-form models, no fitting.
TransitionModelBank synthetic_bank(std::size_t n_periods, bool heavy_tail_load = false)
{
    TransitionModelBank bank;
    bank.n_periods = n_periods;
    bank.rg_units = {"rg0"};
    bank.ld_units = {"ld0"};

    gmm::GmmModel rg_init;
    rg_init.weights = {1.0};
    rg_init.means = {50.0};
    rg_init.variances = {25.0};
    gmm::GmmModel ld_init;
    ld_init.weights = {1.0};
    ld_init.means = {100.0};
    ld_init.variances = {25.0};
    bank.rg_initial = {rg_init};
    bank.ld_initial = {ld_init};

    gmm::BivariateGmmModel rg_tr;
    rg_tr.weights = {1.0};
    rg_tr.means = {{50.0, 50.0}};
    rg_tr.covariances = {{25.0, 20.0, 25.0}};

    gmm::BivariateGmmModel ld_tr;
    if (heavy_tail_load) {
        // a persistent mode near 100 plus a reachable high-load excursion
        ld_tr.weights = {0.85, 0.15};
        ld_tr.means = {{100.0, 100.0}, {110.0, 190.0}};
        ld_tr.covariances = {{30.0, 24.0, 30.0}, {60.0, 10.0, 60.0}};
    } else {
        ld_tr.weights = {1.0};
        ld_tr.means = {{100.0, 100.0}};
        ld_tr.covariances = {{30.0, 24.0, 30.0}};
    }

    bank.rg_transitions = {std::vector<gmm::BivariateGmmModel>(n_periods - 1, rg_tr)};
    bank.ld_transitions = {std::vector<gmm::BivariateGmmModel>(n_periods - 1, ld_tr)};
    return bank;
}

SystemModel single_pair_system(double alpha = 1.0, int sigma = 0, double theta = 0.5)
{
    UnitInventory inv;
    inv.rg_units = {"rg0"};
    inv.ld_units = {"ld0"};
    inv.sg_units = {{"sg1", 100.0, 40.0, 40.0}};
    return validate_system(std::move(inv), RiskParams{alpha, sigma, theta, FluctForm::literal});
}

GenerationConfig single_pair_config(int n_ext, int screen_interval, std::uint64_t seed)
{
    GenerationConfig cfg;
    cfg.n_ext = n_ext;
    cfg.screen_interval = screen_interval;
    cfg.n_candidates = 8;
    cfg.tilt = 1.0;
    cfg.seed = seed;
    cfg.rg_upper_bounds = {1000.0};
    cfg.ld_upper_bounds = {1000.0};
    return cfg;
}

} // namespace

TEST_CASE("build_model_bank: shape checks and degenerate history")
{
    auto hist = demo_history(4, 12);
    gmm::FitConfig fit;
    fit.k_max = 2;
    fit.n_init = 2;

    SUBCASE("full coverage: one model per unit and period")
    {
        const auto bank = build_model_bank(hist, fit);
        CHECK(bank.n_periods == 12);
        REQUIRE(bank.rg_initial.size() == 2);
        REQUIRE(bank.ld_initial.size() == 1);
        REQUIRE(bank.rg_transitions[0].size() == 11);
        REQUIRE(bank.ld_transitions[0].size() == 11);
        for (const auto& m : bank.rg_transitions[0]) {
            m.validate(0.0);
        }
    }

    SUBCASE("fewer than two scenarios is an error")
    {
        hist.resize(1);
        CHECK_THROWS_AS(build_model_bank(hist, fit), std::invalid_argument);
    }

    SUBCASE("mismatched shapes fail before fitting")
    {
        hist[1].rg_mw[0].pop_back();
        hist[1].rg_mw[1].pop_back();
        hist[1].ld_mw[0].pop_back();
        CHECK_THROWS_AS(build_model_bank(hist, fit), std::invalid_argument);
    }

    SUBCASE("identical histories degenerate to floored transitions")
    {
        std::vector<Scenario> twins{hist[0], hist[0]};
        twins[1].label = "copy";
        const auto bank = build_model_bank(twins, fit);
        for (const auto& m : bank.ld_transitions[0]) {
            CHECK(m.k() == 1);
            const auto& c = m.covariances[0];
            CHECK(c.v12 == 0.0);
            CHECK(c.v11 == c.v22);
        }
    }
}

TEST_CASE("bank cache: second build is a bit-exact hit")
{
    support::TempDir tmp("bank_cache");
    const auto hist = demo_history(5, 10);
    gmm::FitConfig fit;
    fit.k_max = 2;
    fit.n_init = 2;

    const auto first = build_model_bank_cached(hist, fit, tmp.path());
    CHECK(!first.cache_hit);
    const auto second = build_model_bank_cached(hist, fit, tmp.path());
    CHECK(second.cache_hit);
    CHECK(second.hash_hex == first.hash_hex);
    CHECK(second.bank.to_json() == first.bank.to_json());

    // different fit config keys a different entry
    gmm::FitConfig other = fit;
    other.seed = 999;
    const auto third = build_model_bank_cached(hist, other, tmp.path());
    CHECK(!third.cache_hit);
    CHECK(third.hash_hex != first.hash_hex);
}

TEST_CASE("init_ensemble: cohort arithmetic, clamping, determinism")
{
    const auto bank = synthetic_bank(24);
    auto cfg = single_pair_config(5, 6, 42);

    auto e1 = init_ensemble(bank, cfg);
    CHECK(e1.n_sam() == 25); // (24/6 + 1) * 5
    CHECK(e1.t_current == 1);

    auto e2 = init_ensemble(bank, cfg);
    REQUIRE(e2.n_sam() == e1.n_sam());
    for (std::size_t i = 0; i < e1.n_sam(); ++i) {
        CHECK(e1.members[i].scenario.rg_mw[0][0] == e2.members[i].scenario.rg_mw[0][0]);
        CHECK(e1.members[i].scenario.ld_mw[0][0] == e2.members[i].scenario.ld_mw[0][0]);
    }

    // ceil() for a non-dividing interval
    cfg.screen_interval = 7;
    CHECK(init_ensemble(bank, cfg).n_sam() == 25); // (ceil(24/7)=4, +1) * 5

    cfg.screen_interval = 6;
    cfg.rg_upper_bounds = {40.0};
    const auto clamped = init_ensemble(bank, cfg);
    for (const auto& m : clamped.members) {
        CHECK(m.scenario.rg_mw[0][0] <= 40.0);
        CHECK(m.scenario.rg_mw[0][0] >= 0.0);
    }
}

TEST_CASE("advance_period with one candidate reproduces the conditional law")
{
    const std::size_t n_members = 10000;
    const auto bank = synthetic_bank(2);
    const auto sys = single_pair_system();
    auto cfg = single_pair_config(1, 100, 7);
    cfg.n_candidates = 1;

    const double x1 = 104.0;
    Ensemble e;
    e.t_current = 1;
    e.members.resize(n_members);
    for (std::size_t i = 0; i < n_members; ++i) {
        auto& m = e.members[i];
        m.uid = i;
        m.scenario.label = "m" + std::to_string(i);
        m.scenario.rg_mw = {{50.0, 0.0}};
        m.scenario.ld_mw = {{x1, 0.0}};
    }
    advance_period(e, bank, sys, cfg);
    CHECK(e.t_current == 2);

    std::vector<double> draws(n_members);
    for (std::size_t i = 0; i < n_members; ++i) {
        draws[i] = e.members[i].scenario.ld_mw[0][1];
    }
    std::sort(draws.begin(), draws.end());

    const auto cond = gmm::conditional_slice(bank.ld_transitions[0][0], x1);
    double ks = 0.0;
    for (std::size_t i = 0; i < n_members; ++i) {
        const double f = gmm::cdf(cond, draws[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n_members));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n_members - f));
    }
    CHECK(ks < 1.6276 / std::sqrt(static_cast<double>(n_members)));
}

TEST_CASE("tilt zero ignores the risk scores entirely")
{
    const auto bank = synthetic_bank(12, true);
    auto cfg = single_pair_config(4, 100, 11);
    cfg.tilt = 0.0;

    // same draws, radically different scoring parameters: selections agree
    const auto sys_a = single_pair_system(1.0, 0, 0.5);
    const auto sys_b = single_pair_system(0.0, 0, 1.0);
    auto ea = init_ensemble(bank, cfg);
    auto eb = init_ensemble(bank, cfg);
    for (int t = 1; t < 12; ++t) {
        advance_period(ea, bank, sys_a, cfg);
        advance_period(eb, bank, sys_b, cfg);
    }
    for (std::size_t i = 0; i < ea.n_sam(); ++i) {
        for (std::size_t t = 0; t < 12; ++t) {
            CHECK(ea.members[i].scenario.ld_mw[0][t] == eb.members[i].scenario.ld_mw[0][t]);
            CHECK(ea.members[i].scenario.rg_mw[0][t] == eb.members[i].scenario.rg_mw[0][t]);
        }
    }
}

TEST_CASE("positive tilt raises the ensemble risk on a heavy-tailed bank")
{
    const auto bank = synthetic_bank(12, true);
    const auto sys = single_pair_system();
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto tilted = single_pair_config(10, 100, seed);
        tilted.tilt = 10.0;
        auto flat = tilted;
        flat.tilt = 0.0;

        auto et = init_ensemble(bank, tilted);
        auto ef = init_ensemble(bank, flat);
        for (int t = 1; t < 12; ++t) {
            advance_period(et, bank, sys, tilted);
            advance_period(ef, bank, sys, flat);
        }
        double sum_t = 0.0;
        double sum_f = 0.0;
        for (std::size_t i = 0; i < et.n_sam(); ++i) {
            sum_t += risk_profile(et.members[i].scenario, sys).ilt;
            sum_f += risk_profile(ef.members[i].scenario, sys).ilt;
        }
        wins += sum_t > sum_f ? 1 : 0;
    }
    CHECK(wins >= 9);
}

TEST_CASE("screen: dominance, tie handling, and schedule errors")
{
    const auto bank = synthetic_bank(24);
    const auto sys = single_pair_system();
    auto cfg = single_pair_config(5, 6, 123);

    auto e = init_ensemble(bank, cfg);
    REQUIRE(e.n_sam() == 25);
    for (int t = 1; t < 6; ++t) {
        advance_period(e, bank, sys, cfg);
    }
    CHECK_THROWS_AS(
        [&] {
            auto copy = e;
            copy.t_current = 5;
            screen(copy, sys, cfg);
        }(),
        std::logic_error);

    CHECK(e.t_current == 6);
    auto before = e;
    const auto rec = screen(e, sys, cfg);
    CHECK(rec.t == 6);
    CHECK(rec.before == 25);
    CHECK(rec.removed == 5);
    CHECK(rec.after == 20);
    CHECK(e.n_sam() == 20);
    CHECK(rec.min_survivor_ilt >= rec.cut_ilt - 1e-12);

    // every survivor dominates every removed member, up to tie equality
    std::vector<std::uint64_t> surviving;
    for (const auto& m : e.members) {
        surviving.push_back(m.uid);
    }
    for (const auto& m : before.members) {
        const double ilt = risk_profile(m.scenario, sys, 6).ilt;
        const bool kept =
            std::find(surviving.begin(), surviving.end(), m.uid) != surviving.end();
        if (!kept) {
            CHECK(ilt <= rec.cut_ilt + 1e-12);
        }
    }

    SUBCASE("identical members are culled by uid, lowest kept")
    {
        Ensemble twins;
        twins.t_current = 6;
        twins.members.resize(12);
        for (std::size_t i = 0; i < 12; ++i) {
            auto& m = twins.members[i];
            m.uid = i;
            m.scenario.rg_mw = {std::vector<double>(24, 50.0)};
            m.scenario.ld_mw = {std::vector<double>(24, 100.0)};
        }
        auto cfg2 = single_pair_config(5, 6, 1);
        const auto rec2 = screen(twins, sys, cfg2);
        CHECK(rec2.after == 7);
        std::vector<std::uint64_t> kept;
        for (const auto& m : twins.members) {
            kept.push_back(m.uid);
        }
        CHECK(kept == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6});
    }

    SUBCASE("screening never drains the pool below n_ext")
    {
        Ensemble tiny;
        tiny.t_current = 6;
        tiny.members.resize(5);
        for (std::size_t i = 0; i < 5; ++i) {
            tiny.members[i].uid = i;
            tiny.members[i].scenario.rg_mw = {std::vector<double>(24, 50.0)};
            tiny.members[i].scenario.ld_mw = {std::vector<double>(24, 100.0)};
        }
        CHECK_THROWS_AS(screen(tiny, sys, cfg), std::logic_error);
    }
}

TEST_CASE("generate: bookkeeping trace on the 24-period case")
{
    const auto hist = demo_history(8, 24);
    const auto sys = demo_system();
    const auto cfg = demo_config(5, 6, 21);

    const auto result = generate(hist, sys, cfg);
    CHECK(result.manifest.initial_members == 25);
    REQUIRE(result.manifest.screenings.size() == 3);
    const int expected_t[3] = {6, 12, 18};
    const std::size_t expected_before[3] = {25, 20, 15};
    for (int i = 0; i < 3; ++i) {
        const auto& rec = result.manifest.screenings[static_cast<std::size_t>(i)];
        CHECK(rec.t == expected_t[i]);
        CHECK(rec.before == expected_before[i]);
        CHECK(rec.removed == 5);
        CHECK(rec.after == expected_before[i] - 5);
        CHECK(rec.min_survivor_ilt >= rec.cut_ilt - 1e-12);
    }
    CHECK(result.manifest.final_candidates == 10);
    REQUIRE(result.selected.size() == 5);

    SUBCASE("ranking is sorted and self-consistent")
    {
        for (std::size_t i = 1; i < result.selected.size(); ++i) {
            CHECK(result.selected[i - 1].profile.ilt >= result.selected[i].profile.ilt);
        }
        for (const auto& rs : result.selected) {
            const auto prof = risk_profile(rs.scenario, sys);
            CHECK(prof.ilt == doctest::Approx(rs.profile.ilt).epsilon(1e-9));
        }
    }

    SUBCASE("every generated value respects the clamp bounds")
    {
        for (const auto& rs : result.selected) {
            for (std::size_t u = 0; u < 2; ++u) {
                for (double v : rs.scenario.rg_mw[u]) {
                    CHECK(v >= 0.0);
                    CHECK(v <= cfg.rg_upper_bounds[u]);
                }
            }
            for (double v : rs.scenario.ld_mw[0]) {
                CHECK(v >= 0.0);
                CHECK(v <= cfg.ld_upper_bounds[0]);
            }
        }
    }
}

TEST_CASE("generate: deterministic and worker-count independent")
{
    const auto hist = demo_history(6, 18);
    const auto sys = demo_system();
    const auto cfg = demo_config(4, 6, 77);

    GenerateOptions serial;
    serial.workers = 1;
    GenerateOptions threaded;
    threaded.workers = 3;

    const auto a = generate(hist, sys, cfg, serial);
    const auto b = generate(hist, sys, cfg, serial);
    const auto c = generate(hist, sys, cfg, threaded);

    auto scenarios_of = [](const GenerationResult& r) {
        std::vector<Scenario> out;
        for (const auto& rs : r.selected) {
            out.push_back(rs.scenario);
        }
        return out;
    };
    CHECK(hash_scenarios(scenarios_of(a)) == hash_scenarios(scenarios_of(b)));
    CHECK(hash_scenarios(scenarios_of(a)) == hash_scenarios(scenarios_of(c)));
    for (std::size_t i = 0; i < a.selected.size(); ++i) {
        CHECK(a.selected[i].profile.ilt == b.selected[i].profile.ilt);
        CHECK(a.selected[i].profile.ilt == c.selected[i].profile.ilt);
    }

    // manifests agree except for wall-clock timing
    auto ja = a.manifest.to_json();
    auto jc = c.manifest.to_json();
    ja.erase("timing");
    jc.erase("timing");
    CHECK(ja == jc);

    const auto other = generate(hist, sys, demo_config(4, 6, 78), serial);
    CHECK(hash_scenarios(scenarios_of(a)) != hash_scenarios(scenarios_of(other)));
}

TEST_CASE("generate without screening equals sample-all-then-rank")
{
    const auto hist = demo_history(6, 15);
    const auto sys = demo_system();
    auto cfg = demo_config(5, 100, 31); // screen_interval past the horizon
    cfg.n_candidates = 1;

    const auto result = generate(hist, sys, cfg);
    CHECK(result.manifest.screenings.empty());
    CHECK(result.manifest.initial_members == 10); // (ceil(15/100)=1, +1) * 5

    // brute force: same bank and seed, no screening logic at all
    const auto bank = build_model_bank(hist, cfg.fit);
    auto e = init_ensemble(bank, cfg);
    while (e.t_current < 15) {
        advance_period(e, bank, sys, cfg);
    }
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < e.n_sam(); ++i) {
        ranked.emplace_back(risk_profile(e.members[i].scenario, sys).ilt, i);
    }
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return e.members[a.second].uid < e.members[b.second].uid;
    });

    REQUIRE(result.selected.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto& brute = e.members[ranked[i].second];
        CHECK(result.selected[i].scenario.label == brute.scenario.label);
        CHECK(result.selected[i].profile.ilt == ranked[i].first);
        CHECK(hash_scenarios({result.selected[i].scenario}) ==
              hash_scenarios({brute.scenario}));
    }
}

TEST_CASE("generate validates configuration against the system")
{
    const auto hist = demo_history(4, 10);
    const auto sys = demo_system();
    auto cfg = demo_config(2, 5);
    cfg.rg_upper_bounds = {300.0}; // wrong arity
    CHECK_THROWS_AS(generate(hist, sys, cfg), std::invalid_argument);

    cfg = demo_config(0, 5);
    CHECK_THROWS_AS(generate(hist, sys, cfg), std::invalid_argument);
}
