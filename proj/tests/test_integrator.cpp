// IMEX stepping: fixed points, the linear propagator, conservation, the
// gradient-flow energy decrease, first-order consistency, determinism, and
// the stability probe.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nspfc/errors.hpp"
#include "nspfc/integrator.hpp"
#include "nspfc/noise.hpp"

using namespace nspfc;
using std::numbers::pi;

namespace {

GridPtr grid2d(int n, double L = 1.0, double frac = 2.0 / 3.0) {
    return make_grid(GridSpec{2, n, L, frac});
}

PhysParams constant_params(double M, double r, double eta, double m) {
    return make_params(M, r, CoefficientFamily::constant(eta), CoefficientFamily::constant(m));
}

} // namespace

TEST_CASE("equilibrium is a fixed point") {
    auto g = grid2d(16);
    PhysParams p = constant_params(1.0, -0.5, 1.0, 1.0);
    StepConfig cfg;
    cfg.dt = 1e-3;

    State s(g);
    kernels::fill(s.phi.real(), 0.3);
    s.phi.forward();
    State next = step_imex(s, p, cfg);
    CHECK(next.t == doctest::Approx(1e-3));
    double worst = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
        worst = std::max(worst, std::abs(next.phi.real()[i] - 0.3));
    CHECK(worst <= 1e-14);
    CHECK(next.u[0].max_abs() <= 1e-15);
    CHECK(next.u[1].max_abs() <= 1e-15);
}

TEST_CASE("linear propagator: one step matches exp(-dt m gamma) to O(dt^2)") {
    // r = -1 kills the linear f part; amplitude 1e-8 makes the cubic
    // negligible, so each mode obeys b' = -m (|k|^6 - 2|k|^4) b exactly.
    auto g = grid2d(16);
    PhysParams p = constant_params(1.0, -1.0, 1.0, 1.0);
    const double A = 1e-8;

    const std::array<int, 3> mode = {2, 1, 0};
    const double k2 = 4 * pi * pi * 5.0;
    const double gamma = k2 * k2 * k2 - 2.0 * k2 * k2;

    auto one_step_err = [&](double dt) {
        StepConfig cfg;
        cfg.dt = dt;
        cfg.freeze_velocity = true;
        State s(g);
        s.phi = single_mode(g, mode, A);
        State next = step_imex(s, p, cfg);
        const std::size_t flat = static_cast<std::size_t>(2 * 16 + 1);
        const double got = next.phi.spec()[flat].real();
        const double want = 0.5 * A * static_cast<double>(g->size()) * std::exp(-gamma * dt);
        return std::abs(got - want) / (0.5 * A * static_cast<double>(g->size()));
    };

    // gamma ~ 7.6e6: pick dts with dt*gamma small so the O(dt^2) regime shows
    const double e1 = one_step_err(1e-12);
    const double e2 = one_step_err(5e-13);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
    CHECK(e1 <= 1e-4);
}

TEST_CASE("mass conservation and divergence preservation over many steps") {
    auto g = grid2d(32);
    PhysParams p = make_params(1.0, -0.5, CoefficientFamily::smooth_monotone(0.5, 0.9),
                               CoefficientFamily::smooth_monotone(1e-4, 1.8e-4));
    StepConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 0.12;
    cfg.max_steps = 1200;

    State s(g);
    s.phi = constant_plus_noise(g, 0.07, 1e-2, 5, 5);
    s.u = random_solenoidal(g, 1e-2, 5, 6);
    const double mass0 = s.phi.spectral_mean();

    long steps = 0;
    while (steps < 1000) {
        s = step_imex(s, p, cfg);
        ++steps;
        if (steps % 100 == 0) {
            CHECK(std::abs(s.phi.spectral_mean() - mass0) <= 1e-12);
            CHECK(max_spectral_divergence(s.u) <= 1e-12);
        }
    }
    CHECK(std::abs(s.phi.spectral_mean() - mass0) <= 1e-12);
}

TEST_CASE("gradient flow: energy decreases at the probe dt") {
    // pattern-forming box: L = 16 pi puts the first shells around |k| ~ 1
    auto g = make_grid(GridSpec{2, 32, 16.0 * pi, 2.0 / 3.0});
    PhysParams p = constant_params(1.0, -0.8, 1.0, 1.0);

    State s(g);
    s.phi = constant_plus_noise(g, 0.07, 0.05, 8, 12);

    StepConfig cfg;
    cfg.dt = stability_probe(s, p).suggested;
    CHECK(cfg.dt > 0.0);
    CHECK(std::isfinite(cfg.dt));
    cfg.freeze_velocity = true;

    double prev = sh_energy(s.phi, p.r);
    const double e_initial = prev;
    for (int step = 0; step < 1000; ++step) {
        s = step_imex(s, p, cfg);
        const double e = sh_energy(s.phi, p.r);
        CHECK(e <= prev + 1e-10);
        prev = e;
    }
    CHECK(prev < e_initial); // non-trivial final state
}

TEST_CASE("first-order consistency: halving dt halves the error") {
    auto g = grid2d(16, 1.0, 0.5);
    PhysParams p = make_params(1.0, -0.4, CoefficientFamily::smooth_monotone(0.5, 0.9),
                               CoefficientFamily::smooth_monotone(2e-4, 3.6e-4));

    State s0(g);
    s0.phi = constant_plus_noise(g, 0.05, 1e-2, 3, 21);
    s0.u = random_solenoidal(g, 1e-2, 3, 22);

    auto advance = [&](double dt) {
        StepConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.1;
        cfg.max_steps = 1 << 22;
        return run(s0, p, cfg, 1 << 20).final_state;
    };

    auto err_vs_ref = [&](double dt) {
        State coarse = advance(dt);
        State fine = advance(dt / 16.0);
        double e2 = 0.0;
        ScalarField dphi(g);
        for (std::size_t i = 0; i < g->size(); ++i)
            dphi.real()[i] = coarse.phi.real()[i] - fine.phi.real()[i];
        e2 += dphi.l2_norm() * dphi.l2_norm();
        for (int a = 0; a < 2; ++a) {
            ScalarField du(g);
            for (std::size_t i = 0; i < g->size(); ++i)
                du.real()[i] = coarse.u[a].real()[i] - fine.u[a].real()[i];
            e2 += du.l2_norm() * du.l2_norm();
        }
        return std::sqrt(e2);
    };

    const double e_coarse = err_vs_ref(4e-4);
    const double e_fine = err_vs_ref(2e-4);
    CHECK(e_coarse / e_fine == doctest::Approx(2.0).epsilon(0.15)); // 2.0 +- 0.3
}

TEST_CASE("run: t_end = 0 returns the initial state with empty series") {
    auto g = grid2d(16);
    PhysParams p = constant_params(1.0, -0.5, 1.0, 1.0);
    StepConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.0;
    State s(g);
    s.phi = constant_plus_noise(g, 0.1, 0.05, 3, 3);
    TrajectoryRecord rec = run(s, p, cfg);
    CHECK(rec.steps_taken == 0);
    CHECK(rec.ledger.empty());
    CHECK(rec.final_state.t == 0.0);
}

TEST_CASE("run: deterministic repeat is bit-identical") {
    auto g = grid2d(16);
    PhysParams p = make_params(1.0, -0.5, CoefficientFamily::smooth_monotone(0.5, 0.9),
                               CoefficientFamily::smooth_monotone(1e-3, 1.8e-3));
    StepConfig cfg;
    cfg.dt = 2e-4;
    cfg.t_end = 0.02;

    auto once = [&] {
        State s(g);
        s.phi = constant_plus_noise(g, 0.07, 1e-2, 4, 9);
        s.u = random_solenoidal(g, 1e-2, 4, 10);
        return run(s, p, cfg);
    };
    TrajectoryRecord r1 = once();
    TrajectoryRecord r2 = once();
    REQUIRE(r1.ledger.size() == r2.ledger.size());
    for (std::size_t i = 0; i < r1.ledger.size(); ++i) {
        CHECK(r1.ledger[i].residual == r2.ledger[i].residual);
        CHECK(r1.ledger[i].mass == r2.ledger[i].mass);
    }
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(r1.final_state.phi.real()[i] == r2.final_state.phi.real()[i]);
}

TEST_CASE("run: ledger mass column is flat") {
    auto g = grid2d(64);
    PhysParams p = make_params(1.0, -0.5, CoefficientFamily::smooth_monotone(0.5, 0.9),
                               CoefficientFamily::smooth_monotone(1e-4, 1.8e-4));
    StepConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 0.02;

    State s(g);
    s.phi = constant_plus_noise(g, 0.07, 1e-2, 6, 13);
    s.u = random_solenoidal(g, 1e-2, 6, 14);
    TrajectoryRecord rec = run(s, p, cfg);
    CHECK(rec.steps_taken == 200);
    for (const auto& row : rec.ledger)
        CHECK(std::abs(row.mass - 0.07) <= 1e-12);
}

TEST_CASE("blow-up detection aborts with the offending step") {
    auto g = grid2d(8);
    PhysParams p = constant_params(1.0, -0.5, 1.0, 1.0);
    StepConfig cfg;
    cfg.dt = 1e6; // explicit cubic terms diverge within a few steps
    cfg.t_end = 1e9;
    cfg.max_steps = 1000;

    State s(g);
    s.phi = constant_plus_noise(g, 0.0, 10.0, 2, 4);
    CHECK_THROWS_AS(run(s, p, cfg), BlowUpError);
}

TEST_CASE("stability probe") {
    auto g = grid2d(32);
    PhysParams p = constant_params(1.0, -0.5, 1.0, 1.0);

    // zero velocity, constant m: the f-term remainder bounds dt; finite value
    State s(g);
    s.phi = constant_plus_noise(g, 0.1, 0.2, 5, 5);
    ProbeReport rep = stability_probe(s, p);
    CHECK(std::isfinite(rep.suggested));
    CHECK(rep.suggested > 0.0);
    CHECK(std::isinf(rep.advective));

    // constant m: the splitting remainder vanishes (bound infinite)
    CHECK(std::isinf(rep.mobility_split));

    // with velocity, doubling n tightens the advective bound by >= 2
    s.u = random_solenoidal(g, 1.0, 5, 6);
    ProbeReport r32 = stability_probe(s, p);
    auto g64 = grid2d(64);
    State s64(g64);
    s64.phi = constant_plus_noise(g64, 0.1, 0.2, 5, 5);
    s64.u = random_solenoidal(g64, 1.0, 5, 6);
    ProbeReport r64 = stability_probe(s64, p);
    CHECK(r64.advective <= r32.advective / 2.0 + 1e-15);
}
