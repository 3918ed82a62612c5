#include "nspfc/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nspfc/errors.hpp"
#include "nspfc/noise.hpp"
#include "nspfc/snapshot.hpp"

namespace nspfc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string csv_header() {
    return "t,kinetic,sh,visc_diss,mob_diss,residual,mass,phi_h2,phi_h3,u_h,u_v,psi_h1";
}

std::string csv_row(const LedgerRow& l, const NormRow& n) {
    std::string s;
    s += fmt(l.t);
    for (double v : {l.kinetic, l.sh, l.visc_diss, l.mob_diss, l.residual, l.mass, n.phi_h2,
                     n.phi_h3, n.u_h, n.u_v, n.psi_h1}) {
        s += ',';
        s += fmt(v);
    }
    return s;
}

SimulateResult simulate(const RunConfig& cfg, bool write_outputs) {
    const GridPtr grid = make_grid(cfg.grid);
    const State initial = build_initial_state(cfg, grid);

    SimulateResult res;
    std::ostringstream csv;
    csv << csv_header() << '\n';

    std::ofstream stream_csv;
    const std::filesystem::path dir = cfg.output.directory;
    if (write_outputs) {
        std::filesystem::create_directories(dir);
        if (cfg.output.snapshots)
            write_snapshot(initial, dir / "initial.snap");
        if (cfg.output.ledger) {
            stream_csv.open(dir / "ledger.csv", std::ios::trunc);
            stream_csv << csv_header() << '\n';
        }
    }

    SampleSink sink = [&](const State&, const LedgerRow& l, const NormRow& n) {
        const std::string row = csv_row(l, n);
        csv << row << '\n';
        if (stream_csv.is_open())
            stream_csv << row << '\n' << std::flush; // partial output survives blow-up
    };

    TrajectoryRecord rec = run(initial, cfg.params, cfg.step, cfg.output.stride, sink);
    res.steps = rec.steps_taken;
    res.final_t = rec.final_state.t;
    res.csv = csv.str();
    if (write_outputs && cfg.output.snapshots) {
        res.final_snapshot = dir / "final.snap";
        write_snapshot(rec.final_state, res.final_snapshot);
    }
    return res;
}

GradCheckResult grad_check(const RunConfig& cfg, int n_pairs, std::uint64_t seed) {
    const GridPtr grid = make_grid(cfg.grid);
    const double r = cfg.params.r;
    const int cutoff = std::min(grid->mask_cutoff(), 3);

    GradCheckResult res;
    res.ok = true;
    res.min_fit_order = 1e300;
    std::ostringstream table;
    table << "pair,eps,rel_error\n";

    const std::vector<double> eps_set = {1e-2, 1e-3, 1e-4, 1e-5};
    for (int p = 0; p < n_pairs; ++p) {
        ScalarField phi = random_smooth_field(grid, 1.0, cutoff, seed + 2 * static_cast<std::uint64_t>(p));
        ScalarField v = random_smooth_field(grid, 0.8, cutoff, seed + 2 * static_cast<std::uint64_t>(p) + 1);
        ScalarField psi = chemical_potential(phi, r);
        const double pairing = inner(psi, v);

        std::vector<double> errs;
        for (double eps : eps_set) {
            ScalarField plus(grid), minus(grid);
            for (std::size_t i = 0; i < phi.size(); ++i) {
                plus.real()[i] = phi.real()[i] + eps * v.real()[i];
                minus.real()[i] = phi.real()[i] - eps * v.real()[i];
            }
            plus.forward();
            minus.forward();
            const double fd = (sh_energy(plus, r) - sh_energy(minus, r)) / (2.0 * eps);
            const double rel = std::abs(fd - pairing) / std::max(std::abs(pairing), 1e-300);
            errs.push_back(rel);
            table << p << ',' << fmt(eps) << ',' << fmt(rel) << '\n';
            if (eps == 1e-4)
                res.max_rel_error_at_1e4 = std::max(res.max_rel_error_at_1e4, rel);
        }
        // fit the order on the three largest eps; the smallest is roundoff-bound
        for (int i = 0; i + 1 < 3; ++i) {
            const double order = std::log(errs[static_cast<std::size_t>(i)] /
                                          errs[static_cast<std::size_t>(i) + 1]) /
                                 std::log(eps_set[static_cast<std::size_t>(i)] /
                                          eps_set[static_cast<std::size_t>(i) + 1]);
            res.min_fit_order = std::min(res.min_fit_order, order);
        }
    }
    res.ok = res.max_rel_error_at_1e4 <= 1e-8 && res.min_fit_order >= 1.9;
    res.table = table.str();
    return res;
}

EnergyAuditResult energy_audit(const RunConfig& cfg) {
    EnergyAuditResult res;
    std::ostringstream table;
    table << "dt,residual,relative_residual\n";

    for (int level = 0; level < 3; ++level) {
        RunConfig c = cfg;
        c.step.dt = cfg.step.dt / std::pow(2.0, level);
        const GridPtr grid = make_grid(c.grid);
        const State initial = build_initial_state(c, grid);
        TrajectoryRecord rec = run(initial, c.params, c.step, c.output.stride);
        if (rec.ledger.empty())
            throw ConfigError("energy-audit needs t_end > 0");
        const LedgerRow last = rec.ledger.back();
        const LedgerRow first = rec.ledger.front();
        const double e0 = std::abs(first.kinetic + first.sh);
        res.dts.push_back(c.step.dt);
        res.residuals.push_back(std::abs(last.residual));
        res.rel_residuals.push_back(std::abs(last.residual) / std::max(e0, 1e-300));
        table << fmt(c.step.dt) << ',' << fmt(last.residual) << ','
              << fmt(res.rel_residuals.back()) << '\n';
    }

    double worst = 1e300;
    for (std::size_t i = 0; i + 1 < res.residuals.size(); ++i) {
        const double order = std::log2(res.residuals[i] / res.residuals[i + 1]);
        worst = std::min(worst, order);
    }
    res.observed_order = worst;
    res.ok = res.observed_order >= 0.9;
    res.table = table.str();
    return res;
}

OracleCompareResult oracle_compare(const RunConfig& cfg, double oracle_dt, double tolerance) {
    const int n_modes = cfg.oracle_modes.value_or(4);
    const GridPtr grid = make_grid(cfg.grid);
    if (grid->mask_cutoff() != n_modes)
        throw ConfigError("oracle-compare requires dealias cutoff == oracle_modes (cutoff " +
                          std::to_string(grid->mask_cutoff()) + ", modes " +
                          std::to_string(n_modes) + "); pick dealias_fraction accordingly");

    const State initial = build_initial_state(cfg, grid);

    GalerkinSystem sys = assemble(n_modes, cfg.params, grid);
    const long stride = std::max(1L, static_cast<long>(std::llround(cfg.step.t_end / oracle_dt)) / 1000);
    OracleResult oracle = integrate_rk4(sys, initial, oracle_dt, cfg.step.t_end,
                                        static_cast<int>(stride));

    TrajectoryRecord solver = run(initial, cfg.params, cfg.step, cfg.output.stride);

    OracleCompareResult res;
    res.tolerance = tolerance;
    ScalarField dphi(grid);
    for (std::size_t i = 0; i < dphi.size(); ++i)
        dphi.real()[i] = solver.final_state.phi.real()[i] - oracle.final_state.phi.real()[i];
    res.phi_gap_l2 = dphi.l2_norm();
    double ugap2 = 0.0;
    for (int a = 0; a < grid->dim(); ++a) {
        ScalarField du(grid);
        for (std::size_t i = 0; i < du.size(); ++i)
            du.real()[i] = solver.final_state.u[a].real()[i] - oracle.final_state.u[a].real()[i];
        const double g = du.l2_norm();
        ugap2 += g * g;
    }
    res.u_gap_l2 = std::sqrt(ugap2);
    res.oracle_ledger_residual =
        oracle.ledger.empty() ? 0.0 : std::abs(oracle.ledger.back().residual);
    res.ok = res.phi_gap_l2 <= tolerance && res.u_gap_l2 <= tolerance;
    return res;
}

namespace {

struct GapAccumulator {
    double sup_u = 0.0, sup_phi = 0.0;
    double int_u_v = 0.0, int_phi_h5 = 0.0;
    double prev_t = 0.0, prev_uv = 0.0, prev_ph5 = 0.0;
    bool first = true;
    std::vector<double> ts, gaps;

    void add(double t, const State& a, const State& b) {
        const GridPtr grid = a.phi.grid_ptr();
        VectorField du(grid);
        ScalarField dphi(grid);
        for (int c = 0; c < grid->dim(); ++c)
            for (std::size_t i = 0; i < grid->size(); ++i)
                du[c].spec()[i] = a.u[c].spec()[i] - b.u[c].spec()[i];
        for (std::size_t i = 0; i < grid->size(); ++i)
            dphi.spec()[i] = a.phi.spec()[i] - b.phi.spec()[i];

        double unorm2 = 0.0;
        for (int c = 0; c < grid->dim(); ++c) {
            const double n = static_cast<double>(grid->size());
            unorm2 += kernels::block_norm2(du[c].spec()) * grid->volume() / (n * n);
        }
        const double uv2 = sobolev_norm_sq(du, 1);
        const double ph2 = sobolev_norm_sq(dphi, 2);
        const double ph5 = sobolev_norm_sq(dphi, 5);

        sup_u = std::max(sup_u, unorm2);
        sup_phi = std::max(sup_phi, ph2);
        if (!first) {
            const double dt = t - prev_t;
            int_u_v += 0.5 * dt * (prev_uv + uv2);
            int_phi_h5 += 0.5 * dt * (prev_ph5 + ph5);
        }
        first = false;
        prev_t = t;
        prev_uv = uv2;
        prev_ph5 = ph5;
        ts.push_back(t);
        gaps.push_back(unorm2 + ph2);
    }

    double total() const { return sup_u + int_u_v + sup_phi + int_phi_h5; }
};

} // namespace

ContDepResult cont_dep_experiment(const RunConfig& cfg, double delta, std::uint64_t seed) {
    ContDepResult res;
    if (cfg.grid.dim != 2)
        throw ConfigError("cont-dep experiment is defined for dim = 2");
    if (delta == 0.0) {
        res.degenerate = true;
        return res;
    }

    const GridPtr grid = make_grid(cfg.grid);
    const State base0 = build_initial_state(cfg, grid);

    // fixed smooth perturbation shape, scaled by delta and 2 delta
    const int cutoff = std::min(grid->mask_cutoff(), 4);
    ScalarField pphi = random_smooth_field(grid, 1.0, cutoff, splitmix64(seed ^ 0xA11CE));
    VectorField pu = random_solenoidal(grid, 1.0, cutoff, splitmix64(seed ^ 0xB0B));

    auto perturbed = [&](double d) {
        State s(grid);
        s.t = 0.0;
        for (std::size_t i = 0; i < grid->size(); ++i)
            s.phi.spec()[i] = base0.phi.spec()[i] + d * pphi.spec()[i];
        for (int a = 0; a < grid->dim(); ++a)
            for (std::size_t i = 0; i < grid->size(); ++i)
                s.u[a].spec()[i] = base0.u[a].spec()[i] + d * pu[a].spec()[i];
        s.phi.backward();
        s.u.backward();
        return s;
    };

    auto gap_run = [&](double d, GapAccumulator& acc) {
        const State pert0 = perturbed(d);

        // input gap: ||du0||_H^2 + ||dphi0||_H2^2
        double in_u = 0.0;
        {
            const double n = static_cast<double>(grid->size());
            for (int a = 0; a < grid->dim(); ++a) {
                std::vector<cplx> diff(grid->size());
                for (std::size_t i = 0; i < grid->size(); ++i)
                    diff[i] = pert0.u[a].spec()[i] - base0.u[a].spec()[i];
                in_u += kernels::block_norm2(diff) * grid->volume() / (n * n);
            }
        }
        ScalarField dphi0(grid);
        for (std::size_t i = 0; i < grid->size(); ++i)
            dphi0.spec()[i] = pert0.phi.spec()[i] - base0.phi.spec()[i];
        const double input_gap = in_u + sobolev_norm_sq(dphi0, 2);

        // run both trajectories in lockstep
        State a = base0, b = pert0;
        acc.add(0.0, a, b);
        long steps = 0;
        const double t_eps = 1e-12 * std::max(1.0, cfg.step.t_end);
        while (a.t + t_eps < cfg.step.t_end && steps < cfg.step.max_steps) {
            a = step_imex(a, cfg.params, cfg.step);
            b = step_imex(b, cfg.params, cfg.step);
            ++steps;
            if (!a.phi.finite() || !b.phi.finite() || !a.u.finite() || !b.u.finite())
                throw BlowUpError(steps, a.t);
            acc.add(a.t, a, b);
        }
        return input_gap;
    };

    GapAccumulator acc1, acc2;
    const double input1 = gap_run(delta, acc1);
    const double input2 = gap_run(2.0 * delta, acc2);

    res.input_gap_sq = input1;
    res.output_gap_sq = acc1.total();
    res.ratio = acc1.total() / input1;
    res.scaling = acc2.total() / acc1.total();
    res.gap_t = acc1.ts;
    res.gap_sq = acc1.gaps;
    (void)input2;
    return res;
}

MassAuditResult mass_audit(const RunConfig& cfg) {
    const GridPtr grid = make_grid(cfg.grid);
    const State initial = build_initial_state(cfg, grid);
    const double mass0 = initial.phi.spectral_mean();

    MassAuditResult res;
    SampleSink sink = [&](const State& s, const LedgerRow&, const NormRow&) {
        res.max_mass_drift =
            std::max(res.max_mass_drift, std::abs(s.phi.spectral_mean() - mass0));
        res.max_divergence = std::max(res.max_divergence, max_spectral_divergence(s.u));
        for (int a = 0; a < grid->dim(); ++a) {
            const double mean_a =
                std::abs(s.u[a].spec()[0].real() / static_cast<double>(grid->size())) +
                std::abs(s.u[a].spec()[0].imag() / static_cast<double>(grid->size()));
            res.max_mean_u = std::max(res.max_mean_u, mean_a);
        }
    };
    TrajectoryRecord rec = run(initial, cfg.params, cfg.step, cfg.output.stride, sink);
    res.steps = rec.steps_taken;
    res.ok = res.max_mass_drift <= 1e-12 && res.max_divergence <= 1e-12 &&
             res.max_mean_u <= 1e-13;
    return res;
}

} // namespace nspfc
