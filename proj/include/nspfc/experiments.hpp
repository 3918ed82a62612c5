#pragma once

// The experiment drivers behind the CLI subcommands and the acceptance suite:
// full runs with CSV/snapshot output, the variational-derivative check, the
// energy-audit dt sweep, solver-vs-oracle comparison, the continuous-
// dependence experiment, and the conservation audit.

#include <filesystem>

#include "nspfc/config.hpp"
#include "nspfc/galerkin.hpp"

namespace nspfc {

// ledger + norm columns, one row per sample; see csv_header().
std::string csv_header();
std::string csv_row(const LedgerRow& l, const NormRow& n);

struct SimulateResult {
    long steps = 0;
    double final_t = 0.0;
    std::string csv;        // full ledger CSV (also written to disk when asked)
    std::filesystem::path final_snapshot;
};

// Runs the config; when write_outputs is set, streams <dir>/ledger.csv and
// writes <dir>/initial.snap, <dir>/final.snap.
SimulateResult simulate(const RunConfig& cfg, bool write_outputs);

struct GradCheckResult {
    bool ok = false;
    double max_rel_error_at_1e4 = 0.0; // worst relative error at eps = 1e-4
    double min_fit_order = 0.0;        // worst fitted order over the pairs
    std::string table;
};

// Central-difference check of psi = dE/dphi over n_pairs random (phi, v)
// pairs at eps in {1e-2, 1e-3, 1e-4, 1e-5}; the order is fitted on the three
// largest eps (the 1e-5 point sits near the cancellation floor and is
// reported only).
GradCheckResult grad_check(const RunConfig& cfg, int n_pairs, std::uint64_t seed);

struct EnergyAuditResult {
    bool ok = false;
    std::vector<double> dts;
    std::vector<double> residuals;     // |ledger residual| at t_end
    std::vector<double> rel_residuals; // relative to initial total energy
    double observed_order = 0.0;
    std::string table;
};

// Runs the config at step.dt, dt/2, dt/4 and fits the residual order.
EnergyAuditResult energy_audit(const RunConfig& cfg);

struct OracleCompareResult {
    bool ok = false;
    double phi_gap_l2 = 0.0;
    double u_gap_l2 = 0.0;
    double tolerance = 0.0;
    double oracle_ledger_residual = 0.0;
};

// Solver at cfg.step.dt vs Galerkin RK4 at oracle_dt on the same truncation.
// Requires the config dealias cutoff to equal oracle_modes.
OracleCompareResult oracle_compare(const RunConfig& cfg, double oracle_dt, double tolerance);

struct ContDepResult {
    bool degenerate = false; // delta == 0
    double input_gap_sq = 0.0;
    double output_gap_sq = 0.0;
    double ratio = 0.0; // output / input, the amplification factor
    // squared-gap scaling between the delta and 2*delta runs (4 if linear)
    double scaling = 0.0;
    std::vector<double> gap_t, gap_sq;
};

// Continuous-dependence experiment: base run vs runs from delta- and
// 2*delta-perturbed initial data; gap measured as
//   sup_t ||du||_H^2 + int ||du||_V^2 + sup_t ||dphi||_H2^2 + int ||dphi||_H5^2
// against the initial ||du0||_H^2 + ||dphi0||_H2^2.
ContDepResult cont_dep_experiment(const RunConfig& cfg, double delta, std::uint64_t seed);

struct MassAuditResult {
    bool ok = false;
    double max_mass_drift = 0.0;
    double max_divergence = 0.0;
    double max_mean_u = 0.0;
    long steps = 0;
};

// Per-step conservation audit: <phi> drift, spectral divergence, velocity
// mean. Thresholds 1e-12 / 1e-12 / 1e-13.
MassAuditResult mass_audit(const RunConfig& cfg);

} // namespace nspfc
