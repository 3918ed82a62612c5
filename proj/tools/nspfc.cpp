// nspfc command-line driver.
//
// Exit codes: 0 success, 1 validation failure, 2 runtime blow-up,
// 3 acceptance-check failure.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "nspfc/errors.hpp"
#include "nspfc/experiments.hpp"

using namespace nspfc;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_blowup = 2;
constexpr int exit_check_failed = 3;

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return exit_blowup;
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return exit_validation;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral Navier-Stokes / phase-field-crystal simulator"};
    app.require_subcommand(1);

    std::string config_path;
    double delta = 1e-6;
    double oracle_dt = 1e-6;
    double oracle_tol = 1e-6;

    auto* sim = app.add_subcommand("simulate", "run a configuration; writes ledger CSV and snapshots");
    sim->add_option("config", config_path, "JSON config file")->required();

    auto* val = app.add_subcommand("validate", "parse the config and run the (A1) validator only");
    val->add_option("config", config_path, "JSON config file")->required();

    auto* grad = app.add_subcommand("grad-check", "variational-derivative test report");
    grad->add_option("config", config_path, "JSON config file")->required();

    auto* audit = app.add_subcommand("energy-audit", "dt-sweep energy-identity residual table");
    audit->add_option("config", config_path, "JSON config file")->required();

    auto* oracle = app.add_subcommand("oracle-compare", "solver vs Faedo-Galerkin oracle diff");
    oracle->add_option("config", config_path, "JSON config file")->required();
    oracle->add_option("--oracle-dt", oracle_dt, "oracle RK4 step (default 1e-6)");
    oracle->add_option("--tolerance", oracle_tol, "L2 gap tolerance (default 1e-6)");

    auto* cont = app.add_subcommand("cont-dep", "continuous-dependence experiment");
    cont->add_option("config", config_path, "JSON config file")->required();
    cont->add_option("--delta", delta, "perturbation scale (default 1e-6)");

    auto* mass = app.add_subcommand("mass-audit", "per-step conservation audit");
    mass->add_option("config", config_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    if (val->parsed())
        return guarded([&] {
            RunConfig cfg = load_config(config_path);
            const A1Report eta = validate_a1(cfg.params.eta);
            const A1Report mob = validate_a1(cfg.params.mobility);
            std::cout << "config ok\n";
            std::cout << "eta:      value in [" << eta.min_value << ", " << eta.max_value
                      << "], slope in [" << eta.min_slope << ", " << eta.max_slope << "]\n";
            std::cout << "mobility: value in [" << mob.min_value << ", " << mob.max_value
                      << "], slope in [" << mob.min_slope << ", " << mob.max_slope << "]\n";
            return exit_ok;
        });

    if (sim->parsed())
        return guarded([&] {
            RunConfig cfg = load_config(config_path);
            SimulateResult res = simulate(cfg, true);
            std::cout << "steps: " << res.steps << "\nfinal t: " << res.final_t << "\noutput: "
                      << cfg.output.directory << "\n";
            return exit_ok;
        });

    if (grad->parsed())
        return guarded([&] {
            RunConfig cfg = load_config(config_path);
            GradCheckResult res = grad_check(cfg, 10, 20250810);
            std::cout << res.table;
            std::cout << "max relative error at eps=1e-4: " << res.max_rel_error_at_1e4 << "\n";
            std::cout << "min fitted order: " << res.min_fit_order << "\n";
            return res.ok ? exit_ok : exit_check_failed;
        });

    if (audit->parsed())
        return guarded([&] {
            RunConfig cfg = load_config(config_path);
            EnergyAuditResult res = energy_audit(cfg);
            std::cout << res.table;
            std::cout << "observed order: " << res.observed_order << "\n";
            return res.ok ? exit_ok : exit_check_failed;
        });

    if (oracle->parsed())
        return guarded([&] {
            RunConfig cfg = load_config(config_path);
            OracleCompareResult res = oracle_compare(cfg, oracle_dt, oracle_tol);
            std::cout << "phi L2 gap: " << res.phi_gap_l2 << "\n";
            std::cout << "u   L2 gap: " << res.u_gap_l2 << "\n";
            std::cout << "oracle ledger residual: " << res.oracle_ledger_residual << "\n";
            return res.ok ? exit_ok : exit_check_failed;
        });

    if (cont->parsed())
        return guarded([&] {
            RunConfig cfg = load_config(config_path);
            ContDepResult res = cont_dep_experiment(cfg, delta, 20250810);
            if (res.degenerate) {
                std::cout << "delta = 0: identical trajectories, ratio degenerate (0/0)\n";
                return exit_ok;
            }
            std::cout << "input gap^2:  " << res.input_gap_sq << "\n";
            std::cout << "output gap^2: " << res.output_gap_sq << "\n";
            std::cout << "amplification ratio: " << res.ratio << "\n";
            std::cout << "2x-delta squared-gap scaling: " << res.scaling << " (4 if linear)\n";
            const bool ok = std::isfinite(res.ratio) && std::abs(res.scaling - 4.0) <= 0.4;
            return ok ? exit_ok : exit_check_failed;
        });

    if (mass->parsed())
        return guarded([&] {
            RunConfig cfg = load_config(config_path);
            MassAuditResult res = mass_audit(cfg);
            std::cout << "steps: " << res.steps << "\n";
            std::cout << "max <phi> drift:   " << res.max_mass_drift << "\n";
            std::cout << "max spectral div:  " << res.max_divergence << "\n";
            std::cout << "max |<u>|:         " << res.max_mean_u << "\n";
            return res.ok ? exit_ok : exit_check_failed;
        });

    return exit_validation;
}
