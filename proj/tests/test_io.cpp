// Config parsing, snapshot format, CSV determinism, and the CLI surface
// (exit codes, driven through the built binary).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "nspfc/errors.hpp"
#include "nspfc/experiments.hpp"
#include "nspfc/noise.hpp"
#include "nspfc/snapshot.hpp"

using namespace nspfc;
namespace fs = std::filesystem;

namespace {

std::string minimal_config_text() {
    return R"({
  "grid": {"dim": 2, "n": 16},
  "params": {"r": -0.5,
             "eta": {"kind": "constant", "value": 1.0},
             "mobility": {"kind": "constant", "value": 0.001}},
  "step": {"dt": 1e-4, "t_end": 0.001},
  "initial": {
    "phi": {"kind": "constant_plus_noise", "mean": 0.07, "amplitude": 0.01, "seed": 1, "cutoff": 4},
    "u": {"kind": "zero"}
  }
})";
}

fs::path temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("nspfc_test_" + tag);
    fs::create_directories(p);
    return p;
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NSPFC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("config parsing") {
    // minimal config parses with documented defaults
    RunConfig cfg = parse_config(minimal_config_text());
    CHECK(cfg.grid.box_length == 1.0);
    CHECK(cfg.grid.dealias_fraction == doctest::Approx(2.0 / 3.0));
    CHECK(cfg.params.M == 1.0);
    CHECK(cfg.step.stabilization_S == 2.0);
    CHECK(cfg.output.stride == 1);

    // dealias_fraction out of range names the bound
    try {
        auto bad = parse_config(R"({"grid": {"dim":2,"n":16,"dealias_fraction":1.5},
          "params": {"r":0,"eta":{"kind":"constant","value":1},"mobility":{"kind":"constant","value":1}},
          "step": {"dt":1e-4,"t_end":0},
          "initial": {"phi":{"kind":"single_mode","k_index":[1,0],"amplitude":0.1},"u":{"kind":"zero"}}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("dealias_fraction must lie in (0,1]") != std::string::npos);
    }

    // eta family with c0 = 0 is rejected citing the (A1) bound
    try {
        auto bad = parse_config(R"({"grid": {"dim":2,"n":16},
          "params": {"r":0,"eta":{"kind":"smooth_monotone","c0":0.0,"c1":1.0},
                     "mobility":{"kind":"constant","value":1}},
          "step": {"dt":1e-4,"t_end":0},
          "initial": {"phi":{"kind":"single_mode","k_index":[1,0],"amplitude":0.1},"u":{"kind":"zero"}}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("(A1)") != std::string::npos);
    }

    // unknown keys are rejected
    CHECK_THROWS_AS(parse_config(R"({"grid": {"dim":2,"n":16,"typo":3},
      "params": {"r":0,"eta":{"kind":"constant","value":1},"mobility":{"kind":"constant","value":1}},
      "step": {"dt":1e-4,"t_end":0},
      "initial": {"phi":{"kind":"single_mode","k_index":[1,0],"amplitude":0.1},"u":{"kind":"zero"}}})"),
                    ConfigError);

    // stochastic generators demand a seed
    CHECK_THROWS_AS(parse_config(R"({"grid": {"dim":2,"n":16},
      "params": {"r":0,"eta":{"kind":"constant","value":1},"mobility":{"kind":"constant","value":1}},
      "step": {"dt":1e-4,"t_end":0},
      "initial": {"phi":{"kind":"constant_plus_noise","mean":0,"amplitude":0.1,"cutoff":4},"u":{"kind":"zero"}}})"),
                    ConfigError);

    // round trip through serialize/parse is stable
    RunConfig back = parse_config(serialize_config(cfg));
    CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("snapshot round trip is byte-identical") {
    auto g = make_grid(GridSpec{2, 16, 1.0, 2.0 / 3.0});
    State s(g);
    s.phi = constant_plus_noise(g, 0.1, 0.5, 5, 42);
    s.u = random_solenoidal(g, 0.3, 5, 43);
    s.t = 0.375;

    const fs::path dir = temp_dir("snap");
    const fs::path p1 = dir / "a.snap", p2 = dir / "b.snap";
    write_snapshot(s, p1);
    State loaded = read_snapshot(p1, g);
    CHECK(loaded.t == 0.375);
    write_snapshot(loaded, p2);
    CHECK(slurp(p1) == slurp(p2));

    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(loaded.phi.real()[i] == s.phi.real()[i]);
}

TEST_CASE("snapshot error paths") {
    auto g = make_grid(GridSpec{2, 16, 1.0, 2.0 / 3.0});
    const fs::path dir = temp_dir("snap_err");

    // magic mismatch
    {
        std::ofstream out(dir / "bad.snap", std::ios::binary);
        out << "NOTASNAPSHOT....";
    }
    CHECK_THROWS_AS(read_snapshot(dir / "bad.snap", g), IoError);

    // truncation names expected vs actual byte counts
    State s(g);
    s.phi = constant_plus_noise(g, 0.0, 0.2, 4, 9);
    write_snapshot(s, dir / "full.snap");
    const auto bytes = slurp(dir / "full.snap");
    {
        std::ofstream out(dir / "cut.snap", std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
    }
    try {
        read_snapshot(dir / "cut.snap", g);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("expected") != std::string::npos);
        CHECK(msg.find(std::to_string(bytes.size())) != std::string::npos);
        CHECK(msg.find(std::to_string(bytes.size() / 2)) != std::string::npos);
    }

    // grid mismatch with the requesting config
    auto g32 = make_grid(GridSpec{2, 32, 1.0, 2.0 / 3.0});
    CHECK_THROWS_AS(read_snapshot(dir / "full.snap", g32), ConfigError);
}

TEST_CASE("oracle snapshots are loadable by the solver at matching n") {
    auto g = make_grid(GridSpec{2, 32, 1.0, 4.0 / 32.0});
    PhysParams p = make_params(1.0, -0.5, CoefficientFamily::constant(0.7),
                               CoefficientFamily::constant(3e-4));
    GalerkinSystem sys = assemble(4, p, g);
    State data(g);
    data.phi = constant_plus_noise(g, 0.05, 1e-3, 4, 8);
    OracleResult res = integrate_rk4(sys, data, 1e-6, 2e-4, 10);

    const fs::path dir = temp_dir("oracle_snap");
    write_snapshot(res.final_state, dir / "oracle.snap");
    State back = read_snapshot(dir / "oracle.snap", g);
    CHECK(back.t == res.final_state.t);
    ScalarField diff(g);
    for (std::size_t i = 0; i < g->size(); ++i)
        diff.real()[i] = back.phi.real()[i] - res.final_state.phi.real()[i];
    CHECK(diff.max_abs() == 0.0);
}

TEST_CASE("simulate: determinism and CSV schema") {
    RunConfig cfg = parse_config(minimal_config_text());
    cfg.output.directory = (temp_dir("sim") / "run1").string();
    SimulateResult r1 = simulate(cfg, true);
    cfg.output.directory = (temp_dir("sim") / "run2").string();
    SimulateResult r2 = simulate(cfg, true);

    CHECK(r1.csv == r2.csv);
    CHECK(r1.csv.substr(0, r1.csv.find('\n')) == csv_header());
    CHECK(slurp(r1.final_snapshot) == slurp(r2.final_snapshot));

    const fs::path ledger1 = fs::path(r1.final_snapshot).parent_path() / "ledger.csv";
    CHECK(fs::exists(ledger1));
    CHECK(slurp(ledger1) == std::vector<char>(r1.csv.begin(), r1.csv.end()));
}

TEST_CASE("cli: validate / simulate / exit codes") {
    const fs::path dir = temp_dir("cli");

    // shipped example config validates
    const fs::path shipped = fs::path(NSPFC_CONFIG_DIR) / "smoke2d.json";
    REQUIRE(fs::exists(shipped));
    CHECK(run_cli("validate " + shipped.string()) == 0);

    // t_end = 0: exit 0, CSV holds only the header row
    {
        RunConfig cfg = parse_config(minimal_config_text());
        cfg.step.t_end = 0.0;
        cfg.output.directory = (dir / "empty").string();
        std::ofstream out(dir / "empty.json");
        out << serialize_config(cfg);
    }
    CHECK(run_cli("simulate " + (dir / "empty.json").string()) == 0);
    {
        std::ifstream in(dir / "empty" / "ledger.csv");
        std::string line, rest;
        std::getline(in, line);
        CHECK(line == csv_header());
        CHECK_FALSE(static_cast<bool>(std::getline(in, rest)));
    }

    // invalid config: exit 1
    {
        std::ofstream out(dir / "bad.json");
        out << R"({"grid": {"dim": 2, "n": 12}})";
    }
    CHECK(run_cli("validate " + (dir / "bad.json").string()) == 1);
    CHECK(run_cli("simulate " + (dir / "bad.json").string()) == 1);

    // blow-up: exit 2
    {
        RunConfig cfg = parse_config(minimal_config_text());
        cfg.grid.n = 8;
        cfg.step.dt = 1e6;
        cfg.step.t_end = 1e9;
        cfg.step.max_steps = 100;
        cfg.phi0.amplitude = 10.0;
        cfg.phi0.cutoff = 2;
        cfg.output.directory = (dir / "blowup").string();
        std::ofstream out(dir / "blowup.json");
        out << serialize_config(cfg);
    }
    CHECK(run_cli("simulate " + (dir / "blowup.json").string()) == 2);

    // mass-audit on the shipped smoke config: exit 0
    CHECK(run_cli("mass-audit " + shipped.string()) == 0);
}

TEST_CASE("cli: experiment subcommands") {
    const fs::path dir = temp_dir("cli_exp");
    const fs::path cfgs = fs::path(NSPFC_CONFIG_DIR);

    // grad-check on the shipped config
    CHECK(run_cli("grad-check " + (cfgs / "gradcheck2d.json").string()) == 0);

    // energy-audit on a reduced copy of the shipped config (smaller grid and
    // horizon; the full version is the acceptance criterion)
    {
        RunConfig cfg = load_config((cfgs / "energy_audit2d.json").string());
        cfg.grid.n = 16;
        cfg.step.t_end = 0.02;
        std::ofstream out(dir / "audit_small.json");
        out << serialize_config(cfg);
    }
    CHECK(run_cli("energy-audit " + (dir / "audit_small.json").string()) == 0);

    // cont-dep scaling check, reduced copy
    {
        RunConfig cfg = load_config((cfgs / "contdep2d.json").string());
        cfg.grid.n = 16;
        cfg.step.t_end = 0.01;
        std::ofstream out(dir / "contdep_small.json");
        out << serialize_config(cfg);
    }
    CHECK(run_cli("cont-dep " + (dir / "contdep_small.json").string() + " --delta 1e-6") == 0);

    // oracle-compare, reduced horizon (full horizon is the acceptance run)
    {
        RunConfig cfg = load_config((cfgs / "oracle4.json").string());
        cfg.step.t_end = 0.01;
        std::ofstream out(dir / "oracle_small.json");
        out << serialize_config(cfg);
    }
    CHECK(run_cli("oracle-compare " + (dir / "oracle_small.json").string()) == 0);
}
