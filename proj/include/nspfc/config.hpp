#pragma once

// JSON run configuration: grid + physics + stepping + initial conditions +
// output selection. Parsing is strict: unknown keys are rejected, coefficient
// families are validated, and stochastic generators require explicit seeds.

#include <cstdint>
#include <optional>
#include <string>

#include "nspfc/integrator.hpp"

namespace nspfc {

struct PhiInitial {
    enum class Kind { constant_plus_noise, single_mode, snapshot };
    Kind kind = Kind::constant_plus_noise;
    // constant_plus_noise
    double mean = 0.0;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
    int cutoff = 0;
    // single_mode
    std::array<int, 3> k_index = {1, 0, 0};
    double mode_amplitude = 0.0;
    // snapshot
    std::string path;
};

struct UInitial {
    enum class Kind { zero, random_solenoidal, snapshot };
    Kind kind = Kind::zero;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
    int cutoff = 0;
    std::string path;
};

struct OutputConfig {
    std::string directory = "out";
    int stride = 1;
    bool ledger = true;
    bool norms = true;
    bool snapshots = true;
};

struct RunConfig {
    GridSpec grid;
    PhysParams params;
    StepConfig step;
    PhiInitial phi0;
    UInitial u0;
    OutputConfig output;
    std::optional<int> oracle_modes; // used by oracle-compare
};

// Strict JSON parse + validation; throws ConfigError with the offending field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Builds the initial state: generators evaluated, fields dealiased, velocity
// Leray-projected, so the State invariants hold on entry to the solver.
State build_initial_state(const RunConfig& cfg, const GridPtr& grid);

} // namespace nspfc
