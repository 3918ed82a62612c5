#pragma once

// First-order stabilized IMEX stepping.
//
// Both updates share one pattern: evaluate the full nonlinear right-hand side
// G at time level n and relax the increment per spectral mode,
//
//   q^{n+1} = q^n + dt * G_hat(q^n) / (1 + dt * a(k)),
//
// which is algebraically the implicit-in-the-stiff-part scheme
//   (I + dt A) q^{n+1} = q^n + dt [ G(q^n) + A q^n ].
//
// For phi:  a(k) = m_bar * max(|k|^6 - 2|k|^4, 0) + S |k|^2, with m_bar the
//           minimum of m over the current phi range and S the stabilization
//           shift compensating the explicitly treated antidiffusive terms.
// For u:    a(k) = (eta_bar / 2) |k|^2 + kappa.
//
// The zero mode of rhs_phi vanishes identically and a(0) acts trivially, so
// <phi> is conserved bit-exactly. The velocity is re-projected every step.

#include <functional>

#include "nspfc/diagnostics.hpp"

namespace nspfc {

struct StepConfig {
    double dt = 1e-4;
    double stabilization_S = 2.0;     // shift for the phi update
    double stabilization_kappa = 0.0; // zeroth-order shift for the u update
    long max_steps = 1000000;
    double t_end = 0.0;
    bool freeze_velocity = false; // gradient-flow mode: skip the u update
};

void validate(const StepConfig& cfg);

State step_imex(const State& state, const PhysParams& params, const StepConfig& cfg);

struct ProbeReport {
    double advective = 0.0;      // dx / max |u| contributions
    double mobility_split = 0.0; // explicit (m - m_bar) remainder of the Lap^3 term
    double viscous_split = 0.0;  // explicit (eta - eta_bar) remainder
    double potential_term = 0.0; // explicit m_bar Lap f(phi) plus antidiffusive shell
    double suggested = 0.0;      // safety * min of the bounds
};

// Advisory explicit-term dt bound estimated from the current state.
ProbeReport stability_probe(const State& state, const PhysParams& params);

struct TrajectoryRecord {
    State final_state;
    long steps_taken = 0;
    std::vector<LedgerRow> ledger;
    std::vector<NormRow> norms;
};

// Called every `stride` steps (and at step 0 and the final step).
using SampleSink = std::function<void(const State&, const LedgerRow&, const NormRow&)>;

// Advances until t_end or max_steps, sampling diagnostics at the stride.
// Throws BlowUpError with the offending step index on non-finite values.
TrajectoryRecord run(const State& initial, const PhysParams& params, const StepConfig& cfg,
                     int stride = 1, const SampleSink& sink = {});

} // namespace nspfc
