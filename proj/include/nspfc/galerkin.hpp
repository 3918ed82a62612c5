#pragma once

// Faedo-Galerkin oracle: the coupled ODE system obtained by expanding (u, phi)
// in divergence-free / scalar trigonometric eigenfunctions with per-axis
// |mode| <= n_modes, with projected nonlinearities
//
//   u'   = P_Vn [ div(eta(phi) D u) - (u.grad)u - M phi grad(psi) ]
//   phi' = P_Phin [ -u.grad(phi) + div(m(phi) grad(psi)) ]
//   psi  = (Lap^2 + 2 Lap) phi + P_Phin f(phi),
//
// integrated by classical RK4 at small dt. This is the independent ground
// truth the IMEX solver is checked against: nonlinear terms are assembled in
// their literal (non-skew, non-conservative) forms by direct quadrature on a
// grid large enough that every projected product is alias-free, the
// truncation and projection loops are written here from the integer mode
// vectors, and everything runs single-threaded. Only the grid's transforms
// are shared with the production path.

#include <functional>

#include "nspfc/diagnostics.hpp"

namespace nspfc {

struct GalerkinSystem {
    GridPtr grid;
    int n_modes = 0;
    PhysParams params;
};

// Requires 1 <= n_modes <= 8 and an alias-safe quadrature grid:
// 4 * n_modes + 1 <= grid->n(). Throws ConfigError otherwise.
GalerkinSystem assemble(int n_modes, const PhysParams& params, GridPtr grid);

// (eq. of the initial data): box truncation of phi, truncation + Leray
// projection of u, both written from the integer modes.
State project_initial(const GalerkinSystem& sys, const State& data);

struct OracleResult {
    State final_state;
    long steps = 0;
    std::vector<LedgerRow> ledger;
};

// Classical RK4 on the truncated coefficients. dt <= 1e-5 is the intended
// oracle regime. Ledger rows are sampled every `stride` steps with the same
// diagnostics used for solver runs.
OracleResult integrate_rk4(const GalerkinSystem& sys, const State& initial, double dt,
                           double t_end, int stride = 1,
                           const PhysParams* ledger_params = nullptr);

// Generic RK4 step on a flat complex vector (exposed for order tests).
using OdeRhs = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;
void rk4_step(const OdeRhs& rhs, std::vector<cplx>& y, double dt);

} // namespace nspfc
