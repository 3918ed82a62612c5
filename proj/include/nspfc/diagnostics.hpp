#pragma once

// Measured counterparts of the analytical statements: the energy ledger
//
//   d/dt [ E_sh(phi) + ||u||^2/(2M) ]
//     + ||sqrt(eta(phi)) D u||^2 / M + ||sqrt(m(phi)) grad psi||^2 = 0,
//
// spectral Sobolev-norm monitors, and Poincare-inequality consistency checks.
// Dissipation integrals are accumulated by the trapezoidal rule at the
// sampling stride.

#include <cstdint>
#include <vector>

#include "nspfc/model.hpp"

namespace nspfc {

struct LedgerRow {
    double t = 0.0;
    double kinetic = 0.0;   // ||u||^2 / (2M)
    double sh = 0.0;        // E_sh(phi)
    double visc_diss = 0.0; // cumulative int ||sqrt(eta) D u||^2 / M dt
    double mob_diss = 0.0;  // cumulative int ||sqrt(m) grad psi||^2 dt
    double residual = 0.0;  // (kinetic + sh + dissipation) - initial energy
    double mass = 0.0;      // <phi>, from the zero coefficient
};

struct NormRow {
    double t = 0.0;
    double phi_h2 = 0.0;
    double phi_h3 = 0.0;
    double u_h = 0.0;  // L2 norm of u
    double u_v = 0.0;  // ||grad u||
    double psi_h1 = 0.0;
};

// Seminorm-plus-mean Sobolev norm: mean^2 |Q| + |Q|/N^2 sum |k|^(2s) |c_k|^2.
double sobolev_norm_sq(const ScalarField& f, int s);
double sobolev_norm_sq(const VectorField& v, int s);
// Full spectral H^s norm with weight sum_{j<=s} |k|^(2j) (used by the
// Poincare checks, where the mean-free structure matters).
double full_sobolev_norm_sq(const ScalarField& f, int s);

// Instantaneous dissipation rates (the two integrands of the identity).
double viscous_dissipation_rate(const State& state, const PhysParams& params);
double mobility_dissipation_rate(const State& state, const ScalarField& psi,
                                 const PhysParams& params);

class EnergyLedger {
  public:
    // First call fixes the reference energy; subsequent calls accumulate the
    // dissipation integrals trapezoidally between sample times.
    LedgerRow update(const State& state, const ScalarField& psi, const PhysParams& params);

    const std::vector<LedgerRow>& rows() const { return rows_; }

  private:
    bool first_ = true;
    double e0_ = 0.0;
    double prev_t_ = 0.0;
    double prev_visc_rate_ = 0.0;
    double prev_mob_rate_ = 0.0;
    double visc_acc_ = 0.0;
    double mob_acc_ = 0.0;
    std::vector<LedgerRow> rows_;
};

NormRow norm_monitor(const State& state, const ScalarField& psi);

struct PoincareCase {
    double lhs = 0.0;
    double rhs = 0.0; // c * (derivative norm); inequality asks lhs <= rhs
    double margin = 0.0;
};

struct PoincareReport {
    bool ok = false;
    // ||w - <w>||_L2 <= ||grad w|| / (2 pi / L) and the H1 / H2 versions with
    // their first-shell-optimal constants.
    double c_l2 = 0.0;
    double c_h1 = 0.0;
    double c_h2 = 0.0;
    double worst_margin_l2 = 0.0;
    double worst_margin_h1 = 0.0;
    double worst_margin_h2 = 0.0;
    std::vector<PoincareCase> cases;
};

PoincareReport poincare_checks(const GridPtr& grid, int n_fields, std::uint64_t seed);

} // namespace nspfc
