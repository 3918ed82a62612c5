#pragma once

// The coupled Navier-Stokes / phase-field-crystal model on the periodic box:
//
//   du/dt + (u.grad)u = div(eta(phi) D u) - M phi grad(psi)   (projected)
//   dphi/dt + div(u phi) = div(m(phi) grad(psi))
//   psi = Lap^2 phi + 2 Lap phi + f(phi),   f(s) = s^3 + (r+1) s
//
// with the free energy
//
//   E[phi] = int ( |Lap phi|^2/2 - |grad phi|^2 + phi^4/4 + (r+1) phi^2/2 ).
//
// Each nonlinear term is a separately testable operation. Nonlinear products
// are formed pointwise in real space and dealiased; spectral derivative
// multipliers are exact.

#include "nspfc/coefficients.hpp"
#include "nspfc/spectral.hpp"

namespace nspfc {

struct PhysParams {
    double M = 1.0; // Korteweg coupling, must be positive
    double r = -0.5;
    CoefficientFamily eta = CoefficientFamily::constant(1.0);
    CoefficientFamily mobility = CoefficientFamily::constant(1.0);
};

// Validates M > 0 and both coefficient families; throws ConfigError.
PhysParams make_params(double M, double r, CoefficientFamily eta, CoefficientFamily mobility);

struct State {
    VectorField u;
    ScalarField phi;
    double t = 0.0;

    explicit State(GridPtr grid) : u(grid), phi(std::move(grid)) {}
};

// f(phi) = phi^3 + (r+1) phi, evaluated pointwise and dealiased.
ScalarField f_eval(const ScalarField& phi, double r);

// Coefficient family sampled pointwise over a field's real view.
std::vector<double> eval_coefficient(const CoefficientFamily& fam, std::span<const double> phi);

// Bulk potential F(s) = s^4/4 + (r+1) s^2/2, the primitive of f.
double bulk_potential(double s, double r);

// psi = Lap^2 phi + 2 Lap phi + f(phi). Spectral linear part, dealiased f.
ScalarField chemical_potential(const ScalarField& phi, double r);

// Free energy: quadratic terms by Parseval, quartic term by real-space
// quadrature of the dealiased field.
double sh_energy(const ScalarField& phi, double r);

// -div(u phi) + div(m(phi) grad psi); the zero mode vanishes identically.
ScalarField rhs_phi(const State& state, const PhysParams& params);
ScalarField rhs_phi(const State& state, const ScalarField& psi, const PhysParams& params);

// P[ -skew advection + div(eta(phi) D u) - M phi grad psi ] with the
// skew-symmetric advection 0.5 [ (u.grad)u + div(u x u) ].
VectorField rhs_u(const State& state, const ScalarField& psi, const PhysParams& params);

// b0(u,v,w) = int (u.grad v).w, quadrature on the dealiased parts of the
// inputs (exact for in-mask fields on a power-of-two grid).
double trilinear_b0(const VectorField& u, const VectorField& v, const VectorField& w);

} // namespace nspfc
