#pragma once

// Spectral-space operators on fields: multiplier application, dealiasing,
// differential operators, and the Leray projection onto divergence-free
// zero-mean vector fields.
//
// All functions return fields with BOTH views consistent and require
// consistent views on input unless noted otherwise.

#include "nspfc/field.hpp"

namespace nspfc {

// out_spec = table * in_spec. Exact spectral differentiation for the k-tables
// of the shared grid; throws ConfigError if field and table sizes mismatch.
ScalarField apply_multiplier(const ScalarField& f, std::span<const double> table);

// Zeroes every coefficient outside the grid's dealias mask.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

// d/dx_axis via the Nyquist-zeroed first-derivative table.
ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);

// Projection (I - k k^T/|k|^2) per nonzero wavenumber; the k=0 mode and every
// mode with a Nyquist component are zeroed (the latter carry no usable
// direction information and would break realness under asymmetric handling).
VectorField leray_project(const VectorField& v);

// max_k |k . u_hat(k)| / N  -- spectral divergence in physical units.
double max_spectral_divergence(const VectorField& v);

// L2(Q) inner product by real-space quadrature.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);

} // namespace nspfc
