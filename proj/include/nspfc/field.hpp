#pragma once

// ScalarField / VectorField: real-space samples plus spectral coefficients on
// a shared Grid. The two views are synchronised only by explicit forward() /
// backward() calls; operations document which view they read and write.

#include <span>
#include <vector>

#include "nspfc/grid.hpp"

namespace nspfc {

class ScalarField {
  public:
    explicit ScalarField(GridPtr grid);

    const Grid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    std::size_t size() const { return real_.size(); }

    std::span<double> real() { return real_; }
    std::span<const double> real() const { return real_; }
    std::span<cplx> spec() { return spec_; }
    std::span<const cplx> spec() const { return spec_; }

    void forward();  // real -> spec
    void backward(); // spec -> real

    // Mean from the real-space samples (deterministic blocked sum).
    double mean() const;
    // Mean from the zero-wavenumber coefficient; equals mean() to roundoff
    // whenever the two views are consistent.
    double spectral_mean() const;

    // L2(Q) norms: quadrature of the samples vs Parseval on the coefficients.
    double l2_norm() const;
    double spectral_l2_norm() const;

    double max_abs() const;
    bool finite() const;

  private:
    GridPtr grid_;
    std::vector<double> real_;
    std::vector<cplx> spec_;
    mutable std::vector<cplx> work_;
};

class VectorField {
  public:
    VectorField(GridPtr grid);

    const Grid& grid() const { return comps_[0].grid(); }
    GridPtr grid_ptr() const { return comps_[0].grid_ptr(); }
    int dim() const { return static_cast<int>(comps_.size()); }

    ScalarField& operator[](int a) { return comps_[static_cast<std::size_t>(a)]; }
    const ScalarField& operator[](int a) const { return comps_[static_cast<std::size_t>(a)]; }

    void forward();
    void backward();

    double l2_norm() const; // sqrt(sum of component L2 norms squared)
    bool finite() const;

  private:
    std::vector<ScalarField> comps_;
};

} // namespace nspfc
