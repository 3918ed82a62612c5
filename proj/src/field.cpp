#include "nspfc/field.hpp"

#include <cmath>

namespace nspfc {

ScalarField::ScalarField(GridPtr grid)
    : grid_(std::move(grid)),
      real_(grid_->size(), 0.0),
      spec_(grid_->size(), cplx(0.0, 0.0)),
      work_(grid_->size()) {}

void ScalarField::forward() { grid_->forward(real_, spec_, work_); }

void ScalarField::backward() { grid_->backward(spec_, real_, work_); }

double ScalarField::mean() const {
    return kernels::block_sum(real_) / static_cast<double>(size());
}

double ScalarField::spectral_mean() const {
    return spec_[0].real() / static_cast<double>(size());
}

double ScalarField::l2_norm() const {
    const double s = kernels::block_dot(real_, real_);
    return std::sqrt(s * grid_->cell_volume());
}

double ScalarField::spectral_l2_norm() const {
    // Parseval with the unnormalised forward transform: |Q|/N^2 sum |c_k|^2.
    const double s = kernels::block_norm2(spec_);
    const double n = static_cast<double>(size());
    return std::sqrt(s * grid_->volume() / (n * n));
}

double ScalarField::max_abs() const { return kernels::block_max_abs(real_); }

bool ScalarField::finite() const { return kernels::all_finite(real_); }

VectorField::VectorField(GridPtr grid) {
    const int d = grid->dim();
    comps_.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
        comps_.emplace_back(grid);
}

void VectorField::forward() {
    for (auto& c : comps_)
        c.forward();
}

void VectorField::backward() {
    for (auto& c : comps_)
        c.backward();
}

double VectorField::l2_norm() const {
    double s = 0.0;
    for (const auto& c : comps_) {
        const double v = c.l2_norm();
        s += v * v;
    }
    return std::sqrt(s);
}

bool VectorField::finite() const {
    for (const auto& c : comps_)
        if (!c.finite())
            return false;
    return true;
}

} // namespace nspfc
