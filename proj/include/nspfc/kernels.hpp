#pragma once

// Data-parallel inner loops shared by the field and spectral operations.
//
// Every kernel has an OpenMP version (namespace nspfc::kernels) and a plain
// serial version (namespace nspfc::kernels::ref) with identical arithmetic.
// Reductions are computed over fixed 4096-element blocks whose partial sums
// are accumulated in block order, so results are bit-identical regardless of
// thread count. tests/test_kernels.cpp asserts omp == ref bit for bit and
// tools/bench_kernels compares their throughput.

#include <complex>
#include <cstddef>
#include <span>

namespace nspfc::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t reduce_block = 4096;

// y[i] = v
void fill(std::span<double> y, double v);

// y[i] = a[i] * b[i]
void multiply(std::span<double> y, std::span<const double> a, std::span<const double> b);

// y[i] = a[i] * b[i] * c[i]
void multiply3(std::span<double> y, std::span<const double> a, std::span<const double> b,
               std::span<const double> c);

// y[i] += alpha * x[i]
void axpy(std::span<double> y, double alpha, std::span<const double> x);

// y[i] = x[i]^3 + (r + 1) x[i]   (the cubic nonlinearity)
void cubic_plus_linear(std::span<double> y, std::span<const double> x, double r);

// c[i] *= t[i]   (real multiplier table applied to spectral coefficients)
void apply_table(std::span<cplx> c, std::span<const double> t);

// y[i] = x[i] * t[i]
void apply_table_to(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t);

// y[i] = i * t[i] * x[i]   (first-derivative multiplier, t holds k components)
void apply_ik(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t);

// y[i] += i * t[i] * x[i]
void accumulate_ik(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t);

// y[i] = (x[i] + dt * g[i]) normalised per-mode: y = x + dt * g / (1 + dt * a[i])
void relaxed_increment(std::span<cplx> y, std::span<const cplx> x, std::span<const cplx> g,
                       std::span<const double> a, double dt);

// Deterministic blocked reductions.
double block_sum(std::span<const double> x);
double block_dot(std::span<const double> x, std::span<const double> y);
// sum_i w[i] * |c[i]|^2
double block_weighted_norm2(std::span<const cplx> c, std::span<const double> w);
// sum_i |c[i]|^2
double block_norm2(std::span<const cplx> c);
double block_max_abs(std::span<const double> x);
double block_min(std::span<const double> x);
double block_max(std::span<const double> x);
bool all_finite(std::span<const double> x);

namespace ref {
void fill(std::span<double> y, double v);
void multiply(std::span<double> y, std::span<const double> a, std::span<const double> b);
void multiply3(std::span<double> y, std::span<const double> a, std::span<const double> b,
               std::span<const double> c);
void axpy(std::span<double> y, double alpha, std::span<const double> x);
void cubic_plus_linear(std::span<double> y, std::span<const double> x, double r);
void apply_table(std::span<cplx> c, std::span<const double> t);
void apply_table_to(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t);
void apply_ik(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t);
void accumulate_ik(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t);
void relaxed_increment(std::span<cplx> y, std::span<const cplx> x, std::span<const cplx> g,
                       std::span<const double> a, double dt);
double block_sum(std::span<const double> x);
double block_dot(std::span<const double> x, std::span<const double> y);
double block_weighted_norm2(std::span<const cplx> c, std::span<const double> w);
double block_norm2(std::span<const cplx> c);
double block_max_abs(std::span<const double> x);
double block_min(std::span<const double> x);
double block_max(std::span<const double> x);
bool all_finite(std::span<const double> x);
} // namespace ref

} // namespace nspfc::kernels
