// OpenMP versions of the inner loops. Arithmetic must stay in lockstep with
// kernels_ref.cpp: the reduction kernels sum fixed-size blocks and then fold
// the block partials in index order, which keeps the result independent of
// the thread count.

#include "nspfc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nspfc::kernels {

void fill(std::span<double> y, double v) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] = v;
}

void multiply(std::span<double> y, std::span<const double> a, std::span<const double> b) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] = a[i] * b[i];
}

void multiply3(std::span<double> y, std::span<const double> a, std::span<const double> b,
               std::span<const double> c) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] = a[i] * b[i] * c[i];
}

void axpy(std::span<double> y, double alpha, std::span<const double> x) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] += alpha * x[i];
}

void cubic_plus_linear(std::span<double> y, std::span<const double> x, double r) {
    const long n = static_cast<long>(y.size());
    const double lin = r + 1.0;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] = x[i] * x[i] * x[i] + lin * x[i];
}

void apply_table(std::span<cplx> c, std::span<const double> t) {
    const long n = static_cast<long>(c.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        c[i] *= t[i];
}

void apply_table_to(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] = x[i] * t[i];
}

void apply_ik(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] = cplx(-t[i] * x[i].imag(), t[i] * x[i].real());
}

void accumulate_ik(std::span<cplx> y, std::span<const cplx> x, std::span<const double> t) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] += cplx(-t[i] * x[i].imag(), t[i] * x[i].real());
}

void relaxed_increment(std::span<cplx> y, std::span<const cplx> x, std::span<const cplx> g,
                       std::span<const double> a, double dt) {
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[i] = x[i] + g[i] * (dt / (1.0 + dt * a[i]));
}

namespace {

inline std::size_t block_count(std::size_t n) { return (n + reduce_block - 1) / reduce_block; }

} // namespace

double block_sum(std::span<const double> x) {
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        const std::size_t hi = std::min(x.size(), lo + reduce_block);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += x[i];
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

double block_dot(std::span<const double> x, std::span<const double> y) {
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        const std::size_t hi = std::min(x.size(), lo + reduce_block);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += x[i] * y[i];
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

double block_weighted_norm2(std::span<const cplx> c, std::span<const double> w) {
    const std::size_t nb = block_count(c.size());
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        const std::size_t hi = std::min(c.size(), lo + reduce_block);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

double block_norm2(std::span<const cplx> c) {
    const std::size_t nb = block_count(c.size());
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        const std::size_t hi = std::min(c.size(), lo + reduce_block);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += c[i].real() * c[i].real() + c[i].imag() * c[i].imag();
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

double block_max_abs(std::span<const double> x) {
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        const std::size_t hi = std::min(x.size(), lo + reduce_block);
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            m = std::max(m, std::abs(x[i]));
        partial[static_cast<std::size_t>(b)] = m;
    }
    double total = 0.0;
    for (double p : partial)
        total = std::max(total, p);
    return total;
}

double block_min(std::span<const double> x) {
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb, x.empty() ? 0.0 : x[0]);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        const std::size_t hi = std::min(x.size(), lo + reduce_block);
        double m = x[lo];
        for (std::size_t i = lo; i < hi; ++i)
            m = std::min(m, x[i]);
        partial[static_cast<std::size_t>(b)] = m;
    }
    double total = partial.empty() ? 0.0 : partial[0];
    for (double p : partial)
        total = std::min(total, p);
    return total;
}

double block_max(std::span<const double> x) {
    const std::size_t nb = block_count(x.size());
    std::vector<double> partial(nb, x.empty() ? 0.0 : x[0]);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        const std::size_t hi = std::min(x.size(), lo + reduce_block);
        double m = x[lo];
        for (std::size_t i = lo; i < hi; ++i)
            m = std::max(m, x[i]);
        partial[static_cast<std::size_t>(b)] = m;
    }
    double total = partial.empty() ? 0.0 : partial[0];
    for (double p : partial)
        total = std::max(total, p);
    return total;
}

bool all_finite(std::span<const double> x) {
    const long n = static_cast<long>(x.size());
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long i = 0; i < n; ++i)
        ok = ok && std::isfinite(x[i]);
    return ok;
}

} // namespace nspfc::kernels
