#include "nspfc/spectral.hpp"

#include <cmath>

#include "nspfc/errors.hpp"

namespace nspfc {

ScalarField apply_multiplier(const ScalarField& f, std::span<const double> table) {
    if (table.size() != f.size())
        throw ConfigError("apply_multiplier: field and table live on different grids");
    ScalarField out(f.grid_ptr());
    kernels::apply_table_to(out.spec(), f.spec(), table);
    out.backward();
    return out;
}

ScalarField dealias(const ScalarField& f) {
    ScalarField out(f.grid_ptr());
    kernels::apply_table_to(out.spec(), f.spec(), f.grid().mask());
    out.backward();
    return out;
}

VectorField dealias(const VectorField& v) {
    VectorField out(v.grid_ptr());
    for (int a = 0; a < v.dim(); ++a) {
        kernels::apply_table_to(out[a].spec(), v[a].spec(), v.grid().mask());
        out[a].backward();
    }
    return out;
}

ScalarField derivative(const ScalarField& f, int axis) {
    ScalarField out(f.grid_ptr());
    kernels::apply_ik(out.spec(), f.spec(), f.grid().kvec(axis));
    out.backward();
    return out;
}

VectorField gradient(const ScalarField& f) {
    VectorField out(f.grid_ptr());
    for (int a = 0; a < out.dim(); ++a) {
        kernels::apply_ik(out[a].spec(), f.spec(), f.grid().kvec(a));
        out[a].backward();
    }
    return out;
}

ScalarField divergence(const VectorField& v) {
    ScalarField out(v.grid_ptr());
    for (int a = 0; a < v.dim(); ++a)
        kernels::accumulate_ik(out.spec(), v[a].spec(), v.grid().kvec(a));
    out.backward();
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    ScalarField out(f.grid_ptr());
    const auto& k2 = f.grid().k2();
    const long n = static_cast<long>(f.size());
    auto in = f.spec();
    auto os = out.spec();
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        os[static_cast<std::size_t>(i)] = -k2[static_cast<std::size_t>(i)] * in[static_cast<std::size_t>(i)];
    out.backward();
    return out;
}

VectorField leray_project(const VectorField& v) {
    const Grid& g = v.grid();
    const int d = v.dim();
    VectorField out(v.grid_ptr());
    const auto& k2 = g.k2();
    const auto& nyq = g.nyquist();
    const long n = static_cast<long>(g.size());

#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        if (idx == 0 || nyq[idx] != 0.0) {
            for (int a = 0; a < d; ++a)
                out[a].spec()[idx] = cplx(0.0, 0.0);
            continue;
        }
        cplx kdotv(0.0, 0.0);
        for (int a = 0; a < d; ++a)
            kdotv += g.kvec(a)[idx] * v[a].spec()[idx];
        const double inv_k2 = 1.0 / k2[idx];
        for (int a = 0; a < d; ++a)
            out[a].spec()[idx] = v[a].spec()[idx] - g.kvec(a)[idx] * inv_k2 * kdotv;
    }
    out.backward();
    return out;
}

double max_spectral_divergence(const VectorField& v) {
    const Grid& g = v.grid();
    const std::size_t n = g.size();
    std::vector<double> div_abs(n, 0.0);
    const long total = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        cplx s(0.0, 0.0);
        for (int a = 0; a < v.dim(); ++a)
            s += g.kvec(a)[idx] * v[a].spec()[idx];
        div_abs[idx] = std::abs(s);
    }
    return kernels::block_max_abs(div_abs) / static_cast<double>(n);
}

double inner(const ScalarField& a, const ScalarField& b) {
    return kernels::block_dot(a.real(), b.real()) * a.grid().cell_volume();
}

double inner(const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (int c = 0; c < a.dim(); ++c)
        s += inner(a[c], b[c]);
    return s;
}

} // namespace nspfc
