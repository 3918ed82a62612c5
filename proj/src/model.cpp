#include "nspfc/model.hpp"

#include <cmath>

#include "nspfc/errors.hpp"

namespace nspfc {

PhysParams make_params(double M, double r, CoefficientFamily eta, CoefficientFamily mobility) {
    if (!(M > 0.0))
        throw ConfigError("params.M must be positive");
    require_a1(eta, "params.eta");
    require_a1(mobility, "params.mobility");
    PhysParams p;
    p.M = M;
    p.r = r;
    p.eta = eta;
    p.mobility = mobility;
    return p;
}

ScalarField f_eval(const ScalarField& phi, double r) {
    ScalarField out(phi.grid_ptr());
    kernels::cubic_plus_linear(out.real(), phi.real(), r);
    out.forward();
    kernels::apply_table(out.spec(), phi.grid().mask());
    out.backward();
    return out;
}

double bulk_potential(double s, double r) {
    return 0.25 * s * s * s * s + 0.5 * (r + 1.0) * s * s;
}

std::vector<double> eval_coefficient(const CoefficientFamily& fam, std::span<const double> phi) {
    std::vector<double> out(phi.size());
    if (fam.kind == CoefficientFamily::Kind::constant) {
        kernels::fill(out, fam.value);
        return out;
    }
    const long n = static_cast<long>(phi.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = fam(phi[static_cast<std::size_t>(i)]);
    return out;
}

ScalarField chemical_potential(const ScalarField& phi, double r) {
    ScalarField psi = f_eval(phi, r);
    // add (|k|^4 - 2 |k|^2) phi_hat, the symbol of Lap^2 + 2 Lap
    const auto& k2 = phi.grid().k2();
    const auto& k4 = phi.grid().k4();
    auto ps = psi.spec();
    auto fs = phi.spec();
    const long n = static_cast<long>(phi.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        ps[j] += (k4[j] - 2.0 * k2[j]) * fs[j];
    }
    psi.backward();
    return psi;
}

double sh_energy(const ScalarField& phi, double r) {
    const Grid& g = phi.grid();
    const double n = static_cast<double>(phi.size());
    const double parseval = g.volume() / (n * n);

    // quadratic terms spectrally: sum (|k|^4/2 - |k|^2 + (r+1)/2) |phi_k|^2
    std::vector<double> w(phi.size());
    const auto& k2 = g.k2();
    const auto& k4 = g.k4();
    const long total = static_cast<long>(phi.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        w[j] = 0.5 * k4[j] - k2[j] + 0.5 * (r + 1.0);
    }
    const double quad = kernels::block_weighted_norm2(phi.spec(), w) * parseval;

    // quartic term by real-space quadrature on the dealiased field
    ScalarField pd = dealias(phi);
    std::vector<double> p2(phi.size());
    kernels::multiply(p2, pd.real(), pd.real());
    const double quart = 0.25 * kernels::block_dot(p2, p2) * g.cell_volume();

    return quad + quart;
}

ScalarField rhs_phi(const State& state, const PhysParams& params) {
    ScalarField psi = chemical_potential(state.phi, params.r);
    return rhs_phi(state, psi, params);
}

ScalarField rhs_phi(const State& state, const ScalarField& psi, const PhysParams& params) {
    const GridPtr grid = state.phi.grid_ptr();
    const Grid& g = *grid;
    const int d = g.dim();

    VectorField grad_psi = gradient(psi);
    std::vector<double> mob = eval_coefficient(params.mobility, state.phi.real());

    ScalarField out(grid);
    std::vector<double> flux(g.size());
    ScalarField flux_field(grid);
    for (int a = 0; a < d; ++a) {
        // flux_a = m(phi) dpsi/dx_a - u_a phi
        kernels::multiply(flux, mob, grad_psi[a].real());
        std::vector<double> adv(g.size());
        kernels::multiply(adv, state.u[a].real(), state.phi.real());
        kernels::axpy(flux, -1.0, adv);
        std::copy(flux.begin(), flux.end(), flux_field.real().begin());
        flux_field.forward();
        kernels::apply_table(flux_field.spec(), g.mask());
        kernels::accumulate_ik(out.spec(), flux_field.spec(), g.kvec(a));
    }
    // divergence form: the zero mode is exactly zero by construction
    out.spec()[0] = cplx(0.0, 0.0);
    out.backward();
    return out;
}

VectorField rhs_u(const State& state, const ScalarField& psi, const PhysParams& params) {
    const GridPtr grid = state.phi.grid_ptr();
    const Grid& g = *grid;
    const int d = g.dim();
    const std::size_t n = g.size();

    std::vector<double> eta = eval_coefficient(params.eta, state.phi.real());

    // velocity gradients du_a/dx_b
    std::vector<std::vector<double>> du(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            ScalarField dab = derivative(state.u[a], b);
            du[static_cast<std::size_t>(a * d + b)].assign(dab.real().begin(), dab.real().end());
        }

    VectorField psi_grad = gradient(psi);

    VectorField out(grid);
    ScalarField work(grid);
    std::vector<double> accum(n), tmp(n);
    for (int a = 0; a < d; ++a) {
        // skew advection: 0.5 (u.grad)u_a  pointwise...
        kernels::fill(accum, 0.0);
        for (int b = 0; b < d; ++b) {
            kernels::multiply(tmp, state.u[b].real(), du[static_cast<std::size_t>(a * d + b)]);
            kernels::axpy(accum, -0.5, tmp);
        }
        // ... minus M phi dpsi/dx_a
        kernels::multiply(tmp, state.phi.real(), psi_grad[a].real());
        kernels::axpy(accum, -params.M, tmp);
        std::copy(accum.begin(), accum.end(), work.real().begin());
        work.forward();
        kernels::apply_table(work.spec(), g.mask());
        std::copy(work.spec().begin(), work.spec().end(), out[a].spec().begin());

        // ... plus spectral divergences of -0.5 u_b u_a (skew half) and of
        // eta D(u)_{ab}
        for (int b = 0; b < d; ++b) {
            kernels::multiply(tmp, state.u[b].real(), state.u[a].real());
            const std::size_t ab = static_cast<std::size_t>(a * d + b);
            const std::size_t ba = static_cast<std::size_t>(b * d + a);
            const long total = static_cast<long>(n);
#pragma omp parallel for schedule(static)
            for (long i = 0; i < total; ++i) {
                const std::size_t j = static_cast<std::size_t>(i);
                const double dsym = 0.5 * (du[ab][j] + du[ba][j]);
                tmp[j] = eta[j] * dsym - 0.5 * tmp[j];
            }
            std::copy(tmp.begin(), tmp.end(), work.real().begin());
            work.forward();
            kernels::apply_table(work.spec(), g.mask());
            kernels::accumulate_ik(out[a].spec(), work.spec(), g.kvec(b));
        }
    }
    out.backward();
    return leray_project(out);
}

double trilinear_b0(const VectorField& u, const VectorField& v, const VectorField& w) {
    if (u.grid_ptr().get() != v.grid_ptr().get() || v.grid_ptr().get() != w.grid_ptr().get())
        throw ConfigError("trilinear_b0: fields must share a grid");
    const int d = u.dim();
    VectorField ud = dealias(u);
    VectorField vd = dealias(v);
    VectorField wd = dealias(w);

    const std::size_t n = u.grid().size();
    std::vector<double> integrand(n, 0.0), tmp(n);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            ScalarField dv = derivative(vd[i], j);
            kernels::multiply3(tmp, ud[j].real(), dv.real(), wd[i].real());
            kernels::axpy(integrand, 1.0, tmp);
        }
    }
    return kernels::block_sum(integrand) * u.grid().cell_volume();
}

} // namespace nspfc
