#include "nspfc/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "nspfc/noise.hpp"

namespace nspfc {

namespace {

double spectral_weighted_sum(const ScalarField& f, std::span<const double> w) {
    const double n = static_cast<double>(f.size());
    return kernels::block_weighted_norm2(f.spec(), w) * f.grid().volume() / (n * n);
}

} // namespace

double sobolev_norm_sq(const ScalarField& f, int s) {
    const Grid& g = f.grid();
    std::vector<double> w(f.size());
    const auto& k2 = g.k2();
    const long total = static_cast<long>(f.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        w[j] = j == 0 ? 0.0 : std::pow(k2[j], s);
    }
    const double mean = f.spectral_mean();
    return mean * mean * g.volume() + spectral_weighted_sum(f, w);
}

double sobolev_norm_sq(const VectorField& v, int s) {
    double total = 0.0;
    for (int a = 0; a < v.dim(); ++a)
        total += sobolev_norm_sq(v[a], s);
    return total;
}

double full_sobolev_norm_sq(const ScalarField& f, int s) {
    const Grid& g = f.grid();
    std::vector<double> w(f.size());
    const auto& k2 = g.k2();
    const long total = static_cast<long>(f.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        double acc = 1.0, pw = 1.0;
        for (int p = 1; p <= s; ++p) {
            pw *= k2[j];
            acc += pw;
        }
        w[j] = acc;
    }
    return spectral_weighted_sum(f, w);
}

double viscous_dissipation_rate(const State& state, const PhysParams& params) {
    const Grid& g = state.phi.grid();
    const int d = g.dim();
    const std::size_t n = g.size();
    std::vector<double> eta = eval_coefficient(params.eta, state.phi.real());

    std::vector<std::vector<double>> du(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            ScalarField dab = derivative(state.u[a], b);
            du[static_cast<std::size_t>(a * d + b)].assign(dab.real().begin(), dab.real().end());
        }

    std::vector<double> integrand(n, 0.0);
    const long total = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        double s = 0.0;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const double dsym = 0.5 * (du[static_cast<std::size_t>(a * d + b)][j] +
                                           du[static_cast<std::size_t>(b * d + a)][j]);
                s += dsym * dsym;
            }
        integrand[j] = eta[j] * s;
    }
    return kernels::block_sum(integrand) * g.cell_volume() / params.M;
}

double mobility_dissipation_rate(const State& state, const ScalarField& psi,
                                 const PhysParams& params) {
    const Grid& g = state.phi.grid();
    std::vector<double> mob = eval_coefficient(params.mobility, state.phi.real());
    VectorField grad_psi = gradient(psi);
    std::vector<double> integrand(g.size(), 0.0), tmp(g.size());
    for (int a = 0; a < g.dim(); ++a) {
        kernels::multiply3(tmp, mob, grad_psi[a].real(), grad_psi[a].real());
        kernels::axpy(integrand, 1.0, tmp);
    }
    return kernels::block_sum(integrand) * g.cell_volume();
}

LedgerRow EnergyLedger::update(const State& state, const ScalarField& psi,
                               const PhysParams& params) {
    LedgerRow row;
    row.t = state.t;
    const double unorm = state.u.l2_norm();
    row.kinetic = unorm * unorm / (2.0 * params.M);
    row.sh = sh_energy(state.phi, params.r);
    row.mass = state.phi.spectral_mean();

    const double visc_rate = viscous_dissipation_rate(state, params);
    const double mob_rate = mobility_dissipation_rate(state, psi, params);

    if (first_) {
        first_ = false;
        e0_ = row.kinetic + row.sh;
    } else {
        const double dt = state.t - prev_t_;
        visc_acc_ += 0.5 * dt * (prev_visc_rate_ + visc_rate);
        mob_acc_ += 0.5 * dt * (prev_mob_rate_ + mob_rate);
    }
    prev_t_ = state.t;
    prev_visc_rate_ = visc_rate;
    prev_mob_rate_ = mob_rate;

    row.visc_diss = visc_acc_;
    row.mob_diss = mob_acc_;
    row.residual = (row.kinetic + row.sh + visc_acc_ + mob_acc_) - e0_;
    rows_.push_back(row);
    return row;
}

NormRow norm_monitor(const State& state, const ScalarField& psi) {
    NormRow row;
    row.t = state.t;
    row.phi_h2 = std::sqrt(sobolev_norm_sq(state.phi, 2));
    row.phi_h3 = std::sqrt(sobolev_norm_sq(state.phi, 3));
    row.u_h = state.u.l2_norm();
    row.u_v = std::sqrt(sobolev_norm_sq(state.u, 1) );
    row.psi_h1 = std::sqrt(sobolev_norm_sq(psi, 1));
    return row;
}

PoincareReport poincare_checks(const GridPtr& grid, int n_fields, std::uint64_t seed) {
    PoincareReport rep;
    const double kmin = 2.0 * std::numbers::pi / grid->box_length();
    const double k2 = kmin * kmin;
    // first-shell-optimal constants: (1 + k^2 + ...)/k^(2s) is decreasing in
    // |k|, so the supremum over grid modes sits on the first shell
    rep.c_l2 = 1.0 / kmin;
    rep.c_h1 = std::sqrt(1.0 + k2) / kmin;
    rep.c_h2 = std::sqrt(1.0 + k2 + k2 * k2) / k2;

    rep.worst_margin_l2 = rep.worst_margin_h1 = rep.worst_margin_h2 = 1e300;
    rep.ok = true;
    const int cutoff = std::min(grid->mask_cutoff(), 6);
    for (int i = 0; i < n_fields; ++i) {
        ScalarField w = random_smooth_field(grid, 1.0, cutoff,
                                            seed + static_cast<std::uint64_t>(i));
        // w is mean-free by construction
        const double grad = std::sqrt(sobolev_norm_sq(w, 1));
        const double l2 = w.spectral_l2_norm();
        const double h1 = std::sqrt(full_sobolev_norm_sq(w, 1));
        const double h2 = std::sqrt(full_sobolev_norm_sq(w, 2));
        const double lap_norm = std::sqrt(sobolev_norm_sq(w, 2));

        PoincareCase c_l2{l2, rep.c_l2 * grad, rep.c_l2 * grad - l2};
        PoincareCase c_h1{h1, rep.c_h1 * grad, rep.c_h1 * grad - h1};
        PoincareCase c_h2{h2, rep.c_h2 * lap_norm, rep.c_h2 * lap_norm - h2};
        rep.cases.push_back(c_l2);
        rep.cases.push_back(c_h1);
        rep.cases.push_back(c_h2);
        rep.worst_margin_l2 = std::min(rep.worst_margin_l2, c_l2.margin);
        rep.worst_margin_h1 = std::min(rep.worst_margin_h1, c_h1.margin);
        rep.worst_margin_h2 = std::min(rep.worst_margin_h2, c_h2.margin);
        const double tol = -1e-12 * (1.0 + c_h2.rhs);
        if (c_l2.margin < tol || c_h1.margin < tol || c_h2.margin < tol)
            rep.ok = false;
    }
    return rep;
}

} // namespace nspfc
