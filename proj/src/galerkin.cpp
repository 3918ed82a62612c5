#include "nspfc/galerkin.hpp"

#include <cmath>
#include <numbers>

#include "nspfc/errors.hpp"

namespace nspfc {

GalerkinSystem assemble(int n_modes, const PhysParams& params, GridPtr grid) {
    if (n_modes < 1 || n_modes > 8)
        throw ConfigError("galerkin n_modes must lie in [1, 8]");
    if (4 * n_modes + 1 > grid->n())
        throw ConfigError("galerkin quadrature grid too small: need n >= 4*n_modes + 1 (got n=" +
                          std::to_string(grid->n()) + ", n_modes=" + std::to_string(n_modes) + ")");
    GalerkinSystem sys;
    sys.grid = std::move(grid);
    sys.n_modes = n_modes;
    sys.params = params;
    return sys;
}

namespace {

// Everything below is single-threaded on purpose: the oracle trades speed for
// a code path with nothing in common with the production kernels.

struct ModeTables {
    std::vector<int> m[3];       // signed integer modes per flat index
    std::vector<double> k[3];    // true wavenumbers (no Nyquist special-casing;
                                 // retained modes never touch the Nyquist index)
    std::vector<double> k2;
    std::vector<char> keep;      // |m_a| <= K on all axes

    ModeTables(const Grid& g, int K) {
        const std::size_t n = g.size();
        const double scale = 2.0 * std::numbers::pi / g.box_length();
        for (int a = 0; a < 3; ++a) {
            m[a].assign(n, 0);
            k[a].assign(n, 0.0);
        }
        k2.assign(n, 0.0);
        keep.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto mm = g.modes_of(i);
            bool inside = true;
            double ksq = 0.0;
            for (int a = 0; a < g.dim(); ++a) {
                m[a][i] = mm[static_cast<std::size_t>(a)];
                k[a][i] = scale * mm[static_cast<std::size_t>(a)];
                ksq += k[a][i] * k[a][i];
                inside = inside && std::abs(mm[static_cast<std::size_t>(a)]) <= K;
            }
            k2[i] = ksq;
            keep[i] = inside ? 1 : 0;
        }
    }
};

class OracleRhs {
  public:
    OracleRhs(const GalerkinSystem& sys)
        : g_(*sys.grid), params_(sys.params), tables_(g_, sys.n_modes), n_(g_.size()),
          d_(g_.dim()) {
        const std::size_t n = n_;
        for (auto& v : real_u_)
            v.assign(n, 0.0);
        phi_.assign(n, 0.0);
        psi_hat_.assign(n, cplx(0, 0));
        scratch_c_.assign(n, cplx(0, 0));
        scratch_c2_.assign(n, cplx(0, 0));
        scratch_work_.assign(n, cplx(0, 0));
        scratch_r_.assign(n, 0.0);
        coeff_.assign(n, 0.0);
        for (auto& v : grad_psi_)
            v.assign(n, 0.0);
        for (auto& v : grad_phi_)
            v.assign(n, 0.0);
        for (auto& v : du_)
            v.assign(n, 0.0);
    }

    std::size_t state_size() const { return (static_cast<std::size_t>(d_) + 1) * n_; }

    // y = [u_0 | u_1 | (u_2) | phi] spectral coefficients, flat per field.
    void operator()(const std::vector<cplx>& y, std::vector<cplx>& dy) {
        dy.assign(state_size(), cplx(0, 0));

        // unpack to real space
        for (int a = 0; a < d_; ++a)
            to_real(&y[field(a)], real_u_[static_cast<std::size_t>(a)]);
        to_real(&y[field(d_)], phi_);

        // psi_hat = (|k|^4 - 2|k|^2) phi_hat + T_K fft(f(phi))
        for (std::size_t i = 0; i < n_; ++i) {
            const double p = phi_[i];
            scratch_r_[i] = p * p * p + (params_.r + 1.0) * p;
        }
        to_spec(scratch_r_, psi_hat_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!tables_.keep[i]) {
                psi_hat_[i] = cplx(0, 0);
                continue;
            }
            const double sym = tables_.k2[i] * tables_.k2[i] - 2.0 * tables_.k2[i];
            psi_hat_[i] += sym * y[field(d_) + i];
        }

        // gradients of psi and phi, velocity gradients: true-k multipliers
        for (int a = 0; a < d_; ++a) {
            derivative(psi_hat_.data(), a, grad_psi_[static_cast<std::size_t>(a)]);
            derivative(&y[field(d_)], a, grad_phi_[static_cast<std::size_t>(a)]);
            for (int b = 0; b < d_; ++b)
                derivative(&y[field(a)], b, du_[static_cast<std::size_t>(a * d_ + b)]);
        }

        // phi' = T_K fft( -u.grad(phi) ) + div(m(phi) grad psi) assembled in
        // spectral space from the fluxes
        for (std::size_t i = 0; i < n_; ++i)
            coeff_[i] = params_.mobility(phi_[i]);
        for (int a = 0; a < d_; ++a) {
            for (std::size_t i = 0; i < n_; ++i)
                scratch_r_[i] = coeff_[i] * grad_psi_[static_cast<std::size_t>(a)][i];
            to_spec(scratch_r_, scratch_c_);
            accumulate_ik(scratch_c_, a, &dy[field(d_)]);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            double adv = 0.0;
            for (int a = 0; a < d_; ++a)
                adv += real_u_[static_cast<std::size_t>(a)][i] *
                       grad_phi_[static_cast<std::size_t>(a)][i];
            scratch_r_[i] = -adv;
        }
        to_spec(scratch_r_, scratch_c_);
        for (std::size_t i = 0; i < n_; ++i)
            dy[field(d_) + i] += scratch_c_[i];

        // u' pre-projection: div(eta D u) - (u.grad)u - M phi grad psi
        for (std::size_t i = 0; i < n_; ++i)
            coeff_[i] = params_.eta(phi_[i]);
        for (int a = 0; a < d_; ++a) {
            for (std::size_t i = 0; i < n_; ++i) {
                double adv = 0.0;
                for (int b = 0; b < d_; ++b)
                    adv += real_u_[static_cast<std::size_t>(b)][i] *
                           du_[static_cast<std::size_t>(a * d_ + b)][i];
                scratch_r_[i] = -adv - params_.M * phi_[i] * grad_psi_[static_cast<std::size_t>(a)][i];
            }
            to_spec(scratch_r_, scratch_c_);
            for (std::size_t i = 0; i < n_; ++i)
                dy[field(a) + i] = scratch_c_[i];
            for (int b = 0; b < d_; ++b) {
                for (std::size_t i = 0; i < n_; ++i) {
                    const double dsym = 0.5 * (du_[static_cast<std::size_t>(a * d_ + b)][i] +
                                               du_[static_cast<std::size_t>(b * d_ + a)][i]);
                    scratch_r_[i] = coeff_[i] * dsym;
                }
                to_spec(scratch_r_, scratch_c_);
                accumulate_ik(scratch_c_, b, &dy[field(a)]);
            }
        }

        // projections: truncation for phi', truncation + Leray for u'
        for (std::size_t i = 0; i < n_; ++i) {
            if (!tables_.keep[i]) {
                for (int a = 0; a <= d_; ++a)
                    dy[field(a) + i] = cplx(0, 0);
                continue;
            }
            if (i == 0) {
                for (int a = 0; a < d_; ++a)
                    dy[field(a)] = cplx(0, 0);
                // -u.grad(phi) integrates to zero (alias-free quadrature), so
                // this mode is already ~0; pin it to conserve <phi> exactly
                dy[field(d_)] = cplx(0, 0);
                continue;
            }
            cplx kdot(0, 0);
            for (int a = 0; a < d_; ++a)
                kdot += tables_.k[a][i] * dy[field(a) + i];
            const double inv = 1.0 / tables_.k2[i];
            for (int a = 0; a < d_; ++a)
                dy[field(a) + i] -= tables_.k[a][i] * inv * kdot;
        }
    }

    // psi of the current state, for diagnostics sampling
    void eval_psi(const std::vector<cplx>& y, std::vector<cplx>& psi_hat) {
        to_real(&y[field(d_)], phi_);
        for (std::size_t i = 0; i < n_; ++i) {
            const double p = phi_[i];
            scratch_r_[i] = p * p * p + (params_.r + 1.0) * p;
        }
        to_spec(scratch_r_, psi_hat);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!tables_.keep[i]) {
                psi_hat[i] = cplx(0, 0);
                continue;
            }
            const double sym = tables_.k2[i] * tables_.k2[i] - 2.0 * tables_.k2[i];
            psi_hat[i] += sym * y[field(d_) + i];
        }
    }

    std::size_t field(int a) const { return static_cast<std::size_t>(a) * n_; }

    const ModeTables& tables() const { return tables_; }

  private:
    void to_real(const cplx* spec, std::vector<double>& out) {
        std::copy(spec, spec + n_, scratch_c2_.begin());
        g_.backward(scratch_c2_, out, scratch_work_);
    }
    void to_spec(const std::vector<double>& in, std::vector<cplx>& out) {
        g_.forward(in, out, scratch_work_);
    }
    void derivative(const cplx* spec, int axis, std::vector<double>& out) {
        for (std::size_t i = 0; i < n_; ++i) {
            const cplx v = spec[i];
            scratch_c2_[i] = cplx(-tables_.k[axis][i] * v.imag(), tables_.k[axis][i] * v.real());
        }
        g_.backward(scratch_c2_, out, scratch_work_);
    }
    // dst += i k_axis src  (spectral divergence assembly)
    void accumulate_ik(const std::vector<cplx>& src, int axis, cplx* dst) {
        for (std::size_t i = 0; i < n_; ++i)
            dst[i] += cplx(-tables_.k[axis][i] * src[i].imag(), tables_.k[axis][i] * src[i].real());
    }

    const Grid& g_;
    PhysParams params_;
    ModeTables tables_;
    std::size_t n_;
    int d_;
    std::vector<double> real_u_[3], grad_psi_[3], grad_phi_[3], du_[9];
    std::vector<double> phi_, scratch_r_, coeff_;
    std::vector<cplx> psi_hat_, scratch_c_, scratch_c2_, scratch_work_;
};

} // namespace

State project_initial(const GalerkinSystem& sys, const State& data) {
    const Grid& g = *sys.grid;
    ModeTables tables(g, sys.n_modes);
    State out(sys.grid);
    out.t = data.t;

    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!tables.keep[i])
            continue;
        out.phi.spec()[i] = data.phi.spec()[i];
        if (i == 0)
            continue; // velocity mean stays zero
        cplx kdot(0, 0);
        for (int a = 0; a < g.dim(); ++a)
            kdot += tables.k[a][i] * data.u[a].spec()[i];
        const double inv = 1.0 / tables.k2[i];
        for (int a = 0; a < g.dim(); ++a)
            out.u[a].spec()[i] = data.u[a].spec()[i] - tables.k[a][i] * inv * kdot;
    }
    out.phi.backward();
    out.u.backward();
    return out;
}

void rk4_step(const OdeRhs& rhs, std::vector<cplx>& y, double dt) {
    const std::size_t n = y.size();
    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
    rhs(y, k1);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + dt * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

OracleResult integrate_rk4(const GalerkinSystem& sys, const State& initial, double dt,
                           double t_end, int stride, const PhysParams* ledger_params) {
    const Grid& g = *sys.grid;
    const std::size_t n = g.size();
    const int d = g.dim();
    if (stride < 1)
        stride = 1;
    const PhysParams& lp = ledger_params ? *ledger_params : sys.params;

    State proj = project_initial(sys, initial);

    OracleRhs rhs(sys);
    std::vector<cplx> y(rhs.state_size());
    for (int a = 0; a < d; ++a)
        std::copy(proj.u[a].spec().begin(), proj.u[a].spec().end(), y.begin() + static_cast<long>(rhs.field(a)));
    std::copy(proj.phi.spec().begin(), proj.phi.spec().end(), y.begin() + static_cast<long>(rhs.field(d)));

    // RK4 stage buffers reused across steps
    std::vector<cplx> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());

    EnergyLedger ledger;
    OracleResult res{State(sys.grid), 0, {}};
    double t = initial.t;

    auto unpack = [&](State& s) {
        for (int a = 0; a < d; ++a)
            std::copy(y.begin() + static_cast<long>(rhs.field(a)),
                      y.begin() + static_cast<long>(rhs.field(a)) + static_cast<long>(n),
                      s.u[a].spec().begin());
        std::copy(y.begin() + static_cast<long>(rhs.field(d)),
                  y.begin() + static_cast<long>(rhs.field(d)) + static_cast<long>(n),
                  s.phi.spec().begin());
        s.u.backward();
        s.phi.backward();
        s.t = t;
    };

    auto sample = [&]() {
        State s(sys.grid);
        unpack(s);
        std::vector<cplx> psi_hat(n);
        rhs.eval_psi(y, psi_hat);
        ScalarField psi(sys.grid);
        std::copy(psi_hat.begin(), psi_hat.end(), psi.spec().begin());
        psi.backward();
        res.ledger.push_back(ledger.update(s, psi, lp));
    };

    sample();
    long step = 0;
    const long nsteps = static_cast<long>(std::llround((t_end - initial.t) / dt));
    while (step < nsteps) {
        rhs(y, k1);
        for (std::size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(tmp, k3);
        for (std::size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + dt * k3[i];
        rhs(tmp, k4);
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        ++step;
        t = initial.t + static_cast<double>(step) * dt;

        bool finite = true;
        for (std::size_t i = 0; i < y.size() && finite; i += 97)
            finite = std::isfinite(y[i].real()) && std::isfinite(y[i].imag());
        if (!finite)
            throw BlowUpError(step, t);

        if (step % stride == 0 || step == nsteps)
            sample();
    }
    (void)t_eps;
    res.steps = step;
    unpack(res.final_state);
    return res;
}

} // namespace nspfc
