#include "nspfc/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nspfc/errors.hpp"

namespace nspfc {

void validate(const StepConfig& cfg) {
    if (!(cfg.dt > 0.0))
        throw ConfigError("step.dt must be positive");
    if (cfg.t_end < 0.0)
        throw ConfigError("step.t_end must be nonnegative");
    if (cfg.stabilization_S < 0.0 || cfg.stabilization_kappa < 0.0)
        throw ConfigError("stabilization shifts must be nonnegative");
    if (cfg.max_steps < 0)
        throw ConfigError("step.max_steps must be nonnegative");
}

namespace {

double min_coefficient(const CoefficientFamily& fam, const ScalarField& phi) {
    if (fam.kind == CoefficientFamily::Kind::constant)
        return fam.value;
    // monotone family: min over the field is the value at the field minimum
    return fam(kernels::block_min(phi.real()));
}

} // namespace

State step_imex(const State& state, const PhysParams& params, const StepConfig& cfg) {
    const GridPtr grid = state.phi.grid_ptr();
    const Grid& g = *grid;
    const std::size_t n = g.size();
    const double dt = cfg.dt;

    State next(grid);
    next.t = state.t + dt;

    ScalarField psi = chemical_potential(state.phi, params.r);

    // phi update
    {
        const double m_bar = min_coefficient(params.mobility, state.phi);
        ScalarField gphi = rhs_phi(state, psi, params);
        std::vector<double> relax(n);
        const auto& k2 = g.k2();
        const auto& k4 = g.k4();
        const auto& k6 = g.k6();
        const long total = static_cast<long>(n);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < total; ++i) {
            const std::size_t j = static_cast<std::size_t>(i);
            const double stiff = std::max(k6[j] - 2.0 * k4[j], 0.0);
            relax[j] = m_bar * stiff + cfg.stabilization_S * k2[j];
        }
        kernels::relaxed_increment(next.phi.spec(), state.phi.spec(), gphi.spec(), relax, dt);
        next.phi.backward();
    }

    // u update
    if (cfg.freeze_velocity) {
        for (int a = 0; a < g.dim(); ++a) {
            std::copy(state.u[a].spec().begin(), state.u[a].spec().end(),
                      next.u[a].spec().begin());
            std::copy(state.u[a].real().begin(), state.u[a].real().end(),
                      next.u[a].real().begin());
        }
    } else {
        const double eta_bar = min_coefficient(params.eta, state.phi);
        VectorField gu = rhs_u(state, psi, params);
        std::vector<double> relax(n);
        const auto& k2 = g.k2();
        const long total = static_cast<long>(n);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < total; ++i) {
            const std::size_t j = static_cast<std::size_t>(i);
            relax[j] = 0.5 * eta_bar * k2[j] + cfg.stabilization_kappa;
        }
        VectorField pre(grid);
        for (int a = 0; a < g.dim(); ++a)
            kernels::relaxed_increment(pre[a].spec(), state.u[a].spec(), gu[a].spec(), relax, dt);
        next.u = leray_project(pre);
    }

    return next;
}

ProbeReport stability_probe(const State& state, const PhysParams& params) {
    const Grid& g = state.phi.grid();
    ProbeReport rep;
    const double inf = std::numeric_limits<double>::infinity();

    const double cutoff_k =
        2.0 * std::numbers::pi / g.box_length() * g.mask_cutoff() * std::sqrt(double(g.dim()));
    const double k2max = cutoff_k * cutoff_k;
    const double k6max = k2max * k2max * k2max;

    // advective CFL from the grid spacing and the current velocity
    double umax = 0.0;
    for (int a = 0; a < g.dim(); ++a)
        umax += state.u[a].max_abs();
    const double dx = g.box_length() / g.n();
    rep.advective = umax > 0.0 ? dx / umax : inf;

    // explicit variable-mobility remainder of the Lap^3 term: stable for any
    // dt while m_max <= 2 m_bar, otherwise dt (m_max - 2 m_bar) |k|^6 <= 1
    const double m_bar = params.mobility.kind == CoefficientFamily::Kind::constant
                             ? params.mobility.value
                             : params.mobility(kernels::block_min(state.phi.real()));
    const double m_max = params.mobility.kind == CoefficientFamily::Kind::constant
                             ? params.mobility.value
                             : params.mobility(kernels::block_max(state.phi.real()));
    rep.mobility_split =
        (m_max <= 2.0 * m_bar) ? inf : 1.0 / ((m_max - 2.0 * m_bar) * k6max);

    const double eta_bar = params.eta.kind == CoefficientFamily::Kind::constant
                               ? params.eta.value
                               : params.eta(kernels::block_min(state.phi.real()));
    const double eta_max = params.eta.kind == CoefficientFamily::Kind::constant
                               ? params.eta.value
                               : params.eta(kernels::block_max(state.phi.real()));
    rep.viscous_split =
        (eta_max <= 2.0 * eta_bar) ? inf : 2.0 / ((eta_max - 2.0 * eta_bar) * k2max);

    // explicit m_bar Lap f(phi) plus the antidiffusive shell |k|^2 < 2 of the
    // sixth-order symbol (active only on boxes larger than pi sqrt(2))
    const double phimax = state.phi.max_abs();
    const double fprime_max = 3.0 * phimax * phimax + std::abs(params.r + 1.0);
    double lam = m_bar * fprime_max * k2max;
    const double anti_peak = 32.0 / 27.0; // max of 2 x^2 - x^3 on (0,2)
    const double kmin2 = std::pow(2.0 * std::numbers::pi / g.box_length(), 2);
    if (kmin2 < 2.0)
        lam += m_bar * anti_peak;
    rep.potential_term = lam > 0.0 ? 1.0 / lam : inf;

    const double bound = std::min(std::min(rep.advective, rep.mobility_split),
                                  std::min(rep.viscous_split, rep.potential_term));
    const double safety = 0.2;
    rep.suggested = std::isinf(bound) ? inf : safety * bound;
    return rep;
}

TrajectoryRecord run(const State& initial, const PhysParams& params, const StepConfig& cfg,
                     int stride, const SampleSink& sink) {
    validate(cfg);
    if (stride < 1)
        stride = 1;

    TrajectoryRecord rec{initial, 0, {}, {}};

    const double t_eps = 1e-12 * std::max(1.0, std::abs(cfg.t_end));
    if (!(initial.t + t_eps < cfg.t_end) || cfg.max_steps == 0)
        return rec; // nothing to advance: final state is the initial one, series empty

    EnergyLedger ledger;
    auto sample = [&](const State& s) {
        ScalarField psi = chemical_potential(s.phi, params.r);
        const LedgerRow lrow = ledger.update(s, psi, params);
        const NormRow nrow = norm_monitor(s, psi);
        rec.ledger.push_back(lrow);
        rec.norms.push_back(nrow);
        if (sink)
            sink(s, lrow, nrow);
    };

    sample(rec.final_state);
    long step = 0;
    while (rec.final_state.t + t_eps < cfg.t_end && step < cfg.max_steps) {
        rec.final_state = step_imex(rec.final_state, params, cfg);
        ++step;
        if (!rec.final_state.phi.finite() || !rec.final_state.u.finite())
            throw BlowUpError(step, rec.final_state.t);
        const bool last = !(rec.final_state.t + t_eps < cfg.t_end) || step >= cfg.max_steps;
        if (step % stride == 0 || last)
            sample(rec.final_state);
    }
    rec.steps_taken = step;
    return rec;
}

} // namespace nspfc
