#include "nspfc/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "nspfc/errors.hpp"

namespace nspfc {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int mode_of_index(int i, int n) { return i < n / 2 ? i : i - n; }

int dealias_cutoff(int n, double fraction) {
    return static_cast<int>(std::floor(fraction * (static_cast<double>(n) / 2.0)));
}

std::vector<double> axis_wavenumbers(int n, double box_length) {
    std::vector<double> k(static_cast<std::size_t>(n));
    const double scale = 2.0 * std::numbers::pi / box_length;
    for (int i = 0; i < n; ++i)
        k[static_cast<std::size_t>(i)] = scale * mode_of_index(i, n);
    return k;
}

void validate(const GridSpec& spec) {
    if (spec.dim != 2 && spec.dim != 3)
        throw ConfigError("grid.dim must be 2 or 3, got " + std::to_string(spec.dim));
    if (!is_power_of_two(spec.n) || spec.n < 8)
        throw ConfigError("grid.n must be a power of two >= 8, got " + std::to_string(spec.n));
    if (!(spec.box_length > 0.0))
        throw ConfigError("grid.box_length must be positive");
    if (!(spec.dealias_fraction > 0.0) || spec.dealias_fraction > 1.0)
        throw ConfigError("dealias_fraction must lie in (0,1]");
}

Fft::Fft(int dim, int n) {
    // Plans are created once per grid on scratch arrays and then executed on
    // whatever buffers the caller hands in; FFTW_UNALIGNED makes that legal
    // for plain std::vector storage. FFTW_ESTIMATE keeps planning
    // deterministic across runs.
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a)
        total *= static_cast<std::size_t>(n);
    std::vector<cplx> a(total), b(total);
    int dims[3] = {n, n, n};
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd_ = fftw_plan_dft(dim, dims, reinterpret_cast<fftw_complex*>(a.data()),
                         reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD, flags);
    bwd_ = fftw_plan_dft(dim, dims, reinterpret_cast<fftw_complex*>(a.data()),
                         reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD, flags);
}

Fft::~Fft() {
    if (fwd_)
        fftw_destroy_plan(reinterpret_cast<fftw_plan>(fwd_));
    if (bwd_)
        fftw_destroy_plan(reinterpret_cast<fftw_plan>(bwd_));
}

void Fft::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(reinterpret_cast<fftw_plan>(fwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void Fft::backward(const cplx* in, cplx* out) const {
    fftw_execute_dft(reinterpret_cast<fftw_plan>(bwd_),
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

Grid::Grid(GridSpec spec) : spec_(spec) {
    validate(spec_);
    const int d = spec_.dim;
    const int n = spec_.n;
    size_ = 1;
    for (int a = 0; a < d; ++a)
        size_ *= static_cast<std::size_t>(n);
    volume_ = std::pow(spec_.box_length, d);
    cutoff_ = dealias_cutoff(n, spec_.dealias_fraction);

    axis_mode_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        axis_mode_[static_cast<std::size_t>(i)] = mode_of_index(i, n);

    k2_.resize(size_);
    k4_.resize(size_);
    k6_.resize(size_);
    mask_.resize(size_);
    nyq_.resize(size_);
    for (int a = 0; a < d; ++a)
        kvec_[static_cast<std::size_t>(a)].assign(size_, 0.0);

    const double scale = 2.0 * std::numbers::pi / spec_.box_length;
    const long total = static_cast<long>(size_);
#pragma omp parallel for schedule(static)
    for (long flat = 0; flat < total; ++flat) {
        std::size_t rem = static_cast<std::size_t>(flat);
        int idx[3] = {0, 0, 0};
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
        }
        double ksq = 0.0;
        bool in_mask = true;
        bool on_nyquist = false;
        for (int a = 0; a < d; ++a) {
            const int m = axis_mode_[static_cast<std::size_t>(idx[a])];
            const double ka = scale * m;
            ksq += ka * ka;
            in_mask = in_mask && std::abs(m) <= cutoff_;
            on_nyquist = on_nyquist || (m == -n / 2);
            // Nyquist zeroed in first-derivative multipliers.
            kvec_[static_cast<std::size_t>(a)][static_cast<std::size_t>(flat)] =
                (m == -n / 2) ? 0.0 : ka;
        }
        k2_[static_cast<std::size_t>(flat)] = ksq;
        k4_[static_cast<std::size_t>(flat)] = ksq * ksq;
        k6_[static_cast<std::size_t>(flat)] = ksq * ksq * ksq;
        mask_[static_cast<std::size_t>(flat)] = in_mask ? 1.0 : 0.0;
        nyq_[static_cast<std::size_t>(flat)] = on_nyquist ? 1.0 : 0.0;
    }

    fft_ = std::make_unique<Fft>(d, n);
}

std::array<int, 3> Grid::modes_of(std::size_t flat) const {
    const int d = spec_.dim;
    const int n = spec_.n;
    std::array<int, 3> m = {0, 0, 0};
    std::size_t rem = flat;
    for (int a = d - 1; a >= 0; --a) {
        m[static_cast<std::size_t>(a)] =
            axis_mode_[rem % static_cast<std::size_t>(n)];
        rem /= static_cast<std::size_t>(n);
    }
    return m;
}

void Grid::forward(std::span<const double> real, std::span<cplx> spec,
                   std::span<cplx> work) const {
    const long total = static_cast<long>(size_);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i)
        work[static_cast<std::size_t>(i)] = cplx(real[static_cast<std::size_t>(i)], 0.0);
    fft_->forward(work.data(), spec.data());
}

void Grid::backward(std::span<const cplx> spec, std::span<double> real,
                    std::span<cplx> work) const {
    fft_->backward(spec.data(), work.data());
    const double inv = 1.0 / static_cast<double>(size_);
    const long total = static_cast<long>(size_);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i)
        real[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i)].real() * inv;
}

GridPtr make_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

} // namespace nspfc
