#include "nspfc/noise.hpp"

#include <cmath>
#include <numbers>

#include "nspfc/errors.hpp"
#include "nspfc/spectral.hpp"

namespace nspfc {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::uint64_t mode_key(std::uint64_t seed, const std::array<int, 3>& m) {
    std::uint64_t h = splitmix64(seed);
    for (int a = 0; a < 3; ++a) {
        const auto tagged =
            static_cast<std::uint64_t>(static_cast<std::int64_t>(m[static_cast<std::size_t>(a)])) ^
            (0x100ULL + static_cast<std::uint64_t>(a));
        h = splitmix64(h ^ tagged);
    }
    return h;
}

double to_unit(std::uint64_t z) {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Gaussian pair from the counter at key; deterministic per (seed, mode).
cplx gaussian_coeff(std::uint64_t seed, const std::array<int, 3>& m) {
    const std::uint64_t k = mode_key(seed, m);
    const double u1 = to_unit(splitmix64(k));
    const double u2 = to_unit(splitmix64(k + 1));
    const double rad = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return cplx(rad * std::cos(ang), rad * std::sin(ang));
}

bool lexicographically_positive(const std::array<int, 3>& m) {
    for (int a = 0; a < 3; ++a) {
        if (m[static_cast<std::size_t>(a)] > 0)
            return true;
        if (m[static_cast<std::size_t>(a)] < 0)
            return false;
    }
    return false; // zero mode
}

std::size_t flat_of_modes(const Grid& g, const std::array<int, 3>& m) {
    const int n = g.n();
    std::size_t flat = 0;
    for (int a = 0; a < g.dim(); ++a) {
        const int mm = m[static_cast<std::size_t>(a)];
        const int idx = mm >= 0 ? mm : mm + n;
        flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx);
    }
    return flat;
}

// Fill spectral coefficients for all |m_a| <= cutoff, Hermitian-symmetric;
// returns the field with both views consistent, RMS-normalised.
void fill_noise(ScalarField& f, double amplitude, int cutoff, std::uint64_t seed) {
    const Grid& g = f.grid();
    if (cutoff < 1 || cutoff > g.n() / 2 - 1)
        throw ConfigError("noise cutoff must lie in [1, n/2 - 1]");
    const int d = g.dim();
    const int lo = -cutoff, hi = cutoff;
    std::array<int, 3> m = {0, 0, 0};
    for (int i = lo; i <= hi; ++i) {
        m[0] = i;
        for (int j = lo; j <= hi; ++j) {
            m[1] = j;
            const int klo = d == 3 ? lo : 0;
            const int khi = d == 3 ? hi : 0;
            for (int k = klo; k <= khi; ++k) {
                m[2] = k;
                if (!lexicographically_positive(m))
                    continue;
                const cplx c = gaussian_coeff(seed, m);
                std::array<int, 3> neg = {-m[0], -m[1], -m[2]};
                f.spec()[flat_of_modes(g, m)] = c;
                f.spec()[flat_of_modes(g, neg)] = std::conj(c);
            }
        }
    }
    // normalise real-space RMS to the requested amplitude
    const double n = static_cast<double>(g.size());
    const double rms = std::sqrt(kernels::block_norm2(f.spec())) / n;
    const double scale = rms > 0.0 ? amplitude / rms : 0.0;
    const long total = static_cast<long>(g.size());
    auto s = f.spec();
    for (long i = 0; i < total; ++i)
        s[static_cast<std::size_t>(i)] *= scale;
    f.backward();
}

} // namespace

ScalarField random_smooth_field(GridPtr grid, double amplitude, int cutoff, std::uint64_t seed) {
    ScalarField f(std::move(grid));
    if (amplitude != 0.0)
        fill_noise(f, amplitude, cutoff, seed);
    return f;
}

ScalarField constant_plus_noise(GridPtr grid, double mean, double amplitude, int cutoff,
                                std::uint64_t seed) {
    ScalarField f = random_smooth_field(std::move(grid), amplitude, cutoff, seed);
    f.spec()[0] = cplx(mean * static_cast<double>(f.size()), 0.0);
    f.backward();
    return f;
}

ScalarField single_mode(GridPtr grid, const std::array<int, 3>& mode, double amplitude) {
    ScalarField f(std::move(grid));
    const Grid& g = f.grid();
    for (int a = 0; a < g.dim(); ++a) {
        const int m = mode[static_cast<std::size_t>(a)];
        if (std::abs(m) > g.n() / 2 - 1)
            throw ConfigError("single_mode index exceeds representable range");
    }
    std::array<int, 3> neg = {-mode[0], -mode[1], -mode[2]};
    const double half = 0.5 * amplitude * static_cast<double>(g.size());
    f.spec()[flat_of_modes(g, mode)] += cplx(half, 0.0);
    f.spec()[flat_of_modes(g, neg)] += cplx(half, 0.0);
    f.backward();
    return f;
}

VectorField random_solenoidal(GridPtr grid, double amplitude, int cutoff, std::uint64_t seed) {
    VectorField v(grid);
    if (amplitude == 0.0)
        return v;
    for (int a = 0; a < v.dim(); ++a) {
        const std::uint64_t comp_seed = splitmix64(seed ^ (0xC0FFEEULL + static_cast<std::uint64_t>(a)));
        ScalarField c = random_smooth_field(grid, 1.0, cutoff, comp_seed);
        std::copy(c.spec().begin(), c.spec().end(), v[a].spec().begin());
    }
    VectorField proj = leray_project(v);
    // rescale |u| RMS to amplitude
    double norm2 = 0.0;
    for (int a = 0; a < proj.dim(); ++a)
        norm2 += kernels::block_norm2(proj[a].spec());
    const double n = static_cast<double>(grid->size());
    const double rms = std::sqrt(norm2) / n;
    const double scale = rms > 0.0 ? amplitude / rms : 0.0;
    for (int a = 0; a < proj.dim(); ++a) {
        auto s = proj[a].spec();
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] *= scale;
        proj[a].backward();
    }
    return proj;
}

} // namespace nspfc
