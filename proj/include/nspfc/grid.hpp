#pragma once

// Periodic-box discretization: DFT index conventions, wavenumber and dealias
// tables, and the complex-to-complex FFTW transforms shared by all fields on
// the same grid.
//
// Conventions (fixed so snapshot files are bit-reproducible):
//   * per-axis DFT index set {0, 1, ..., n/2-1, -n/2, ..., -1}, scaled by
//     2*pi/box_length,
//   * forward transform unnormalised, backward divides by the total sample
//     count, so mean(field) == spec[0] / size(),
//   * the Nyquist index -n/2 is zeroed in the first-derivative tables so
//     derivatives of real fields stay real,
//   * the dealias mask keeps index j iff |j| <= floor(dealias_fraction * n/2)
//     on every axis.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nspfc/kernels.hpp"

struct fftw_plan_s;

namespace nspfc {

using cplx = kernels::cplx;

struct GridSpec {
    int dim = 2;
    int n = 64;
    double box_length = 1.0;
    double dealias_fraction = 2.0 / 3.0;
};

bool is_power_of_two(int n);

// Signed DFT mode of array index i on an n-point axis.
int mode_of_index(int i, int n);

// Largest retained |mode| under the dealias rule: floor(fraction * n/2).
int dealias_cutoff(int n, double fraction);

// Per-axis wavenumbers 2*pi/L * mode, in array-index order.
std::vector<double> axis_wavenumbers(int n, double box_length);

// Throws ConfigError for dim not in {2,3}, n not a power of two or < 8,
// box_length <= 0, or dealias_fraction outside (0,1].
void validate(const GridSpec& spec);

class Fft {
  public:
    Fft(int dim, int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // Unnormalised exp(-ikx) transform.
    void forward(const cplx* in, cplx* out) const;
    // Unnormalised exp(+ikx) transform; caller divides by the sample count.
    void backward(const cplx* in, cplx* out) const;

  private:
    fftw_plan_s* fwd_ = nullptr;
    fftw_plan_s* bwd_ = nullptr;
};

class Grid {
  public:
    explicit Grid(GridSpec spec);

    const GridSpec& spec() const { return spec_; }
    int dim() const { return spec_.dim; }
    int n() const { return spec_.n; }
    std::size_t size() const { return size_; }
    double box_length() const { return spec_.box_length; }
    double volume() const { return volume_; }          // |Q| = L^d
    double cell_volume() const { return volume_ / static_cast<double>(size_); }
    int mask_cutoff() const { return cutoff_; }

    // Multiplier tables over the flat spectral index.
    std::span<const double> k2() const { return k2_; }
    std::span<const double> k4() const { return k4_; }
    std::span<const double> k6() const { return k6_; }
    std::span<const double> kvec(int axis) const { return kvec_[static_cast<std::size_t>(axis)]; }
    std::span<const double> mask() const { return mask_; }
    // 1.0 where any axis sits on the Nyquist index.
    std::span<const double> nyquist() const { return nyq_; }

    // Signed integer mode vector of a flat spectral index.
    std::array<int, 3> modes_of(std::size_t flat) const;

    // real -> spectral (unnormalised) and spectral -> real (divides by size).
    // `work` is caller-owned staging of length size(); keeping it out of the
    // grid lets distinct fields transform concurrently.
    void forward(std::span<const double> real, std::span<cplx> spec, std::span<cplx> work) const;
    void backward(std::span<const cplx> spec, std::span<double> real, std::span<cplx> work) const;

  private:
    GridSpec spec_;
    std::size_t size_ = 0;
    double volume_ = 1.0;
    int cutoff_ = 0;
    std::vector<double> k2_, k4_, k6_, mask_, nyq_;
    std::array<std::vector<double>, 3> kvec_;
    std::vector<int> axis_mode_; // length n, mode_of_index table
    std::unique_ptr<Fft> fft_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const GridSpec& spec);

} // namespace nspfc
