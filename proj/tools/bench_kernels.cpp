// Kernel benchmark: OpenMP versions against the serial reference.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "nspfc/kernels.hpp"

using namespace nspfc;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_per_call(const std::function<void()>& f, int reps) {
    f(); // warm up
    const auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i)
        f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

} // namespace

int main() {
    std::printf("%-22s %10s %12s %12s %8s\n", "kernel", "n", "omp [us]", "serial [us]", "speedup");
    for (std::size_t n : {std::size_t(64) * 64, std::size_t(256) * 256, std::size_t(64) * 64 * 64}) {
        std::vector<double> a(n, 1.1), b(n, 0.7), y(n);
        std::vector<kernels::cplx> c(n, {0.3, -0.2});
        std::vector<double> t(n, 2.0);
        const int reps = n > 100000 ? 20 : 200;

        struct Case {
            const char* name;
            std::function<void()> omp, ser;
        };
        const Case cases[] = {
            {"cubic_plus_linear", [&] { kernels::cubic_plus_linear(y, a, -0.5); },
             [&] { kernels::ref::cubic_plus_linear(y, a, -0.5); }},
            {"multiply", [&] { kernels::multiply(y, a, b); },
             [&] { kernels::ref::multiply(y, a, b); }},
            {"apply_table", [&] { kernels::apply_table(c, t); },
             [&] { kernels::ref::apply_table(c, t); }},
            {"block_sum", [&] { (void)kernels::block_sum(a); },
             [&] { (void)kernels::ref::block_sum(a); }},
            {"block_weighted_norm2", [&] { (void)kernels::block_weighted_norm2(c, t); },
             [&] { (void)kernels::ref::block_weighted_norm2(c, t); }},
        };
        for (const auto& k : cases) {
            const double omp_s = seconds_per_call(k.omp, reps);
            const double ser_s = seconds_per_call(k.ser, reps);
            std::printf("%-22s %10zu %12.2f %12.2f %8.2fx\n", k.name, n, omp_s * 1e6, ser_s * 1e6,
                        ser_s / omp_s);
        }
    }
    return 0;
}
