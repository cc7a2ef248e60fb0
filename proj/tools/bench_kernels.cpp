// Timing comparison of the serial reference kernels against the OpenMP ones.
#include <chrono>
#include <cstdio>

#include "wavetail/cone_oracle.hpp"
#include "wavetail/meter.hpp"
#include "wavetail/scenario.hpp"
#include "wavetail/solver.hpp"

using namespace wavetail;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Scenario bench_scenario() {
    return parse_scenario(
        "sigma = 0.5\n"
        "a_V = 0.5\n"
        "term = -1.0 dphi^3\n"
        "epsilon = 0.05\n"
        "r0 = 4\nwidth = 2\n"
        "dr = 0.002\nr_max = 400\nt_max = 1\ncfl = 0.9\nslice_dt = 1\n");
}

template <class Fn>
double timed(const char* name, Fn&& fn) {
    auto t0 = Clock::now();
    fn();
    double ms = ms_since(t0);
    std::printf("  %-28s %10.1f ms\n", name, ms);
    return ms;
}

}  // namespace

int main() {
    std::printf("solver stepping (2e5 points, t_max=1)\n");
    Scenario sc = bench_scenario();
    double serial_ms = 0, parallel_ms = 0;

    serial_ms = timed("serial reference", [&] {
        Stepper st(sc, Exec::Serial);
        while (st.t() < sc.grid.t_max) st.step();
    });
    parallel_ms = timed("openmp", [&] {
        Stepper st(sc, Exec::Parallel);
        while (st.t() < sc.grid.t_max) st.step();
    });
    std::printf("  speedup %.2fx\n\n", serial_ms / parallel_ms);

    std::printf("cone-integral quadrature (alpha=2.5, beta=1, eta=0)\n");
    ConeOracle oracle;
    oracle.beta = 1.0;
    double v1 = 0, v2 = 0;
    oracle.exec = Exec::Serial;
    serial_ms = timed("serial reference", [&] { v1 = oracle.value(1200.0, 1000.0); });
    oracle.exec = Exec::Parallel;
    parallel_ms = timed("openmp", [&] { v2 = oracle.value(1200.0, 1000.0); });
    std::printf("  speedup %.2fx (values %.6g / %.6g, bit-equal: %s)\n\n", serial_ms / parallel_ms,
                v1, v2, v1 == v2 ? "yes" : "NO");

    std::printf("region statistics\n");
    FieldHistory h = run_scenario(sc, Exec::Parallel);
    auto regions = dyadic_regions(sc.grid.t_max);
    serial_ms = timed("serial reference", [&] {
        for (const auto& reg : regions) {
            try {
                region_sup(h, reg, VfWord{0, 0, 0}, Exec::Serial);
            } catch (...) {
            }
        }
    });
    parallel_ms = timed("openmp", [&] {
        for (const auto& reg : regions) {
            try {
                region_sup(h, reg, VfWord{0, 0, 0}, Exec::Parallel);
            } catch (...) {
            }
        }
    });
    std::printf("  speedup %.2fx\n", serial_ms / parallel_ms);
    return 0;
}
