#include <doctest.h>

#include <cmath>
#include <random>

#include "wavetail/regions.hpp"

using namespace wavetail;

TEST_CASE("enumeration for small t_max") {
    auto regions = dyadic_regions(8.0);
    int ctr = 0, ctu = 0, crt = 0;
    for (const auto& reg : regions) {
        if (reg.kind == RegionKind::CTR) {
            ++ctr;
            CHECK(reg.ru <= 3.0 * reg.T / 8.0);
        }
        if (reg.kind == RegionKind::CTU) ++ctu;
        if (reg.kind == RegionKind::CRT) {
            ++crt;
            CHECK(reg.ru > reg.T);  // exterior labels require R > T
        }
    }
    // T in {1,2,4,8}: radial cells only from T=4 onward (R <= 3T/8)
    CHECK(ctr == 3);        // (4,1), (8,1), (8,2)
    CHECK(ctu == 1 + 2 + 3 + 4);
    CHECK(crt > 0);
}

TEST_CASE("cover with bounded overlap up to t_max = 2^14") {
    const double t_max = 16384.0;
    auto regions = dyadic_regions(t_max);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> logt(0.0, std::log(t_max));
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int k = 0; k < 4000; ++k) {
        double t = std::exp(logt(rng));
        double r;
        switch (k % 4) {
            case 0: r = frac(rng) * t; break;                  // interior
            case 1: r = t + frac(rng) * 3.0 * t; break;        // exterior
            case 2: r = t + (frac(rng) - 0.5) * 4.0; break;    // near the cone
            default: r = frac(rng) * 4.0 * t; break;           // anywhere
        }
        if (r < 0.0) r = 0.0;
        if (t < 1.0 || t >= t_max) continue;
        int hits = 0;
        for (const auto& reg : regions)
            if (reg.contains(t, r)) ++hits;
        CAPTURE(t);
        CAPTURE(r);
        CHECK(hits >= 1);
        CHECK(hits <= 4);
    }
}

TEST_CASE("adversarial near-boundary points stay covered") {
    const double t_max = 1024.0;
    auto regions = dyadic_regions(t_max);
    for (double T : {2.0, 16.0, 128.0, 512.0}) {
        for (double t : {T, T * 1.999, T + 1e-9}) {
            for (double r : {0.0, 1e-9, 0.5, t * 0.4999, t * 0.75, t - 2.0, t - 1e-9, t,
                             t + 1e-9, t + 2.0, 2.0 * t, 3.0 * t}) {
                if (r < 0 || t < 1.0 || t >= t_max) continue;
                int hits = 0;
                for (const auto& reg : regions)
                    if (reg.contains(t, r)) ++hits;
                CAPTURE(t);
                CAPTURE(r);
                CHECK(hits >= 1);
                CHECK(hits <= 4);
            }
        }
    }
}
