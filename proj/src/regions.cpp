#include "wavetail/regions.hpp"

#include <cmath>

#include "wavetail/errors.hpp"

namespace wavetail {

bool DyadicRegion::contains(double t, double r) const {
    if (t < T || t >= 2.0 * T) return false;
    switch (kind) {
        case RegionKind::CTR: {
            if (r > t) return false;
            if (ru == 1.0) return r < 2.0;
            return r >= ru && r < 2.0 * ru;
        }
        case RegionKind::CTU: {
            double a = std::fabs(t - r);
            if (ru == 1.0) return a < 2.0;
            return a >= ru && a < 2.0 * ru;
        }
        case RegionKind::CRT: {
            if (r < t) return false;
            double d = r - t;
            return d >= ru && d < 2.0 * ru;
        }
    }
    return false;
}

std::string DyadicRegion::label() const {
    return std::string(region_kind_name(kind)) + "[T=" + std::to_string(static_cast<long long>(T)) +
           "," + (kind == RegionKind::CTU ? "U=" : "R=") +
           std::to_string(static_cast<long long>(ru)) + "]";
}

std::vector<DyadicRegion> dyadic_regions(double t_max, double base) {
    if (base <= 1.0) fail(ErrKind::ValidationError, "dyadic base must exceed 1");
    std::vector<DyadicRegion> out;
    for (double T = 1.0; T <= t_max; T *= base) {
        // interior radial cells: R <= 3T/8
        for (double R = 1.0; R <= 3.0 * T / 8.0; R *= base)
            out.push_back({RegionKind::CTR, T, R});
        // cone-distance cells up to |t-r| < 2T
        for (double U = 1.0; U <= T; U *= base)
            out.push_back({RegionKind::CTU, T, U});
        // exterior bands, R > T
        for (double R = 2.0 * T; R <= 4.0 * (t_max + T); R *= base)
            out.push_back({RegionKind::CRT, T, R});
    }
    return out;
}

}  // namespace wavetail
