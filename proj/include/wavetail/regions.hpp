#pragma once

#include <string>
#include <vector>

namespace wavetail {

// Dyadic spacetime cells. CTR: {T<=t<2T} x {R<=r<2R} (R=1 pads to r<2) inside
// r <= t; CTU: {T<=t<2T} x {U<=|t-r|<2U} (U=1 pads to |t-r|<2); CRT: exterior
// band {T<=t<2T, R<=r-t<2R} with R > T. Together they cover {1 <= t}.
enum class RegionKind { CTR, CTU, CRT };

inline const char* region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::CTR: return "C_T^R";
        case RegionKind::CTU: return "C_T^U";
        case RegionKind::CRT: return "C_R^T";
    }
    return "?";
}

struct DyadicRegion {
    RegionKind kind;
    double T;
    double ru;  // R or U label

    bool contains(double t, double r) const;
    std::string label() const;
};

// All regions meeting {1 <= t <= t_max, 0 <= r}. Measurement base 2.
std::vector<DyadicRegion> dyadic_regions(double t_max, double base = 2.0);

}  // namespace wavetail
