#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavetail/decay_bound.hpp"
#include "wavetail/regions.hpp"
#include "wavetail/scenario.hpp"
#include "wavetail/solver.hpp"

namespace wavetail {

struct RegionStat {
    DyadicRegion region;
    std::string field;
    double sup = 0.0;
    double l2 = 0.0;  // 3D spacetime L2 over the region
    std::size_t samples = 0;
};

// Exact max / L2 of Z^J phi over the lattice points of one region.
RegionStat region_sup(const FieldHistory& h, const DyadicRegion& region, const VfWord& field,
                      Exec exec = default_exec());

struct FitResult {
    double slope = 0.0;
    double stderr_ = 0.0;
    std::size_t points = 0;
};

// Least squares of log(value) against log(scale). Needs >= 4 positive points;
// refuses fits with stderr > 0.25.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& scale_value);

// Sup of |phi| over the probe band per half-dyadic time window, then the
// fitted slope of sup vs window midpoint over [t_lo, t_hi].
FitResult fit_fixed_r_slope(const FieldHistory& h, double t_lo, double t_hi);

// sup over {t - r > r_inside + margin} of |phi| on the capture slices:
// the strong-Huygens residual for data supported in r <= r_inside.
double huygens_residual(const FieldHistory& h, double r_inside, double margin);

struct LENorms {
    double le = 0.0;       // sup_R ||<r>^-1/2 phi||_{L2}
    double le1 = 0.0;      // LE of d phi + LE of <r>^-1 phi
    double le_star = 0.0;  // sum_R ||<r>^1/2 f||_{L2}
};
LENorms compute_le_norms(const FieldHistory& h, double t0, double t1, int order,
                         Exec exec = default_exec());

// LE norm (sup over annuli of the <r>^-1/2-weighted L2) of one derived field.
double le_norm_of_word(const FieldHistory& h, double t0, double t1, const VfWord& word);

struct RGammaResult {
    double bulk = 0.0;  // A_{gamma,m}
    double e1 = 0.0;    // E^gamma(T1)
    double e2 = 0.0;    // E^gamma(T2)
};
// Bulk r^gamma integral over [T1,T2] and the boundary energies; needs
// 1/2 < gamma < min(1, 2 sigma).
RGammaResult compute_rgamma(const FieldHistory& h, double gamma, double T1, double T2, int order,
                            double sigma, Exec exec = default_exec());

struct SiledRow {
    double T = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool vacuous = false;
};
// LHS/RHS of the stationary integrated-local-energy-decay estimate per dyadic
// interval [T, 2T], as a measured diagnostic.
std::vector<SiledRow> check_siled(const FieldHistory& h, const Scenario& sc,
                                  const std::vector<double>& Ts, int order,
                                  Exec exec = default_exec());

enum class ProbeAxis { FixedRvsT, FixedVvsU, ExteriorVsR };

struct RateVerdict {
    std::string name;
    double expected = 0.0;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Compare a fitted slope against a predicted bound along one probe axis.
RateVerdict compare_rates(const std::string& name, double measured_slope,
                          const DecayBound& predicted, ProbeAxis axis, double tolerance,
                          double sigma);

}  // namespace wavetail
