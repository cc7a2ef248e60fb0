#include "wavetail/cone_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wavetail/errors.hpp"

namespace wavetail {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1,1].
constexpr int kGL = 8;
constexpr double kNodes[kGL] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
constexpr double kWeights[kGL] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

inline double jap(double x) { return std::sqrt(1.0 + x * x); }  // <x>

// Dyadic breakpoints for [lo, hi] around 0: ..., -2, -1, 0, 1, 2, 4, ...
std::vector<double> dyadic_breaks_about_zero(double lo, double hi) {
    std::vector<double> b{lo, hi};
    if (lo < 0.0 && hi > 0.0) b.push_back(0.0);
    for (double s = 1.0; s < std::max(std::fabs(lo), std::fabs(hi)); s *= 2.0) {
        if (s > lo && s < hi) b.push_back(s);
        if (-s > lo && -s < hi) b.push_back(-s);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

// Breakpoints for [lo, hi] dyadic in distance from base.
std::vector<double> dyadic_breaks_from(double base, double lo, double hi) {
    std::vector<double> b{lo, hi};
    for (double s = 1.0; base + s < hi; s *= 2.0)
        if (base + s > lo) b.push_back(base + s);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

}  // namespace

double dtr_slice_height_above_diagonal(double t, double r, double rho) {
    double u = t - r, v = t + r;
    double lo = std::max(rho, std::fabs(u) - rho);
    double hi = std::min(u + rho, v - rho);
    return std::max(0.0, hi - lo);
}

double ConeOracle::value_at_level(double t, double r, int level) const {
    const double u = t - r, v = t + r;
    if (v <= 0.0) return 0.0;
    const int sub = 1 << level;

    // Null coordinates: up = s - rho in [-v, u], vp = s + rho in
    // [max(|up|, |u|), v], dA = dup dvp / 2.
    auto breaks_u = dyadic_breaks_about_zero(-v, u);
    std::size_t npanels = breaks_u.size() - 1;

    double total = block_sum(npanels * static_cast<std::size_t>(sub), exec, [&](std::size_t idx) {
        std::size_t pi = idx / sub;
        int si = static_cast<int>(idx % sub);
        double pa = breaks_u[pi], pb = breaks_u[pi + 1];
        double ua = pa + (pb - pa) * si / sub;
        double ub = pa + (pb - pa) * (si + 1) / sub;
        double acc = 0.0;
        for (int i = 0; i < kGL; ++i) {
            double up = 0.5 * (ua + ub) + 0.5 * (ub - ua) * kNodes[i];
            double wu = 0.5 * (ub - ua) * kWeights[i];
            double lo = std::max(std::fabs(up), std::fabs(u));
            if (lo >= v) continue;
            double inner = 0.0;
            auto breaks_v = dyadic_breaks_from(lo, lo, v);
            for (std::size_t qi = 0; qi + 1 < breaks_v.size(); ++qi) {
                double qa = breaks_v[qi], qb = breaks_v[qi + 1];
                for (int s2 = 0; s2 < sub; ++s2) {
                    double va = qa + (qb - qa) * s2 / sub;
                    double vb = qa + (qb - qa) * (s2 + 1) / sub;
                    for (int j = 0; j < kGL; ++j) {
                        double vp = 0.5 * (va + vb) + 0.5 * (vb - va) * kNodes[j];
                        double wv = 0.5 * (vb - va) * kWeights[j];
                        double rho = 0.5 * (vp - up);
                        if (rho <= 0.0) continue;
                        inner += wv * rho * std::pow(jap(rho), -alpha) * std::pow(jap(vp), -beta);
                    }
                }
            }
            acc += wu * inner * std::pow(jap(up), -eta);
        }
        return 0.5 * acc;
    });
    return total;
}

double ConeOracle::value(double t, double r) const {
    double prev = value_at_level(t, r, 0);
    for (int level = 1; level <= 4; ++level) {
        double cur = value_at_level(t, r, level);
        double scale = std::max(std::fabs(cur), 1e-300);
        if (std::fabs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    fail(ErrKind::QuadratureNotConverged, "cone integral did not converge under mesh refinement");
}

}  // namespace wavetail
