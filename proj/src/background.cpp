#include "wavetail/background.hpp"

#include <algorithm>
#include <cmath>

#include "wavetail/errors.hpp"

namespace wavetail {

namespace {

double jap(double r) { return std::sqrt(1.0 + r * r); }

// amp * <r>^-p and its radial derivative
double power_profile(double amp, double p, double r) { return amp * std::pow(jap(r), -p); }
double power_profile_d(double amp, double p, double r) {
    return -amp * p * r * std::pow(jap(r), -p - 2.0);
}

}  // namespace

BackgroundModel::Coeffs BackgroundModel::eval(double r) const {
    if (profile != "power")
        fail(ErrKind::ValidationError, "unknown profile: " + profile);
    Coeffs c;
    c.h = power_profile(a_h, 1.0 + sigma, r);
    c.B = power_profile(a_B, 1.0 + sigma, r);
    c.V = power_profile(a_V, 2.0 + sigma, r);
    c.dh = power_profile_d(a_h, 1.0 + sigma, r);
    c.dB = power_profile_d(a_B, 1.0 + sigma, r);
    c.dV = power_profile_d(a_V, 2.0 + sigma, r);
    return c;
}

double BackgroundModel::sup_h() const { return std::fabs(a_h) * (1.0 + std::fabs(a_mod)); }

namespace {

// 4th-order centered first derivative with r-adapted step; S = r d_r on
// stationary radial functions.
double d4(const std::function<double(double)>& f, double r, double h) {
    return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h);
}

double adapted_step(double r) { return std::max(1e-3, 1e-3 * std::fabs(r)); }

using Fn = std::function<double(double)>;

Fn apply_field(const Fn& f, char z) {
    if (z == 'd') return [f](double r) { return d4(f, r, adapted_step(r)); };
    // S
    return [f](double r) { return r * d4(f, r, adapted_step(r)); };
}

void enumerate_words(int max_len, std::vector<std::string>& out) {
    out.push_back("");
    std::vector<std::string> frontier{""};
    for (int l = 0; l < max_len; ++l) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (char z : {'d', 'S'}) {
                next.push_back(w + z);
                out.push_back(w + z);
            }
        frontier = std::move(next);
    }
}

}  // namespace

SymbolClassReport verify_symbol_class(const Fn& fn, double order, int max_vf, double ceiling) {
    SymbolClassReport rep;
    rep.ceiling = ceiling;
    std::vector<std::string> words;
    enumerate_words(max_vf, words);
    // Sample radii log-spaced; skip r < 1 where <r>^order gives no separation.
    std::vector<double> radii;
    for (double r = 1.0; r <= 3.0e4; r *= 1.6) radii.push_back(r);
    for (const auto& w : words) {
        Fn g = fn;
        for (char z : w) g = apply_field(g, z);
        SymbolClassReport::Entry e;
        e.multiindex = w.empty() ? "id" : w;
        for (double r : radii) {
            double ratio = std::fabs(g(r)) / std::pow(jap(r), order);
            if (ratio > e.worst_ratio) {
                e.worst_ratio = ratio;
                e.worst_r = r;
            }
        }
        // each applied field may cost at most one factor of the ceiling: the
        // per-word class constants of a power law grow like p^|J|
        double allowed = std::pow(ceiling, std::max<std::size_t>(1, w.size()));
        if (e.worst_ratio > allowed) rep.pass = false;
        rep.entries.push_back(e);
    }
    return rep;
}

SymbolClassReport verify_symbol_class_sampled(const std::vector<double>& r,
                                              const std::vector<double>& g, double order,
                                              int max_vf, double ceiling) {
    if (r.size() != g.size() || r.size() < 8)
        fail(ErrKind::InsufficientSampling, "need matching r/g samples, at least 8");
    double spacing = r[1] - r[0];
    if (spacing > adapted_step(r.front()) * 2.0)
        fail(ErrKind::InsufficientSampling, "sample spacing too coarse for stable differencing");
    // Linear interpolation adapter over the samples.
    auto fn = [r, g](double x) {
        if (x <= r.front()) return g.front();
        if (x >= r.back()) return g.back();
        std::size_t lo = 0, hi = r.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            (r[mid] <= x ? lo : hi) = mid;
        }
        double t = (x - r[lo]) / (r[lo + 1] - r[lo]);
        return g[lo] * (1 - t) + g[lo + 1] * t;
    };
    return verify_symbol_class(fn, order, max_vf, ceiling);
}

}  // namespace wavetail
