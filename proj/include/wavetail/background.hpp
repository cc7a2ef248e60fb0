#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wavetail {

// Asymptotically flat coefficient family for the perturbed operator
//   P phi = (1+h) d_t^2 phi - Lap phi + B d_t phi + V phi
// with stationary radial profiles h, B ~ <r>^-(1+sigma) and V ~ <r>^-(2+sigma).
// The spherical-harmonic coefficient g_omega is accepted in model files but
// acts trivially on radial fields, so it carries no dynamics here.
struct BackgroundModel {
    double sigma = 0.5;
    double a_h = 0.0;
    double a_B = 0.0;
    double a_V = 0.0;
    double a_gomega = 0.0;  // parsed, unobservable in spherical symmetry
    double a_mod = 0.0;      // slow time modulation c(t) = 1 + a_mod t/(1+t)
    std::string profile = "power";

    // |c'(t)| = |a_mod|/(1+t)^2 <= <t>^-1 for |a_mod| <= 1
    double modulation(double t) const { return 1.0 + a_mod * t / (1.0 + t); }

    bool trivial() const { return a_h == 0.0 && a_B == 0.0 && a_V == 0.0; }

    struct Coeffs {
        double h = 0, B = 0, V = 0;
        double dh = 0, dB = 0, dV = 0;  // radial derivatives
    };
    Coeffs eval(double r) const;

    double sup_h() const;  // for the CFL adjustment (covers the modulation range)
};

struct SymbolClassReport {
    struct Entry {
        std::string multiindex;  // e.g. "d d S"
        double worst_ratio = 0;
        double worst_r = 0;
    };
    std::vector<Entry> entries;
    double ceiling = 10.0;
    bool pass = true;
};

// Check |Z^J g| <= ceiling * <r>^order for |J| <= max_vf with Z in {d_r, S};
// rotations vanish on radial functions. Uses 4th-order centered differences
// with step max(1e-3, 1e-3*r).
SymbolClassReport verify_symbol_class(const std::function<double(double)>& fn, double order,
                                      int max_vf, double ceiling = 10.0);

// Sampled-array variant; requires spacing fine enough for the finite
// differences at the smallest radius (InsufficientSampling otherwise).
SymbolClassReport verify_symbol_class_sampled(const std::vector<double>& r,
                                              const std::vector<double>& g, double order,
                                              int max_vf, double ceiling = 10.0);

}  // namespace wavetail
