#pragma once

#include "wavetail/par.hpp"

namespace wavetail {

// Brute-force quadrature of the backward-cone integral
//   I(t,r) = integral over D_tr of rho <rho>^-alpha <s+rho>^-beta <s-rho>^-eta dA,
// D_tr = {(rho,s): -(t+r) <= s-rho <= t-r, |t-r| <= s+rho <= t+r, rho,s >= 0}.
// This is the quantity that controls r*psi for a source bounded by the
// (alpha,beta,eta) weights, so fitted slopes of I check the cone conversions.
struct ConeOracle {
    double alpha = 2.5, beta = 0.0, eta = 0.0;
    double rel_tol = 1e-3;
    Exec exec = default_exec();

    // Converged value; refines the panel mesh until two successive levels
    // agree to rel_tol. Throws QuadratureNotConverged otherwise.
    double value(double t, double r) const;

    // Single-level evaluation on a fixed mesh (deterministic, parallel over
    // panels with ordered reduction).
    double value_at_level(double t, double r, int level) const;
};

// Vertical extent of a constant-rho slice of D_tr above the s = rho diagonal;
// bounded by 2*min(rho, r, max(u,0))-type cutoffs and used to size panels.
double dtr_slice_height_above_diagonal(double t, double r, double rho);

}  // namespace wavetail
