#pragma once

#include <optional>
#include <utility>

#include "wavetail/decay_bound.hpp"
#include "wavetail/nonlinearity.hpp"

namespace wavetail {

// Options shared by the cone conversions. sigma resolves exponent
// comparisons; alpha3_waiver accepts a source whose <r> exponent is exactly 3
// as the limit of sigma-perturbed values (exact output, no log tracked).
struct ConvertOpts {
    double sigma = 0.5;
    bool alpha3_waiver = false;
};

// Solution bound from a cone-integrable source, interior branch:
// source <r>^-alpha <v>^-beta <u>^-eta, output <r>^-1 <u>^-(alpha+beta+eta~-1)
// with eta~ = eta-2 below the eta=1 threshold and -1 above it.
// Valid on {u>1} unconditionally and on {u<-1} when alpha+beta+eta > 3.
DecayBound convert_cone_interior(const DecayBound& src, const ConvertOpts& opts);

// Exterior branch: requires u<-1 and alpha+beta+eta < 3 strictly; output
// r^-(alpha+beta+eta-2) with no u or v weight.
DecayBound convert_cone_exterior(const DecayBound& src, const ConvertOpts& opts);

// Variant for d_t-structured cone-supported sources (alpha, eta): one power of
// <u> better than the interior branch at beta = 0.
DecayBound convert_dt_source(const DecayBound& src, const ConvertOpts& opts);

// First derivatives gain mu^-1, mu = <min(r,|t-r|)>, modeled as <v>/(<r><u>).
DecayBound derivative_gain(const DecayBound& bound);

// Tangential derivatives: dbar phi = (mu u / v') d phi + (1/v') Z phi, so the
// bound is the weaker of (<u>/<v>) * dphi and <v>^-1 * phi.
DecayBound tangential_gain(const DecayBound& phi, const DecayBound& dphi, double sigma);

// Pointwise second-derivative estimate: weaker of (1/<r>+1/<u>)|dphi|,
// (1+t/<u>)<r>^-2 |phi| and (1+t/<u>)|src|, with 1+t/<u> modeled as <v><u>^-1.
// Pieces with no bound (identically-zero fields) are skipped.
DecayBound second_derivative_bound(const std::optional<DecayBound>& dphi,
                                   const std::optional<DecayBound>& phi,
                                   const std::optional<DecayBound>& src, double sigma);

// Source bound for one nonlinear term from the prevailing bound on the field:
// (<u>/<v>)^T mu^-J' times N copies of the current bound, J' = min(J,3).
DecayBound source_bound_nonlinear(const NonlinearTerm& term, const DecayBound& current, double sigma);

// Linear sources split per the coefficient classes: h1 from the
// <r>^-(2+sigma)-weighted field plus the off-cone <r>^-(1+sigma) derivative
// piece (off the cone mu ~ <r>, so both land at current + (2+sigma,0,0));
// h2 is the cone-supported d_t-structured <r>^-(1+sigma) piece.
std::pair<DecayBound, DecayBound> source_bound_linear(double sigma, const DecayBound& current);

// Trade one power of <r> for one power of <v> in {r < 3t/4}: needs the
// improvement q over the previous t-form bound to satisfy q >= delta and
// delta <= 1.
DecayBound interiorize(const DecayBound& bound, const Sym& q, const Sym& delta, double sigma);

// r^gamma-estimate seed for the phi^2 dphi nonlinear track:
// interior <r>^-1 <u>^(1/2-gamma/2), exterior r^-(1+gamma)/2.
std::pair<DecayBound, DecayBound> rp_jumpstart(const Sym& gamma, double sigma);

}  // namespace wavetail
