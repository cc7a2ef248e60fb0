#include "wavetail/conversions.hpp"

namespace wavetail {

namespace {

const Sym kHalf(Rat(1, 2));
const Sym kOne(Rat(1));
const Sym kTwo(Rat(2));
const Sym kThree(Rat(3));

void check_common_ranges(const Sym& alpha, const Sym& beta, const Sym& eta, const ConvertOpts& o) {
    if (sym_cmp(beta, Sym(0), o.sigma) < 0)
        fail(ErrKind::ExponentOutOfRange, "beta must be >= 0, got " + beta.str());
    if (sym_cmp(eta, -kHalf, o.sigma) < 0)
        fail(ErrKind::ExponentOutOfRange, "eta must be >= -1/2, got " + eta.str());
    if (sym_cmp(alpha, kTwo, o.sigma) <= 0)
        fail(ErrKind::ExponentOutOfRange, "alpha must exceed 2, got " + alpha.str());
}

// eta~ from the two-branch definition; eta == 1 exactly is the excluded
// logarithm boundary.
Sym eta_tilde(const Sym& eta, const ConvertOpts& o) {
    int c = sym_cmp(eta, kOne, o.sigma);
    if (c == 0) fail(ErrKind::BoundaryCase, "eta = 1 exactly; perturb sigma");
    return c < 0 ? eta - kTwo : -kOne;
}

}  // namespace

DecayBound convert_cone_interior(const DecayBound& src, const ConvertOpts& opts) {
    if (src.region == Region::Global)
        fail(ErrKind::WrongRegime, "source must be tagged interior or exterior");
    const Sym alpha = src.a, beta = src.b, eta = src.e;
    check_common_ranges(alpha, beta, eta, opts);
    if (sym_cmp(alpha, kThree, opts.sigma) == 0 && !opts.alpha3_waiver)
        fail(ErrKind::BoundaryCase, "alpha = 3 exactly; perturb sigma");
    Sym total = alpha + beta + eta;
    if (src.region == Region::Exterior && sym_cmp(total, kThree, opts.sigma) <= 0)
        fail(ErrKind::WrongRegime, "exterior needs alpha+beta+eta > 3; use the exterior conversion");
    Sym out_e = alpha + beta + eta_tilde(eta, opts) - kOne;
    return DecayBound(kOne, Sym(0), out_e, src.region);
}

DecayBound convert_cone_exterior(const DecayBound& src, const ConvertOpts& opts) {
    if (src.region != Region::Exterior)
        fail(ErrKind::WrongRegime, "exterior conversion applies in u < -1 only");
    const Sym alpha = src.a, beta = src.b, eta = src.e;
    if (sym_cmp(beta, Sym(0), opts.sigma) < 0)
        fail(ErrKind::ExponentOutOfRange, "beta must be >= 0");
    if (sym_cmp(eta, -kHalf, opts.sigma) < 0)
        fail(ErrKind::ExponentOutOfRange, "eta must be >= -1/2");
    // No lower alpha range here: the exterior chain applies this with
    // alpha as low as 3/2+sigma.
    Sym total = alpha + beta + eta;
    int c = sym_cmp(total, kThree, opts.sigma);
    if (c == 0) fail(ErrKind::BoundaryCase, "alpha+beta+eta = 3 exactly");
    if (c > 0) fail(ErrKind::WrongRegime, "alpha+beta+eta > 3; use the cone-interior conversion");
    return DecayBound(total - kTwo, Sym(0), Sym(0), Region::Exterior);
}

DecayBound convert_dt_source(const DecayBound& src, const ConvertOpts& opts) {
    if (!src.dt_structured) fail(ErrKind::NotDtStructured, "source lacks the d_t structure flag");
    if (!src.cone_supported) fail(ErrKind::NotDtStructured, "source is not cone-supported");
    if (src.region == Region::Global)
        fail(ErrKind::WrongRegime, "source must be tagged interior or exterior");
    const Sym alpha = src.a + src.b;  // cone support: r ~ v, fold fully
    const Sym eta = src.e;
    if (sym_cmp(alpha, kTwo, opts.sigma) <= 0 || sym_cmp(alpha, kThree, opts.sigma) >= 0)
        fail(ErrKind::ExponentOutOfRange, "need 2 < alpha < 3, got " + alpha.str());
    if (sym_cmp(eta, -kHalf, opts.sigma) < 0)
        fail(ErrKind::ExponentOutOfRange, "eta must be >= -1/2");
    if (src.region == Region::Exterior && sym_cmp(alpha + eta, kThree, opts.sigma) <= 0)
        fail(ErrKind::WrongRegime, "exterior needs alpha+eta > 3");
    Sym out_e = alpha + eta_tilde(eta, opts);
    return DecayBound(kOne, Sym(0), out_e, src.region);
}

DecayBound derivative_gain(const DecayBound& bound) {
    DecayBound gain(kOne, -kOne, kOne, bound.region);
    return canon(bound + gain);
}

DecayBound tangential_gain(const DecayBound& phi, const DecayBound& dphi, double sigma) {
    Region reg = merge_region(phi.region, dphi.region);
    DecayBound from_d = dphi + DecayBound(Sym(0), kOne, -kOne, dphi.region);
    DecayBound from_z = phi + DecayBound(Sym(0), kOne, Sym(0), phi.region);
    from_d.region = reg;
    from_z.region = reg;
    return join(canon(from_d), canon(from_z), sigma);
}

DecayBound second_derivative_bound(const std::optional<DecayBound>& dphi,
                                   const std::optional<DecayBound>& phi,
                                   const std::optional<DecayBound>& src, double sigma) {
    std::optional<DecayBound> acc;
    Region reg = Region::Global;
    bool have_reg = false;
    auto add = [&](const DecayBound& piece) {
        DecayBound p = canon(piece);
        if (!have_reg) {
            reg = p.region;
            have_reg = true;
        } else {
            reg = merge_region(reg, p.region);
        }
        acc = acc ? join(*acc, p, sigma) : p;
    };
    if (dphi) add(*dphi + DecayBound(kOne, -kOne, kOne, dphi->region));
    if (phi) add(*phi + DecayBound(kTwo, -kOne, kOne, phi->region));
    if (src) add(*src + DecayBound(Sym(0), -kOne, kOne, src->region));
    if (!acc) fail(ErrKind::ValidationError, "all inputs empty");
    return *acc;
}

DecayBound source_bound_nonlinear(const NonlinearTerm& term, const DecayBound& current, double sigma) {
    (void)sigma;
    term.validate();
    int jp = term.derivs < 3 ? term.derivs : 3;
    int tp = term.tangential < jp ? term.tangential : jp;
    DecayBound out = scale_bound(term.factors, current);
    out = out + scale_bound(jp, DecayBound(kOne, -kOne, kOne, current.region));
    out = out + scale_bound(tp, DecayBound(Sym(0), kOne, -kOne, current.region));
    return canon(out);
}

std::pair<DecayBound, DecayBound> source_bound_linear(double sigma, const DecayBound& current) {
    Sym w2(Rat(2), Rat(1));  // 2 + sigma
    Sym w1(Rat(1), Rat(1));  // 1 + sigma
    DecayBound h1 = current + DecayBound(w2, Sym(0), Sym(0), current.region);
    h1 = canon(h1);
    if (h1.region == Region::Exterior && sym_cmp(h1.e, Sym(0), sigma) < 0) {
        // weaken <u> growth into <r> decay (|u| <= r outside the cone)
        h1 = DecayBound(h1.a + h1.e, h1.b, Sym(0), Region::Exterior);
    }
    DecayBound h2 = current + DecayBound(w1, Sym(0), Sym(0), current.region);
    h2 = canon(h2);
    h2.dt_structured = true;
    h2.cone_supported = true;
    return {h1, h2};
}

DecayBound interiorize(const DecayBound& bound, const Sym& q, const Sym& delta, double sigma) {
    if (sym_cmp(bound.a, kOne, sigma) < 0)
        fail(ErrKind::ExponentOutOfRange, "need at least one full power of <r>");
    if (sym_cmp(q, delta, sigma) < 0)
        fail(ErrKind::HypothesisFailed,
             "q = " + q.str() + " < delta = " + delta.str() + "; re-choose the jumpstart delta");
    if (sym_cmp(delta, kOne, sigma) > 0)
        fail(ErrKind::HypothesisFailed, "delta = " + delta.str() + " > 1");
    return DecayBound(bound.a - kOne, bound.b + kOne, bound.e, Region::Interior);
}

std::pair<DecayBound, DecayBound> rp_jumpstart(const Sym& gamma, double sigma) {
    double g = gamma.eval(sigma);
    if (!(g > 0.5) || !(g < 1.0) || !(g < 2.0 * sigma))
        fail(ErrKind::GammaOutOfRange,
             "need 1/2 < gamma < min(1, 2 sigma), got gamma = " + gamma.str());
    Rat half(1, 2);
    Sym interior_e = half * gamma - Sym(half);  // e = gamma/2 - 1/2
    DecayBound interior(kOne, Sym(0), interior_e, Region::Interior);
    Sym ext_a = half * (gamma + kOne);
    DecayBound exterior(ext_a, Sym(0), Sym(0), Region::Exterior);
    return {interior, exterior};
}

}  // namespace wavetail
