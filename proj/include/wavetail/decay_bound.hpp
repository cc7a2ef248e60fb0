#pragma once

#include <optional>
#include <string>

#include "wavetail/errors.hpp"
#include "wavetail/symbolic.hpp"

namespace wavetail {

// Spacetime region a bound is claimed on. Interior means {t-r > 1}, exterior
// {t-r < -1}; a global bound holds on both.
enum class Region { Interior, Exterior, Global };

inline const char* region_name(Region r) {
    switch (r) {
        case Region::Interior: return "interior";
        case Region::Exterior: return "exterior";
        case Region::Global: return "global";
    }
    return "?";
}

// |f| <= C <r>^-a <v>^-b <u>^-e on the tagged region, v = t+r, u = t-r.
// Constants are never tracked. Two flags mark structural facts about source
// terms: dt_structured (the source is a time derivative) and cone_supported
// (supported in 1/2 <= r/t <= 3/2).
struct DecayBound {
    Sym a, b, e;
    Region region = Region::Global;
    bool dt_structured = false;
    bool cone_supported = false;

    DecayBound() = default;
    DecayBound(Sym a_, Sym b_, Sym e_, Region reg = Region::Global) : a(a_), b(b_), e(e_), region(reg) {}

    bool same_exponents(const DecayBound& o) const { return a == o.a && b == o.b && e == o.e; }

    std::string str() const {
        return "(" + a.str() + "," + b.str() + "," + e.str() + ";" + region_name(region) + ")";
    }
};

inline DecayBound operator+(const DecayBound& x, const DecayBound& y) {
    DecayBound r(x.a + y.a, x.b + y.b, x.e + y.e, x.region);
    r.dt_structured = x.dt_structured || y.dt_structured;
    r.cone_supported = x.cone_supported || y.cone_supported;
    return r;
}

inline DecayBound scale_bound(long long k, const DecayBound& x) {
    return DecayBound(k * x.a, k * x.b, k * x.e, x.region);
}

// Characteristic decay exponents along the extreme directions of a region.
// Interior ({1 <= r, 1 <= u, v ~ r+u}): decay along the r-ray is a+b, along
// the u-ray b+e, along the diagonal a+b+e. A monomial bound's decay along any
// direction interpolates these, so domination, least-common-weakening (join)
// and best-common-strengthening (meet) are componentwise on (p,q,s).
// Exterior ({1 <= |u| <= r ~ v}) has two functionals: (a+b, a+b+e).
struct Chars {
    Sym p, q, s;
    bool has_q = true;
};

inline Chars chars_of(const DecayBound& x, Region reg) {
    Chars c;
    c.p = x.a + x.b;
    c.s = x.a + x.b + x.e;
    if (reg == Region::Exterior) {
        c.has_q = false;
        c.q = Sym(0);
    } else {
        c.q = x.b + x.e;
    }
    return c;
}

inline DecayBound bound_from_chars(const Chars& c, Region reg) {
    if (!c.has_q) return DecayBound(c.p, Sym(0), c.s - c.p, reg);
    return DecayBound(c.s - c.q, c.p + c.q - c.s, c.s - c.p, reg);
}

inline Region merge_region(Region x, Region y) {
    if (x == y) return x;
    if (x == Region::Global) return y;
    if (y == Region::Global) return x;
    fail(ErrKind::RegionMismatch, std::string(region_name(x)) + " vs " + region_name(y));
}

// Fold the <v> weight into <r> (exact equivalence when r ~ v, i.e. exterior).
inline DecayBound canon(const DecayBound& x) {
    if (x.region != Region::Exterior) return x;
    DecayBound r(x.a + x.b, Sym(0), x.e, Region::Exterior);
    r.dt_structured = x.dt_structured;
    r.cone_supported = x.cone_supported;
    return r;
}

// Restrict a bound to a subregion (global -> interior/exterior).
inline DecayBound restrict_to(const DecayBound& x, Region reg) {
    DecayBound r = x;
    r.region = merge_region(x.region, reg);
    return canon(r);
}

// True iff x is at least as strong as y everywhere on reg (x <= y pointwise).
inline bool dominates(const DecayBound& x, const DecayBound& y, Region reg, double sigma) {
    Chars cx = chars_of(canon(restrict_to(x, reg)), reg);
    Chars cy = chars_of(canon(restrict_to(y, reg)), reg);
    if (sym_cmp(cx.p, cy.p, sigma) < 0) return false;
    if (sym_cmp(cx.s, cy.s, sigma) < 0) return false;
    if (cx.has_q && sym_cmp(cx.q, cy.q, sigma) < 0) return false;
    return true;
}

// Weakest common bound: valid for a sum |f1 + f2| when each |fi| obeys its
// bound. Componentwise min of the characteristic exponents.
inline DecayBound join(const DecayBound& x, const DecayBound& y, double sigma) {
    Region reg = merge_region(x.region, y.region);
    Chars cx = chars_of(canon(restrict_to(x, reg)), reg);
    Chars cy = chars_of(canon(restrict_to(y, reg)), reg);
    Chars c;
    c.has_q = cx.has_q;
    c.p = sym_min(cx.p, cy.p, sigma);
    c.s = sym_min(cx.s, cy.s, sigma);
    if (c.has_q) c.q = sym_min(cx.q, cy.q, sigma);
    return bound_from_chars(c, reg);
}

// Best single monomial implied when both bounds hold: least monomial majorant
// of min(B1, B2) on the region (the min(<r>,<u>) split handled as the worse of
// the two splits). Componentwise max of characteristics.
inline DecayBound meet(const DecayBound& x, const DecayBound& y, double sigma) {
    Region reg = merge_region(x.region, y.region);
    Chars cx = chars_of(canon(restrict_to(x, reg)), reg);
    Chars cy = chars_of(canon(restrict_to(y, reg)), reg);
    Chars c;
    c.has_q = cx.has_q;
    c.p = sym_max(cx.p, cy.p, sigma);
    c.s = sym_max(cx.s, cy.s, sigma);
    if (c.has_q) c.q = sym_max(cx.q, cy.q, sigma);
    return bound_from_chars(c, reg);
}

}  // namespace wavetail
