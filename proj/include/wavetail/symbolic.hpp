#pragma once

#include <string>

#include "wavetail/rational.hpp"

namespace wavetail {

// Exact element of Q + Q*s where s stands for the background decay increment
// sigma. Equality is structural; ordering is resolved against a concrete
// numeric sigma. Keeping exponents in this field means the excluded boundary
// cases (eta = 1, alpha = 3) can be detected structurally instead of by a
// floating-point tolerance.
struct Sym {
    Rat q1;  // rational part
    Rat q2;  // coefficient of sigma

    constexpr Sym() = default;
    Sym(Rat a) : q1(a), q2(0) {}
    Sym(Rat a, Rat b) : q1(a), q2(b) {}
    Sym(long long a) : q1(a), q2(0) {}
    static Sym sigma() { return Sym(Rat(0), Rat(1)); }

    double eval(double sigma_value) const { return q1.to_double() + q2.to_double() * sigma_value; }

    friend Sym operator+(const Sym& a, const Sym& b) { return Sym(a.q1 + b.q1, a.q2 + b.q2); }
    friend Sym operator-(const Sym& a, const Sym& b) { return Sym(a.q1 - b.q1, a.q2 - b.q2); }
    Sym operator-() const { return Sym(-q1, -q2); }
    friend Sym operator*(const Rat& c, const Sym& a) { return Sym(c * a.q1, c * a.q2); }
    friend Sym operator*(long long c, const Sym& a) { return Rat(c) * a; }
    Sym& operator+=(const Sym& o) { return *this = *this + o; }
    Sym& operator-=(const Sym& o) { return *this = *this - o; }

    friend bool operator==(const Sym& a, const Sym& b) { return a.q1 == b.q1 && a.q2 == b.q2; }
    friend bool operator!=(const Sym& a, const Sym& b) { return !(a == b); }

    bool is_rational() const { return q2 == Rat(0); }

    // Sign of q1 + q2*sigma, exact: sigma (a double) is itself a rational, so
    // the comparison q1 + q2*sigma <> 0 reduces to exact Rat arithmetic.
    int sign_at(double sigma_value) const {
        if (q2 == Rat(0)) return q1.sign();
        // q1 + q2*sigma <> 0  <=>  sigma <> -q1/q2 (sign of q2 decides the direction)
        Rat threshold = -q1 / q2;
        int c = threshold.compare_double(sigma_value);  // threshold <=> sigma
        // c<0: threshold < sigma => q1+q2*sigma has the sign of q2
        if (c == 0) return 0;
        return (c < 0) ? q2.sign() : -q2.sign();
    }

    std::string str() const {
        if (q2 == Rat(0)) return q1.str();
        std::string s;
        if (q1 != Rat(0)) s = q1.str();
        if (q2 == Rat(1)) s += s.empty() ? "s" : "+s";
        else if (q2 == Rat(-1)) s += "-s";
        else {
            if (!s.empty() && q2.sign() > 0) s += "+";
            s += q2.str() + "s";
        }
        return s;
    }
};

// Comparisons against a supplied sigma. Total for generic sigma; exact ties
// (possible when sigma is rational) compare equal.
inline int sym_cmp(const Sym& a, const Sym& b, double sigma) { return (a - b).sign_at(sigma); }
inline bool sym_lt(const Sym& a, const Sym& b, double sigma) { return sym_cmp(a, b, sigma) < 0; }
inline bool sym_le(const Sym& a, const Sym& b, double sigma) { return sym_cmp(a, b, sigma) <= 0; }
inline Sym sym_min(const Sym& a, const Sym& b, double sigma) { return sym_le(a, b, sigma) ? a : b; }
inline Sym sym_max(const Sym& a, const Sym& b, double sigma) { return sym_le(a, b, sigma) ? b : a; }

}  // namespace wavetail
