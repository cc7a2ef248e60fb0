#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wavetail {

// Exact rational on int64 with overflow-checked arithmetic. Exponent algebra
// stays tiny, so a checked int64 representation is plenty.
class Rat {
  public:
    constexpr Rat() : num_(0), den_(1) {}
    constexpr Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rat from_double(double x) {
        // Exact conversion: every finite double is m * 2^e with a 53-bit m.
        if (x != x) throw std::invalid_argument("Rat::from_double: nan");
        if (x == 0.0) return Rat(0);
        int k = 0;
        double f = std::frexp(x, &k);  // x = f * 2^k, |f| in [0.5, 1)
        long long m = static_cast<long long>(f * 9007199254740992.0);  // f * 2^53
        int e = k - 53;
        if (e >= 0) {
            if (e > 9) throw std::overflow_error("Rat::from_double: magnitude too large");
            return Rat(m << e, 1);
        }
        if (-e > 62) throw std::overflow_error("Rat::from_double: magnitude too small");
        return Rat(m, 1LL << (-e));
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat::make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat::make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat::make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat::make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return i128(a.num_) * b.den_ < i128(b.num_) * a.den_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return i128(a.num_) * b.den_ <= i128(b.num_) * a.den_; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    // Exact three-way comparison against a double (every double is rational).
    int compare_double(double x) const {
        Rat r = Rat::from_double(x);
        if (*this == r) return 0;
        return (*this < r) ? -1 : 1;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    using i128 = __int128;

    static Rat make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: overflow");
        Rat r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        Rat r = make(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    long long num_, den_;
};

}  // namespace wavetail
