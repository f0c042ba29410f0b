#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "orbitlab/errors.hpp"

namespace orbitlab {

/// Exact rational over int64 with overflow detection.
///
/// All geometry in this library is dyadic and all trace values are small
/// fractions, so 64-bit components are ample; any computation that would
/// leave the range throws RationalOverflowError instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw RationalOverflowError("rational with zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    /// True when the denominator is a power of two (canonical reduced form).
    bool is_dyadic() const {
        long long d = den_;
        while ((d & 1) == 0) d >>= 1;
        return d == 1;
    }

    /// log2 of the denominator for dyadic values.
    int dyadic_level() const {
        long long d = den_;
        int lvl = 0;
        while ((d & 1) == 0) {
            d >>= 1;
            ++lvl;
        }
        if (d != 1) throw InvariantViolationError("dyadic_level of non-dyadic rational");
        return lvl;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make_checked(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make_checked(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make_checked((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw RationalOverflowError("rational division by zero");
        return make_checked((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return (double)num_ / (double)den_; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// 2^-level
    static Rational pow2(int level) {
        if (level >= 0) {
            if (level > 62) throw RationalOverflowError("pow2 level too deep");
            return Rational(1, 1LL << level);
        }
        if (level < -62) throw RationalOverflowError("pow2 level too deep");
        return Rational(1LL << (-level), 1);
    }

    static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
    static Rational abs(const Rational& a) { return a.num_ < 0 ? -a : a; }

private:
    static Rational make_checked(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            Rational r;
            r.num_ = 0;
            r.den_ = 1;
            return r;
        }
        // Strip common powers of two first; when the remaining denominator is
        // a power of two the fraction is already reduced (dyadic fast path).
        while ((n & 1) == 0 && (d & 1) == 0) {
            n >>= 1;
            d >>= 1;
        }
        if ((d & (d - 1)) != 0) {
            __int128 g = gcd128(n < 0 ? -n : n, d);
            if (g > 1) {
                n /= g;
                d /= g;
            }
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw RationalOverflowError("rational out of 64-bit range");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    long long num_;
    long long den_;
};

}  // namespace orbitlab
