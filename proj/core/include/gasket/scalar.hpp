#pragma once

#include <cassert>
#include <cstdint>
#include <ostream>
#include <string>

namespace gasket {

/// Exact number of the form (a + b*sqrt(2)) * 2^e with integer a, b, e.
///
/// This ring is closed under +, -, * and contains every scalar that appears
/// in the states handled here: powers of 1/sqrt(2) from gate and isometry
/// weights, and dyadic rationals from counting. Equality is decided exactly.
///
/// Canonical form: a and b are not both even unless the value is zero
/// (zero is stored as {0, 0, 0}).
struct ExactScalar {
    std::int64_t a = 0;
    std::int64_t b = 0;
    int e = 0;

    ExactScalar() = default;
    ExactScalar(std::int64_t a_, std::int64_t b_, int e_) : a(a_), b(b_), e(e_) { normalize(); }

    static ExactScalar zero() { return {}; }
    static ExactScalar one() { return {1, 0, 0}; }
    /// 2^k (k may be negative).
    static ExactScalar pow2(int k) { return {1, 0, k}; }
    /// sqrt(2)^k, e.g. inv_sqrt2_pow(3) = 1/(2*sqrt(2)).
    static ExactScalar sqrt2_pow(int k) {
        if (k % 2 == 0) return {1, 0, k / 2};
        // sqrt(2)^(2m+1) = 2^m * sqrt2; for negative odd k, k = 2m+1 with m = (k-1)/2.
        int m = (k - (k % 2 + 2) % 2) / 2;
        return {0, 1, m};
    }

    bool is_zero() const { return a == 0 && b == 0; }

    void normalize() {
        if (a == 0 && b == 0) {
            e = 0;
            return;
        }
        while (a % 2 == 0 && b % 2 == 0) {
            a /= 2;
            b /= 2;
            ++e;
        }
    }

    friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
        if (x.is_zero() || y.is_zero()) return {};
        // (a + b*s)(c + d*s) = (ac + 2bd) + (ad + bc)s  with s = sqrt(2)
        __int128 a = (__int128)x.a * y.a + 2 * (__int128)x.b * y.b;
        __int128 b = (__int128)x.a * y.b + (__int128)x.b * y.a;
        assert(a <= INT64_MAX && a >= INT64_MIN && b <= INT64_MAX && b >= INT64_MIN);
        return {(std::int64_t)a, (std::int64_t)b, x.e + y.e};
    }

    friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        int e = x.e < y.e ? x.e : y.e;
        int sx = x.e - e, sy = y.e - e;
        assert(sx < 62 && sy < 62);
        __int128 a = ((__int128)x.a << sx) + ((__int128)y.a << sy);
        __int128 b = ((__int128)x.b << sx) + ((__int128)y.b << sy);
        assert(a <= INT64_MAX && a >= INT64_MIN && b <= INT64_MAX && b >= INT64_MIN);
        return {(std::int64_t)a, (std::int64_t)b, e};
    }

    friend ExactScalar operator-(const ExactScalar& x) { return x.is_zero() ? x : ExactScalar{-x.a, -x.b, x.e}; }
    friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) { return x + (-y); }

    ExactScalar& operator+=(const ExactScalar& y) { return *this = *this + y; }
    ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }

    friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
        return x.a == y.a && x.b == y.b && (x.e == y.e || (x.is_zero() && y.is_zero()));
    }
    friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

    /// Strict total order (by value along the real line is unnecessary;
    /// lexicographic on the canonical form is enough for map keys).
    friend bool operator<(const ExactScalar& x, const ExactScalar& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.e < y.e;
    }

    std::string str() const {
        return "(" + std::to_string(a) + (b < 0 ? "" : "+") + std::to_string(b) + "*sqrt2)*2^" +
               std::to_string(e);
    }
    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }
};

} // namespace gasket
