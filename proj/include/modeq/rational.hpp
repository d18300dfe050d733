#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>

#include "modeq/errors.hpp"

namespace modeq {

using Int = mpz_class;
using Rat = mpq_class;

// Small exact fraction for series exponents. Numerators stay tiny (a few
// thousand at most), so plain 64-bit arithmetic is enough.
struct Frac {
    long long n = 0;
    long long d = 1;

    Frac() = default;
    Frac(long long num, long long den = 1) : n(num), d(den) { reduce(); }

    void reduce() {
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n == 0) d = 1;
    }

    bool operator==(const Frac& o) const { return n == o.n && d == o.d; }
    bool operator!=(const Frac& o) const { return !(*this == o); }
    bool operator<(const Frac& o) const { return n * o.d < o.n * d; }
    bool operator<=(const Frac& o) const { return n * o.d <= o.n * d; }
    bool operator>(const Frac& o) const { return o < *this; }
    bool operator>=(const Frac& o) const { return o <= *this; }

    Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
    Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
    Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
    Frac operator-() const { Frac f; f.n = -n; f.d = d; return f; }

    bool is_integer() const { return d == 1; }
    double to_double() const { return double(n) / double(d); }

    std::string str() const {
        if (d == 1) return std::to_string(n);
        return std::to_string(n) + "/" + std::to_string(d);
    }
};

inline long long llgcd(long long a, long long b) { return std::gcd(a, b); }
inline long long lllcm(long long a, long long b) { return a / std::gcd(a, b) * b; }

// gmpxx has no long long overloads; long is 64-bit on every target we build.
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }
inline Rat to_rat(long long v) { return Rat(static_cast<long>(v)); }

// Ring hooks for the exact-rational coefficient type. The residue ring in
// modring.hpp provides the same surface, so series/polynomial code can be
// instantiated over either.
namespace ring {

inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }

inline Rat inv(const Rat& x) {
    if (x == 0) throw ZeroLeadingCoefficient("inverse of zero rational");
    return 1 / x;
}

inline Rat from_long_like(const Rat&, long long v) { return to_rat(v); }
inline Rat from_rat_like(const Rat&, const Rat& q) { return q; }

inline std::string str(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    return c.get_str();
}

} // namespace ring

inline Rat rat_pow(const Rat& base, long long k) {
    if (k == 0) return Rat(1);
    Rat b = base;
    if (k < 0) { b = ring::inv(b); k = -k; }
    Rat acc(1);
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

} // namespace modeq
