#pragma once

#include <cstdint>
#include <string>

#include "modeq/errors.hpp"
#include "modeq/rational.hpp"

namespace modeq {

// Residue-class coefficient for the CRT pipelines. Every value carries its
// modulus; a modulus of 0 marks a "detached" small integer (only 0/1 in
// practice, produced by identity elements) that adopts the other operand's
// modulus on first combination.
struct Mod {
    std::uint64_t v = 0;
    std::uint64_t m = 0;

    Mod() = default;
    Mod(std::uint64_t value, std::uint64_t modulus) : v(value), m(modulus) {
        if (m) v %= m;
    }

    static Mod from_int(const Int& z, std::uint64_t modulus) {
        Int r = z % Int(modulus);
        if (r < 0) r += Int(modulus);
        return Mod(r.get_ui(), modulus);
    }
};

namespace detail {

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a %= m; b %= m;
    std::uint64_t s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a %= m; b %= m;
    return a >= b ? a - b : a + m - b;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)a * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) acc = mulmod(acc, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return acc;
}

inline std::uint64_t pick_modulus(const Mod& a, const Mod& b) {
    if (a.m && b.m && a.m != b.m)
        throw InvariantViolation("mixed moduli in residue arithmetic");
    return a.m ? a.m : b.m;
}

} // namespace detail

inline Mod operator+(const Mod& a, const Mod& b) {
    std::uint64_t m = detail::pick_modulus(a, b);
    if (!m) return Mod{a.v + b.v, 0};
    return Mod(detail::addmod(a.v, b.v, m), m);
}

inline Mod operator-(const Mod& a, const Mod& b) {
    std::uint64_t m = detail::pick_modulus(a, b);
    if (!m) {
        if (b.v > a.v) throw InvariantViolation("detached residue went negative");
        return Mod{a.v - b.v, 0};
    }
    return Mod(detail::submod(a.v, b.v, m), m);
}

inline Mod operator*(const Mod& a, const Mod& b) {
    std::uint64_t m = detail::pick_modulus(a, b);
    if (!m) return Mod{a.v * b.v, 0};
    return Mod(detail::mulmod(a.v % m, b.v % m, m), m);
}

inline Mod operator-(const Mod& a) {
    if (!a.m) {
        if (a.v == 0) return a;
        throw InvariantViolation("negation of detached residue");
    }
    return Mod(a.v ? a.m - a.v : 0, a.m);
}

inline Mod& operator+=(Mod& a, const Mod& b) { a = a + b; return a; }
inline Mod& operator-=(Mod& a, const Mod& b) { a = a - b; return a; }
inline Mod& operator*=(Mod& a, const Mod& b) { a = a * b; return a; }

inline bool operator==(const Mod& a, const Mod& b) {
    if (a.m && b.m && a.m != b.m) return false;
    std::uint64_t m = a.m ? a.m : b.m;
    if (!m) return a.v == b.v;
    return a.v % m == b.v % m;
}
inline bool operator!=(const Mod& a, const Mod& b) { return !(a == b); }

namespace ring {

inline bool is_zero(const Mod& x) { return x.m ? (x.v % x.m == 0) : x.v == 0; }
inline bool is_integral(const Mod&) { return true; }

inline Mod zero_like(const Mod& x) { return Mod(0, x.m); }
inline Mod one_like(const Mod& x) { return Mod(x.m ? 1 % x.m : 1, x.m); }

inline Mod inv(const Mod& x) {
    if (!x.m) throw InvariantViolation("inverse of detached residue");
    if (x.v % x.m == 0) throw ZeroLeadingCoefficient("inverse of zero residue");
    // modulus is prime in every pipeline
    return Mod(detail::powmod(x.v, x.m - 2, x.m), x.m);
}

inline Mod from_long_like(const Mod& x, long long v) {
    if (!x.m) throw InvariantViolation("integer embed needs attached residue");
    std::uint64_t r = std::uint64_t(v % (long long)x.m + (long long)x.m) % x.m;
    return Mod(r, x.m);
}

inline Mod from_rat_like(const Mod& x, const Rat& q) {
    if (!x.m) throw InvariantViolation("rational embed needs attached residue");
    Mod num = Mod::from_int(Int(q.get_num()), x.m);
    Mod den = Mod::from_int(Int(q.get_den()), x.m);
    return num * inv(den);
}

inline std::string str(const Mod& x) { return std::to_string(x.m ? x.v % x.m : x.v); }

} // namespace ring

} // namespace modeq
