#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "modeq/rational.hpp"

namespace modeq {

bool is_prime_ll(long long n);

// Legendre symbol (a|p) for odd prime p.
int legendre(long long a, long long p);

// Validated parameter tuple for a double eta-quotient w_{p1,p2}^e. When the
// primes are distinct, p1 is odd by convention (so p2 may be 2).
struct ParamSet {
    long long p1 = 0;
    long long p2 = 0;
    long long N = 0;      // p1 * p2
    long long s = 0;      // 24 / gcd(24, (p1-1)(p2-1))
    long long e = 0;      // divisor of s from the parameter table, e != s
    long long delta = 0;  // s / e
    Frac r;               // (p1-1)(p2-1)/24
    long long t = 0;      // r e = t / delta, gcd(t, delta) = 1
    int sign = 0;         // (-1)^{delta+1}
    long long degree = 0; // psi(N)

    Frac re() const { return r * Frac(e); }

    ParamSet swapped() const {
        ParamSet q = *this;
        q.p1 = p2;
        q.p2 = p1;
        return q;
    }
};

// Look up (e, delta) for the pair and validate every invariant. An explicit
// e may be passed but must match the table row.
ParamSet derive_params(long long p1, long long p2,
                       std::optional<long long> explicit_e = std::nullopt);

} // namespace modeq
