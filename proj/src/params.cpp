#include "modeq/params.hpp"

#include <algorithm>

#include "modeq/errors.hpp"

namespace modeq {

bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int legendre(long long a, long long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    // Euler's criterion; p stays small here.
    long long r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

namespace {

// Primes are classified by 2, 3, or their residue mod 12; pairs of classes
// map to (s, e, delta). Classes 1 mod 12 admit no equation.
struct TableRow {
    long long c1, c2, s, e, delta;
};

constexpr TableRow kTable[] = {
    {2, 2, 24, 8, 3},
    {2, 5, 6, 2, 3},
    {2, 11, 12, 4, 3},
    {3, 3, 6, 3, 2},
    {3, 7, 2, 1, 2},
    {3, 11, 6, 3, 2},
    {5, 5, 3, 1, 3},
    {5, 11, 3, 1, 3},
    {7, 7, 2, 1, 2},
    {7, 11, 2, 1, 2},
    {11, 11, 6, 1, 6},
};

long long class_of(long long p) {
    if (p == 2 || p == 3) return p;
    return p % 12; // 1, 5, 7, or 11
}

} // namespace

ParamSet derive_params(long long p1, long long p2,
                       std::optional<long long> explicit_e) {
    if (!is_prime_ll(p1) || !is_prime_ll(p2))
        throw UnsupportedPair("both parameters must be prime, got (" +
                              std::to_string(p1) + ", " + std::to_string(p2) + ")");
    if (p1 != p2 && p1 == 2) std::swap(p1, p2); // keep p1 odd when distinct

    long long c1 = class_of(p1), c2 = class_of(p2);
    const TableRow* row = nullptr;
    for (const auto& r : kTable) {
        if ((r.c1 == c1 && r.c2 == c2) || (r.c1 == c2 && r.c2 == c1)) {
            row = &r;
            break;
        }
    }
    if (!row)
        throw UnsupportedPair("no parameter row for (" + std::to_string(p1) + ", " +
                              std::to_string(p2) + ")");

    ParamSet ps;
    ps.p1 = p1;
    ps.p2 = p2;
    ps.N = p1 * p2;
    ps.s = 24 / llgcd(24, (p1 - 1) * (p2 - 1));
    if (ps.s != row->s)
        throw InvariantViolation("computed s=" + std::to_string(ps.s) +
                                 " disagrees with the table row");
    ps.e = row->e;
    if (explicit_e && *explicit_e != ps.e)
        throw UnsupportedPair("e=" + std::to_string(*explicit_e) +
                              " is not the admissible exponent for this pair (want " +
                              std::to_string(ps.e) + ")");
    ps.delta = ps.s / ps.e;
    ps.r = Frac((p1 - 1) * (p2 - 1), 24);
    Frac re = ps.r * Frac(ps.e);
    // r e = t / delta as an irreducible fraction
    if (re.d != ps.delta && !(re.d == 1 && ps.delta == 1))
        throw InvariantViolation("r*e = " + re.str() + " has denominator != delta=" +
                                 std::to_string(ps.delta));
    ps.t = re.n * (ps.delta / re.d);
    if (llgcd(ps.t, ps.delta) != 1)
        throw InvariantViolation("gcd(t, delta) != 1");
    ps.sign = (ps.delta % 2 == 0) ? -1 : 1; // (-1)^{delta+1}
    if (ps.N % ps.delta != 1)
        throw InvariantViolation("N is not 1 mod delta");
    for (long long p : {p1, p2})
        if ((p + 1) % ps.delta != 0)
            throw InvariantViolation("p=" + std::to_string(p) + " is not -1 mod delta");
    ps.degree = (p1 == p2) ? p1 * p1 + p1 : (p1 + 1) * (p2 + 1);
    return ps;
}

} // namespace modeq
