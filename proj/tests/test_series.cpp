#include "doctest.h"

#include <random>

#include "modeq/modring.hpp"
#include "modeq/series.hpp"

using namespace modeq;

namespace {

using S = FracSeries<Rat>;

S make(long long denom, long long trunc,
       std::vector<std::pair<long long, long long>> terms) {
    std::vector<std::pair<long long, Rat>> t;
    for (auto& [e, c] : terms) t.push_back({e, Rat(c)});
    return S::from_terms(denom, trunc, std::move(t));
}

// uniform random series with small integer coefficients
S random_series(std::mt19937& rng, long long denom, long long lo, long long hi,
                bool unit_lead = false) {
    std::uniform_int_distribution<long long> coeff(-5, 5);
    std::vector<std::pair<long long, Rat>> t;
    for (long long n = lo; n <= hi; ++n) t.push_back({n, Rat(coeff(rng))});
    if (unit_lead) t[0].second = Rat(1);
    S s = S::from_terms(denom, hi, std::move(t));
    if (s.is_zero()) return S::from_terms(denom, hi, {{lo, Rat(1)}});
    return s;
}

} // namespace

TEST_CASE("addition recanonicalizes the valuation") {
    // (1+q) + (-1+q) = 2q
    S a = make(1, 6, {{0, 1}, {1, 1}});
    S b = make(1, 6, {{0, -1}, {1, 1}});
    S c = a + b;
    CHECK(c.valuation() == Frac(1));
    CHECK(c.coeff_at(Frac(1)) == Rat(2));
}

TEST_CASE("addition unifies exponent denominators by lcm") {
    // q^{-1/3} + q^{-1/2} lives in denominator 6
    S a = make(3, 9, {{-1, 1}});
    S b = make(2, 6, {{-1, 1}});
    S c = a + b;
    CHECK(c.denom == 6);
    CHECK(c.lo == -3);
    CHECK(c.coeff_num(-3) == Rat(1));
    CHECK(c.coeff_num(-2) == Rat(1));
}

TEST_CASE("adding zero is the identity") {
    S a = make(1, 8, {{-1, 1}, {0, 744}, {1, 196884}});
    S z = S::zero(1, 8);
    CHECK(equal_on_common_window(a + z, a));
}

TEST_CASE("multiplication: valuations add, cross terms cancel") {
    S a = make(1, 6, {{0, 1}, {1, 1}});
    S b = make(1, 6, {{0, 1}, {1, -1}});
    S c = a * b;
    CHECK(c.coeff_at(Frac(0)) == Rat(1));
    CHECK(c.coeff_at(Frac(1)) == Rat(0));
    CHECK(c.coeff_at(Frac(2)) == Rat(-1));
}

TEST_CASE("exponent arithmetic in products") {
    // q^{-1/24} * q^{1/24} = 1
    S a = make(24, 24, {{-1, 1}});
    S b = make(24, 24, {{1, 1}});
    S c = a * b;
    CHECK(!c.is_zero());
    CHECK(c.valuation() == Frac(0));
    CHECK(c.coeff_at(Frac(0)) == Rat(1));
}

TEST_CASE("geometric series inverse") {
    S a = make(1, 10, {{0, 1}, {1, 1}});
    S inv = inverse(a);
    for (long long n = 0; n <= 10; ++n)
        CHECK(inv.coeff_num(n) == Rat((n % 2) ? -1 : 1));
}

TEST_CASE("pow: zeroth power is one, inverse of zero rejected") {
    S a = make(1, 5, {{2, 3}, {3, 1}});
    CHECK(is_one_to_trunc(pow(a, 0)));
    CHECK_THROWS_AS(inverse(S::zero(1, 5)), ZeroLeadingCoefficient);
    CHECK_THROWS_AS(pow(S::zero(1, 5), -1), ZeroLeadingCoefficient);
}

TEST_CASE("pow matches direct multiplication") {
    // (q^{-1/3}(1+248q))^2
    S a = make(3, 12, {{-1, 1}, {2, 248}});
    S sq = pow(a, 2);
    S direct = a * a;
    CHECK(equal_on_common_window(sq, direct));
    CHECK(sq.valuation() == Frac(-2, 3));
    CHECK(sq.coeff_at(Frac(1, 3)) == Rat(496));
}

TEST_CASE("coeff_at semantics") {
    S a = make(1, 4, {{0, 1}, {1, 1}});
    CHECK(a.coeff_at(Frac(1, 2)) == Rat(0));         // unrepresentable exponent
    CHECK(a.coeff_at(Frac(3)) == Rat(0));            // inside window, zero
    CHECK_THROWS_AS(a.coeff_at(Frac(5)), PrecisionExceeded);
}

TEST_CASE("sieve keeps one residue class") {
    S a = make(1, 4, {{0, 1}, {1, 1}, {2, 1}, {3, 1}});
    S s = a.sieved(2, 0);
    CHECK(s.coeff_num(0) == Rat(1));
    CHECK(s.coeff_num(1) == Rat(0));
    CHECK(s.coeff_num(2) == Rat(1));
    CHECK(s.coeff_num(3) == Rat(0));
    CHECK(equal_on_common_window(a.sieved(1, 0), a)); // modulus 1 is the identity
}

TEST_CASE("normalize reduces the exponent denominator lazily") {
    S a = make(6, 24, {{-2, 1}, {4, 2}});
    S n = a.normalized();
    CHECK(n.denom == 3);
    CHECK(n.lo == -1);
    CHECK(n.coeff_num(2) == Rat(2));
}

TEST_CASE("reindex round trip is the identity") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        S a = random_series(rng, 3, -4, 9);
        S b = a.reindexed(12).normalized();
        CHECK(equal_on_common_window(a, b));
        CHECK(a.denom == b.denom);
        CHECK(a.lo == b.lo);
    }
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 25; ++rep) {
        S a = random_series(rng, 2, -3, 8);
        S b = random_series(rng, 2, -2, 8);
        S c = random_series(rng, 2, 0, 8);
        CHECK(equal_on_common_window((a * b) * c, a * (b * c)));
        CHECK(equal_on_common_window(a * (b + c), a * b + a * c));
    }
}

TEST_CASE("series times its inverse is one") {
    std::mt19937 rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        S a = random_series(rng, 2, -3, 10, true);
        CHECK(is_one_to_trunc(a * inverse(a)));
    }
}

TEST_CASE("pow(a,k) * pow(a,-k) is one for k up to 16") {
    std::mt19937 rng(1234);
    S a = random_series(rng, 1, 0, 24, true);
    for (long long k : {1, 2, 3, 5, 8, 13, 16})
        CHECK(is_one_to_trunc(pow(a, k) * pow(a, -k)));
}

TEST_CASE("residue pipeline equals rational pipeline mod m") {
    const std::uint64_t m = 10007;
    std::mt19937 rng(5);
    auto reduce = [&](const S& s) {
        FracSeries<Mod> t;
        t.denom = s.denom;
        t.lo = s.lo;
        t.hi = s.hi;
        for (auto& c : s.c) {
            Int num(c.get_num()), den(c.get_den());
            t.c.push_back(Mod::from_int(num, m) * ring::inv(Mod::from_int(den, m)));
        }
        t.trim();
        return t;
    };
    for (int rep = 0; rep < 10; ++rep) {
        S a = random_series(rng, 2, -2, 9, true);
        S b = random_series(rng, 2, 0, 9, true);
        FracSeries<Mod> am = reduce(a), bm = reduce(b);
        CHECK(equal_on_common_window(reduce(a + b), am + bm));
        CHECK(equal_on_common_window(reduce(a * b), am * bm));
        CHECK(equal_on_common_window(reduce(inverse(a)), inverse(am)));
        CHECK(equal_on_common_window(reduce(pow(a, 3)), pow(am, 3)));
        CHECK(equal_on_common_window(reduce(a.sieved(3, 1)), am.sieved(3, 1)));
    }
}
