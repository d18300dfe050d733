#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "modeq/gammapoly.hpp"

namespace modeq {

struct RecognizeOptions {
    // Power sums built from reciprocal conjugates omit the positive-order
    // members of the family; the recognizer then consumes exponents <= 0
    // only and skips the final residual check.
    bool allow_positive_tail = false;
    // Demand integer coefficients for the recognized polynomial (meaningful
    // over the rationals; residue rings satisfy it trivially).
    bool require_integral = true;
};

// Select the unique gamma2^i gamma3^jf twist that makes t / (gamma2^i
// gamma3^jf) a series with integer exponents, from the valuation -a/b with
// b | 6:
//   b=1 -> (0,0); b=2 -> (0,1); b=3 -> i = a mod 3; b=6 -> jf=1, i = (a-3)/2 mod 3.
// Returns (i, jf, quotient).
template <class R>
std::tuple<int, int, FracSeries<R>> split_gamma_factors(const FracSeries<R>& t,
                                                        FormCache<R>& F,
                                                        long long prec) {
    if (t.is_zero()) return {0, 0, t};
    Frac v = t.valuation();
    long long b = v.d;
    long long a = -v.n; // valuation is -a/b with gcd(a,b)=1
    if (6 % b != 0)
        throw UnsupportedDenominator("valuation denominator " + std::to_string(b) +
                                     " does not divide 6");
    int i = 0, jf = 0;
    if (b == 1) {
        i = 0;
        jf = 0;
    } else if (b == 2) {
        i = 0;
        jf = 1;
    } else if (b == 3) {
        i = int(((a % 3) + 3) % 3);
        jf = 0;
    } else { // b == 6
        jf = 1;
        long long h = (a - 3) / 2; // a odd and prime to 3 here
        i = int(((h % 3) + 3) % 3);
    }
    FracSeries<R> q = (i == 0 && jf == 0) ? t : t * F.gamma_inv(i, jf, prec);
    // Exponent integrality is the defining property of the chosen twist.
    for (std::size_t idx = 0; idx < q.c.size(); ++idx) {
        long long num = q.lo + (long long)idx;
        if (num > 0) break;
        if (!ring::is_zero(q.c[idx]) && num % q.denom != 0)
            throw NoIntegralTwist("twisted series keeps fractional exponent " +
                                  Frac(num, q.denom).str());
    }
    return {i, jf, q};
}

// The peel loop: repeatedly remove r_v j^{-v} at the valuation v <= 0 and
// collect P(X) with P(j) - t = O(q^{1/denom}). Powers of j come memoized
// from the cache.
template <class R>
JPoly<R> recognize_poly_in_j(const FracSeries<R>& t, FormCache<R>& F,
                             long long prec, const RecognizeOptions& opt = {}) {
    JPoly<R> P;
    // Work on the integer-exponent subseries; fractional exponents at or
    // below 0 are a twist failure, fractional tail exponents only bound the
    // residual order.
    long long hi_int = t.hi >= 0 ? t.hi / t.denom : -((-t.hi + t.denom - 1) / t.denom);
    std::optional<Frac> frac_tail;
    FracSeries<R> rem;
    {
        std::vector<std::pair<long long, R>> terms;
        for (std::size_t i = 0; i < t.c.size(); ++i) {
            if (ring::is_zero(t.c[i])) continue;
            long long num = t.lo + (long long)i;
            if (num % t.denom == 0) {
                terms.push_back({num / t.denom, t.c[i]});
            } else if (num <= 0) {
                throw NoIntegralTwist("series keeps fractional exponent " +
                                      Frac(num, t.denom).str());
            } else if (!frac_tail || Frac(num, t.denom) < *frac_tail) {
                frac_tail = Frac(num, t.denom);
            }
        }
        rem = FracSeries<R>::from_terms(1, hi_int, std::move(terms));
    }
    while (!rem.is_zero()) {
        Frac v = rem.valuation();
        if (v > Frac(0)) break;
        long long deg = -v.n;
        R r = rem.lead();
        if (opt.require_integral && !ring::is_integral(r))
            throw NonIntegerCoefficient("coefficient at q^" + v.str() + " is " +
                                        ring::str(r));
        if ((long long)P.c.size() <= deg) P.c.resize(std::size_t(deg + 1), ring::zero_like(r));
        P.c[std::size_t(deg)] = r;
        rem = rem - F.jpow(deg, prec).scaled(r);
    }
    if (!opt.allow_positive_tail) {
        Frac rv = rem.is_zero() ? Frac(rem.hi + 1) : rem.valuation();
        if (frac_tail && *frac_tail < rv) rv = *frac_tail;
        if (rv < Frac(1))
            throw ResidualNotPositiveOrder("residual has valuation " + rv.str());
    }
    P.trim();
    return P;
}

template <class R>
GammaPoly<R> recognize(const FracSeries<R>& t, FormCache<R>& F, long long prec,
                       const RecognizeOptions& opt = {}) {
    GammaPoly<R> g;
    if (t.is_zero()) return g;
    if (t.valuation() > Frac(0)) {
        // Nothing at exponents <= 0: the recognized part is zero.
        if (!opt.allow_positive_tail && t.valuation() < Frac(1))
            throw ResidualNotPositiveOrder("series has valuation " +
                                           t.valuation().str());
        return g;
    }
    auto [i, jf, q] = split_gamma_factors(t, F, prec);
    g.g2exp = i;
    g.g3exp = jf;
    g.polyJ = recognize_poly_in_j(q, F, prec, opt);
    return g;
}

// Inverse direction, used by the round-trip property tests.
template <class R>
FracSeries<R> gamma_poly_series(const GammaPoly<R>& g, FormCache<R>& F,
                                long long prec) {
    return tripoly_series(TriPoly<R>::from_gamma(g), F, prec);
}

} // namespace modeq
