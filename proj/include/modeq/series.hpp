#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "modeq/errors.hpp"
#include "modeq/rational.hpp"

namespace modeq {

// Truncated Puiseux series  sum_{n=lo..hi} c[n-lo] q^{n/denom} + O(q^{(hi+1)/denom})
// with exact coefficients in R. Truncation is explicit state: every operation
// propagates the weakest compatible bound, nothing ever extends precision.
//
// Canonical form: c.empty() for the zero series (then lo == hi+1), otherwise
// c.front() != 0. Interior and trailing zeros are kept; they are known-zero
// coefficients, not absent ones.
template <class R>
struct FracSeries {
    long long denom = 1;
    long long lo = 1;   // valuation numerator (hi+1 when zero)
    long long hi = 0;   // last known exponent numerator
    std::vector<R> c;

    FracSeries() = default;

    static FracSeries zero(long long d, long long trunc_num) {
        FracSeries s;
        s.denom = d;
        s.hi = trunc_num;
        s.lo = trunc_num + 1;
        return s;
    }

    // Sparse constructor: (exponent numerator, coefficient) pairs.
    static FracSeries from_terms(long long d, long long trunc_num,
                                 std::vector<std::pair<long long, R>> terms) {
        FracSeries s = zero(d, trunc_num);
        if (terms.empty()) return s;
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        long long first = terms.front().first;
        if (first > trunc_num) return s;
        s.lo = first;
        s.c.assign(std::size_t(trunc_num - first + 1), ring::zero_like(terms.front().second));
        for (auto& t : terms) {
            if (t.first > trunc_num) break;
            s.c[std::size_t(t.first - first)] += t.second;
        }
        s.trim();
        return s;
    }

    static FracSeries constant(const R& value, long long trunc_num) {
        return from_terms(1, trunc_num, {{0, value}});
    }

    bool is_zero() const { return c.empty(); }
    std::size_t size() const { return c.size(); }

    Frac valuation() const {
        if (is_zero()) throw InvariantViolation("valuation of zero series");
        return Frac(lo, denom);
    }
    Frac trunc_exponent() const { return Frac(hi, denom); }

    const R& lead() const {
        if (is_zero()) throw ZeroLeadingCoefficient("zero series has no leading term");
        return c.front();
    }

    // Drop leading known-zero coefficients so lo is the true valuation.
    void trim() {
        std::size_t k = 0;
        while (k < c.size() && ring::is_zero(c[k])) ++k;
        if (k == c.size()) {
            c.clear();
            lo = hi + 1;
            return;
        }
        if (k) {
            c.erase(c.begin(), c.begin() + std::ptrdiff_t(k));
            lo += (long long)k;
        }
    }

    R coeff_num(long long num) const {
        if (num > hi) throw PrecisionExceeded("coefficient beyond truncation");
        if (num < lo || c.empty()) {
            if (c.empty()) return R{};
            return ring::zero_like(c.front());
        }
        return c[std::size_t(num - lo)];
    }

    // Coefficient at exact exponent e; exponents not representable with this
    // denominator are known to be zero.
    R coeff_at(const Frac& e) const {
        if (e > trunc_exponent()) throw PrecisionExceeded("exponent beyond truncation");
        if (denom % e.d != 0) return c.empty() ? R{} : ring::zero_like(c.front());
        return coeff_num(e.n * (denom / e.d));
    }

    FracSeries reindexed(long long new_denom) const {
        if (new_denom == denom) return *this;
        if (new_denom % denom != 0)
            throw InvariantViolation("reindex target must be a multiple of denom");
        long long f = new_denom / denom;
        FracSeries s;
        s.denom = new_denom;
        s.hi = hi * f + (f - 1);
        if (is_zero()) {
            s.lo = s.hi + 1;
            return s;
        }
        s.lo = lo * f;
        s.c.assign(std::size_t(s.hi - s.lo + 1), ring::zero_like(c.front()));
        for (std::size_t i = 0; i < c.size(); ++i)
            s.c[i * std::size_t(f)] = c[i];
        return s;
    }

    FracSeries truncated(long long new_hi) const {
        FracSeries s = *this;
        if (new_hi >= hi) return s;
        s.hi = new_hi;
        if (s.lo > new_hi) {
            s.c.clear();
            s.lo = new_hi + 1;
        } else {
            s.c.resize(std::size_t(new_hi - s.lo + 1));
        }
        return s;
    }

    FracSeries shifted(const Frac& delta) const {
        long long d2 = lllcm(denom, delta.d);
        FracSeries s = reindexed(d2);
        long long off = delta.n * (d2 / delta.d);
        s.lo += off;
        s.hi += off;
        return s;
    }

    FracSeries scaled(const R& f) const {
        FracSeries s = *this;
        for (auto& x : s.c) x *= f;
        s.trim();
        return s;
    }

    FracSeries scaled_long(long long v) const {
        if (c.empty()) return *this;
        return scaled(ring::from_long_like(c.front(), v));
    }

    FracSeries operator-() const {
        FracSeries s = *this;
        for (auto& x : s.c) x = -x;
        return s;
    }

    // Keep only exponent numerators congruent to r mod m.
    FracSeries sieved(long long m, long long r) const {
        if (m < 1) throw InvariantViolation("sieve modulus must be >= 1");
        FracSeries s = *this;
        r = ((r % m) + m) % m;
        for (std::size_t i = 0; i < s.c.size(); ++i) {
            long long num = s.lo + (long long)i;
            if (((num % m) + m) % m != r) s.c[i] = ring::zero_like(s.c[i]);
        }
        s.trim();
        return s;
    }

    // Reduce the exponent denominator by the gcd of all nonzero exponent
    // numerators; done lazily, only when called.
    FracSeries normalized() const {
        FracSeries s = *this;
        if (s.is_zero()) {
            s.lo = s.hi / s.denom + 1;
            s.hi = s.hi / s.denom;
            s.denom = 1;
            s.lo = s.hi + 1;
            return s;
        }
        long long g = s.denom;
        for (std::size_t i = 0; i < s.c.size() && g > 1; ++i)
            if (!ring::is_zero(s.c[i])) g = llgcd(g, std::llabs(s.lo + (long long)i));
        if (g <= 1) return s;
        FracSeries t;
        t.denom = s.denom / g;
        t.lo = s.lo / g;                 // lo is divisible by g (nonzero lead)
        long long new_hi = s.hi >= 0 ? s.hi / g : -((-s.hi + g - 1) / g);
        t.hi = new_hi;
        t.c.assign(std::size_t(t.hi - t.lo + 1), ring::zero_like(s.c.front()));
        for (std::size_t i = 0; i < s.c.size(); ++i) {
            long long num = s.lo + (long long)i;
            if (num % g == 0 && num / g <= t.hi)
                t.c[std::size_t(num / g - t.lo)] = s.c[i];
        }
        t.trim();
        return t;
    }
};

namespace detail {

template <class R>
void unify(FracSeries<R>& a, FracSeries<R>& b) {
    long long d = lllcm(a.denom, b.denom);
    a = a.reindexed(d);
    b = b.reindexed(d);
}

} // namespace detail

template <class R>
FracSeries<R> operator+(FracSeries<R> a, FracSeries<R> b) {
    detail::unify(a, b);
    FracSeries<R> s;
    s.denom = a.denom;
    s.hi = std::min(a.hi, b.hi);
    s.lo = std::min(a.lo, b.lo);
    if (s.lo > s.hi) {
        s.lo = s.hi + 1;
        return s;
    }
    R z = a.is_zero() ? (b.is_zero() ? R{} : ring::zero_like(b.c.front()))
                      : ring::zero_like(a.c.front());
    s.c.assign(std::size_t(s.hi - s.lo + 1), z);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        long long num = a.lo + (long long)i;
        if (num > s.hi) break;
        if (num >= s.lo) s.c[std::size_t(num - s.lo)] += a.c[i];
    }
    for (std::size_t i = 0; i < b.c.size(); ++i) {
        long long num = b.lo + (long long)i;
        if (num > s.hi) break;
        if (num >= s.lo) s.c[std::size_t(num - s.lo)] += b.c[i];
    }
    s.trim();
    return s;
}

template <class R>
FracSeries<R> operator-(const FracSeries<R>& a, const FracSeries<R>& b) {
    return a + (-b);
}

template <class R>
FracSeries<R> operator*(FracSeries<R> a, FracSeries<R> b) {
    detail::unify(a, b);
    FracSeries<R> s;
    s.denom = a.denom;
    // O(q^{Ta+1}) * b  contributes error at Ta+1+val(b) and vice versa; a
    // vanishing operand still bounds the error through its truncation.
    s.hi = std::min(a.hi + b.lo, b.hi + a.lo);
    if (a.is_zero() || b.is_zero()) {
        s.lo = s.hi + 1;
        return s;
    }
    s.lo = a.lo + b.lo;
    if (s.lo > s.hi) {
        s.lo = s.hi + 1;
        return s;
    }
    s.c.assign(std::size_t(s.hi - s.lo + 1), ring::zero_like(a.c.front()));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (ring::is_zero(a.c[i])) continue;
        long long base = a.lo + (long long)i + b.lo;
        if (base > s.hi) break;
        std::size_t jmax = std::min(b.c.size(), std::size_t(s.hi - base + 1));
        for (std::size_t j = 0; j < jmax; ++j)
            s.c[std::size_t(base - s.lo) + j] += a.c[i] * b.c[j];
    }
    s.trim();
    return s;
}

// 1/a by the usual recurrence against the leading coefficient. Known window
// length is preserved: val -> -val, trunc -> trunc - 2*val.
template <class R>
FracSeries<R> inverse(const FracSeries<R>& a) {
    if (a.is_zero()) throw ZeroLeadingCoefficient("cannot invert a zero series");
    FracSeries<R> s;
    s.denom = a.denom;
    s.lo = -a.lo;
    s.hi = a.hi - 2 * a.lo;
    std::size_t n = a.c.size();
    R lead_inv = ring::inv(a.c.front());
    s.c.assign(n, ring::zero_like(a.c.front()));
    s.c[0] = lead_inv;
    for (std::size_t k = 1; k < n; ++k) {
        R acc = ring::zero_like(a.c.front());
        for (std::size_t j = 1; j <= k; ++j)
            acc += a.c[j] * s.c[k - j];
        s.c[k] = -(acc * lead_inv);
    }
    return s;
}

template <class R>
FracSeries<R> pow(const FracSeries<R>& a, long long k) {
    if (k == 0) {
        R proto = a.is_zero() ? R{} : a.c.front();
        FracSeries<R> one;
        one.denom = a.denom;
        one.lo = 0;
        one.hi = std::max(0LL, a.hi - a.lo);
        one.c.assign(std::size_t(one.hi + 1), ring::zero_like(proto));
        one.c[0] = ring::one_like(proto);
        return one;
    }
    FracSeries<R> base = k < 0 ? inverse(a) : a;
    long long e = k < 0 ? -k : k;
    FracSeries<R> acc;
    bool have = false;
    while (e) {
        if (e & 1) {
            acc = have ? acc * base : base;
            have = true;
        }
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

template <class R>
bool equal_on_common_window(const FracSeries<R>& x, const FracSeries<R>& y) {
    FracSeries<R> a = x, b = y;
    detail::unify(a, b);
    long long hi = std::min(a.hi, b.hi);
    long long lo = std::min(a.lo, b.lo);
    for (long long n = lo; n <= hi; ++n) {
        R ca = n >= a.lo && n <= a.hi ? a.coeff_num(n) : R{};
        R cb = n >= b.lo && n <= b.hi ? b.coeff_num(n) : R{};
        bool za = n < a.lo || ring::is_zero(ca);
        bool zb = n < b.lo || ring::is_zero(cb);
        if (za != zb) return false;
        if (!za && !(ca == cb)) return false;
    }
    return true;
}

// 1 + O(q^{...}) check used by the inverse/pow properties.
template <class R>
bool is_one_to_trunc(const FracSeries<R>& a) {
    if (a.is_zero()) return false;
    if (a.lo != 0) return false;
    if (!(a.c.front() == ring::one_like(a.c.front()))) return false;
    for (std::size_t i = 1; i < a.c.size(); ++i)
        if (!ring::is_zero(a.c[i])) return false;
    return true;
}

} // namespace modeq
