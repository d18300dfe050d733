#pragma once

#include <string>

#include "modeq/newton.hpp"
#include "modeq/params.hpp"
#include "modeq/recognize.hpp"

namespace modeq {

struct DoubleEtaOptions {
    long long guard = 8;
};

namespace detail {

// Root-of-unity / sqrt(p) prefactor of a power-sum formula, kept exact as
// zeta24^z * p^{halves/2} and collapsed to a rational at the end.
struct SigmaPrefactor {
    long long zeta24 = 0;
    long long p = 1;
    long long halves = 0;

    Rat collapse() const {
        long long z = ((zeta24 % 24) + 24) % 24;
        if (z != 0 && z != 12)
            throw PrefactorNotRational("zeta24 exponent " + std::to_string(z));
        if (halves % 2 != 0)
            throw PrefactorNotRational("odd power of sqrt(" + std::to_string(p) + ")");
        Rat v = rat_pow(Rat(p), halves / 2);
        return z == 0 ? v : -v;
    }
};

} // namespace detail

// Prop-SC2k sum over the C2-family conjugates (distinct primes): sieve the
// coefficients of C12(w)^{ek} at w-index i = -k t p2' (mod p2), re-index
// w-exponents to q-exponents (kt/delta + i)/p2, and scale by p2 eps2^{ke}.
// Negative k gives the reciprocal-root sums. Exchanging the roles of p1 and
// p2 (params.swapped()) yields the C1-family sum; C12 itself is symmetric.
template <class R>
FracSeries<R> sigma_c2_k(FormCache<R>& F, const ParamSet& ps, long long k,
                         long long q_prec) {
    if (k == 0) throw InvariantViolation("k must be nonzero");
    if (ps.p1 == ps.p2)
        throw InvariantViolation("distinct primes required for the C2 sum");
    long long p2 = ps.p2, t = ps.t, d = ps.delta, e = ps.e;
    if ((p2 + 1) % d != 0)
        throw InvariantViolation("p2 is not -1 mod delta");
    long long p2p = (p2 + 1) / d;

    // exponent (kt + i d) / (d p2) < q_prec  =>  i <= i_hi
    long long i_hi = (q_prec * d * p2 - k * t) / d + 1;
    if (i_hi < 0) i_hi = 0;
    const FracSeries<R>& cp = F.c12_pow(ps.p1, p2, e * k, i_hi + 1);

    long long residue = (((-k * t * p2p) % p2) + p2) % p2;
    long long eps2 = (p2 == 2) ? 1 : legendre(ps.p1, p2);
    long long scale = ((k * e) % 2 == 0 || eps2 == 1) ? p2 : -p2;

    std::vector<std::pair<long long, R>> terms;
    for (std::size_t idx = 0; idx < cp.c.size(); ++idx) {
        if (ring::is_zero(cp.c[idx])) continue;
        long long i = cp.lo + (long long)idx;
        if (((i % p2) + p2) % p2 != residue) continue;
        long long num = k * t + i * d;
        if (num % p2 != 0)
            throw InvariantViolation("sieved exponent not in (1/delta)Z");
        terms.push_back({num / p2, cp.c[idx]});
    }
    FracSeries<R> s = FracSeries<R>::from_terms(d, q_prec * d - 1, std::move(terms));
    return s.scaled_long(scale);
}

// Prop-SCk sum over the C-family conjugates (p1 = p2 = p), all printed
// branches: p = 2 alternating signs, p = 3 split by parity of k, p > 3 split
// by parity with the p-sieve (k even) or the Legendre-weighted sum (k odd).
template <class R>
FracSeries<R> sigma_c_k(FormCache<R>& F, const ParamSet& ps, long long k,
                        long long q_prec) {
    if (k == 0) throw InvariantViolation("k must be nonzero");
    if (ps.p1 != ps.p2)
        throw InvariantViolation("equal primes required for the C sum");
    long long p = ps.p1, e = ps.e, d = ps.delta;

    // q-exponent = ek(p-1)/12 + i with i >= 0
    Frac lead = Frac(e * k * (p - 1), 12);
    long long lead_floor =
        lead.n >= 0 ? lead.n / lead.d : -((-lead.n + lead.d - 1) / lead.d);
    long long i_hi = q_prec - lead_floor + 1;
    if (i_hi < 1) i_hi = 1;
    long long prec_int = i_hi + 1;

    const FracSeries<R>& cpow = F.cq_pow(e * k, prec_int);
    detail::SigmaPrefactor pref;
    pref.p = p;

    std::vector<std::pair<long long, R>> terms;
    auto push = [&](long long i, const R& coeff, long long mult) {
        if (mult == 0 || ring::is_zero(coeff)) return;
        R v = coeff;
        if (mult != 1) v = v * ring::from_long_like(F.proto(), mult);
        terms.push_back({i, v});
    };

    if (p == 2) {
        // prefactor (-2^4)^k, series in -q
        pref.zeta24 = 12 * k;
        pref.halves = 8 * k;
        for (std::size_t idx = 0; idx < cpow.c.size(); ++idx) {
            long long i = cpow.lo + (long long)idx;
            push(i, cpow.c[idx], (i % 2 == 0) ? 1 : -1);
        }
    } else if (p == 3) {
        if (k % 2 == 0) {
            // (-3)^{3k/2} (3 sum_{i = -k mod 3} - sum)
            pref.zeta24 = 12 * (3 * k / 2);
            pref.halves = 3 * k;
            long long target = (((-k) % 3) + 3) % 3;
            for (std::size_t idx = 0; idx < cpow.c.size(); ++idx) {
                long long i = cpow.lo + (long long)idx;
                push(i, cpow.c[idx], (((i % 3) + 3) % 3 == target) ? 2 : -1);
            }
        } else {
            // (-3)^{(3k+1)/2}, terms with i+k = 0 mod 3 dropped
            pref.zeta24 = 12 * ((3 * k + 1) / 2);
            pref.halves = 3 * k + 1;
            for (std::size_t idx = 0; idx < cpow.c.size(); ++idx) {
                long long i = cpow.lo + (long long)idx;
                long long m = (((i + k) % 3) + 3) % 3;
                push(i, cpow.c[idx], m == 0 ? 0 : (m == 1 ? -1 : 1));
            }
        }
    } else {
        long long pprime = (p * p - 1) / 24;
        if (k % 2 == 0) {
            // p^{ek/2} zeta8^{ek(p-1)} (p sum_{i = -ekp' mod p} - sum)
            pref.zeta24 = 3 * e * k * (p - 1);
            pref.halves = e * k;
            long long target = (((-e * k * pprime) % p) + p) % p;
            for (std::size_t idx = 0; idx < cpow.c.size(); ++idx) {
                long long i = cpow.lo + (long long)idx;
                push(i, cpow.c[idx], (((i % p) + p) % p == target) ? p - 1 : -1);
            }
        } else {
            // Legendre(-1|p) sqrt(Legendre(-1|p)) zeta8^{ek(p-1)} p^{(ek+1)/2}
            pref.zeta24 = 3 * e * k * (p - 1) + (p % 4 == 3 ? 18 : 0);
            pref.halves = e * k + 1;
            for (std::size_t idx = 0; idx < cpow.c.size(); ++idx) {
                long long i = cpow.lo + (long long)idx;
                push(i, cpow.c[idx], legendre(i + e * k * pprime, p));
            }
        }
    }

    FracSeries<R> inner = FracSeries<R>::from_terms(1, prec_int - 1, std::move(terms));
    FracSeries<R> s = F.sck_base_pow(p, e * k, prec_int) * inner;
    R scale = ring::from_rat_like(F.proto(), pref.collapse());
    s = s.scaled(scale).shifted(lead);
    // exponents land in (1/delta)Z
    s = s.reindexed(lllcm(s.denom, d));
    return s.truncated(q_prec * s.denom - 1);
}

// Reciprocal power sum Sigma_k = sum 1/C2'^k + sum 1/C1'^k (or the C-family
// sum when p1 = p2); the B' and A' reciprocals have positive order and do
// not touch exponents <= 0.
template <class R>
FracSeries<R> sigma_k(FormCache<R>& F, const ParamSet& ps, long long k,
                      long long q_prec) {
    if (ps.p1 == ps.p2) return sigma_c_k(F, ps, -k, q_prec);
    return sigma_c2_k(F, ps, -k, q_prec) + sigma_c2_k(F, ps.swapped(), -k, q_prec);
}

inline Rat double_eta_constant(const ParamSet& ps) {
    if (ps.p1 != ps.p2) return Rat(1);
    if (ps.p1 == 2) return Rat(16);
    return rat_pow(Rat(-ps.p1), ps.e * (ps.p1 - 1) / 2);
}

// Largest |valuation| any reciprocal power sum can reach; sizes the
// recognizer's j-power window.
inline long long double_eta_max_valuation(const ParamSet& ps) {
    long long n = ps.degree;
    Frac re = ps.re();
    if (ps.p1 == ps.p2) {
        Frac v = Frac(n * ps.e * (ps.p1 - 1), 12);
        return v.n / v.d + 2;
    }
    long long pmin = std::min(ps.p1, ps.p2);
    Frac v = re * Frac(n, pmin);
    return v.n / v.d + 2;
}

// The full pipeline: recognize Sigma_1..Sigma_n with a tolerated positive
// tail, run Newton over exact scalars, reverse (scale 1), and pin the
// constant term. The result is the monic equation whose roots are the
// normalized conjugates of (-1)^{delta+1} w_{p1,p2}^e.
template <class R>
ModEqPoly<R> build_double_eta(FormCache<R>& F, const ParamSet& ps,
                              const DoubleEtaOptions& opt = {}) {
    long long n = ps.degree;
    long long prec_rec = double_eta_max_valuation(ps) + opt.guard + 2;
    const R& proto = F.proto();

    RecognizeOptions ropt;
    ropt.allow_positive_tail = true;
    ropt.require_integral = false; // reciprocal sums carry p-power denominators
    std::vector<TriPoly<R>> powsums;
    powsums.reserve(std::size_t(n));
    for (long long k = 1; k <= n; ++k) {
        GammaPoly<R> g = recognize(sigma_k(F, ps, k, opt.guard), F, prec_rec, ropt);
        powsums.push_back(TriPoly<R>::from_gamma(g));
    }

    ModEqPoly<R> psi = power_sums_to_monic(powsums, n, proto);
    R expected = ring::from_rat_like(proto, double_eta_constant(ps));
    ModEqPoly<R> phi = reverse_and_descale(psi, 1, std::optional<R>(expected), proto);
    phi.label = std::string("Phi[") + (ps.sign < 0 ? "-" : "") + "w_{" +
                std::to_string(ps.p1) + "," + std::to_string(ps.p2) + "}" +
                (ps.e > 1 ? "^" + std::to_string(ps.e) : "") + "]";
    return phi;
}

struct StructureReport {
    Rat constant;
    Frac trace_valuation;
    long long lowest_order_fdeg = 0;
    Frac lowest_order_valuation;
};

// Structural facts every produced equation must satisfy exactly: the
// constant term, the trace of order -re at F^{n-1}, and the unique
// lowest-order coefficient q^{-2re} sitting at F-degree psi(N)-N-1.
inline StructureReport check_structure(const ModEqPoly<Rat>& eq, const ParamSet& ps) {
    StructureReport rep;
    long long n = ps.degree;
    if (eq.degree() != n)
        throw PropertyCheckFailed("degree " + std::to_string(eq.degree()) +
                                  " != psi(N) = " + std::to_string(n));

    auto c0 = eq.coeffs[0].as_constant();
    Rat expected = double_eta_constant(ps);
    if (!c0 || *c0 != expected)
        throw PropertyCheckFailed("constant term mismatch");
    rep.constant = *c0;

    Frac re = ps.re();
    auto tval = eq.coeffs[std::size_t(n - 1)].valuation();
    if (!tval || !(*tval == -re))
        throw PropertyCheckFailed("trace valuation is not -re = " + (-re).str());
    rep.trace_valuation = *tval;

    long long special = n - ps.N - 1;
    Frac bound = -(re * Frac(2));
    for (long long d = 0; d <= n; ++d) {
        auto v = eq.coeffs[std::size_t(d)].valuation();
        if (!v) continue;
        if (d == special) {
            if (!(*v == bound))
                throw PropertyCheckFailed("coefficient of F^" + std::to_string(d) +
                                          " has valuation " + v->str() +
                                          ", expected " + bound.str());
            rep.lowest_order_fdeg = d;
            rep.lowest_order_valuation = *v;
        } else if (!(*v > bound)) {
            throw PropertyCheckFailed("coefficient of F^" + std::to_string(d) +
                                      " reaches the extremal order " + v->str());
        }
    }
    return rep;
}

} // namespace modeq
