#pragma once

#include <string>

#include "modeq/newton.hpp"
#include "modeq/params.hpp"
#include "modeq/recognize.hpp"

namespace modeq {

struct KiepertOptions {
    long long guard = 8;
    long long max_p = 61;
};

// Window needed in the j-series: the largest power sum reaches q^{-(p^2-1)/12}.
inline long long kiepert_required_terms(long long p, long long guard = 8) {
    if (!is_prime_ll(p) || p <= 3)
        throw UnsupportedPrime("need a prime p > 3, got " + std::to_string(p));
    return (p * p - 1) / 12 + guard;
}

// S_k = (eta(z)/eta(pz))^{2k}: the k-th power of the single reciprocal root
// of negative order, q^{k(1-p)/12} (1 + ...).
template <class R>
FracSeries<R> kiepert_s_k(FormCache<R>& F, long long p, long long k, long long prec) {
    return F.kiepert_base_pow(p, k, prec).shifted(Frac(k * (1 - p), 12));
}

// The full pipeline: recognize S_1..S_{p+1}, run Newton, reverse and strip
// the powers of p. The result is Phi[(-1)^{(p-1)/2} w_p^2], monic of degree
// p+1 with constant term (-1)^{(p-1)/2} p.
template <class R>
ModEqPoly<R> build_kiepert(FormCache<R>& F, long long p,
                           const KiepertOptions& opt = {}) {
    if (!is_prime_ll(p) || p <= 3 || p > opt.max_p)
        throw UnsupportedPrime("p must be a prime in (3, " +
                               std::to_string(opt.max_p) + "], got " +
                               std::to_string(p));
    long long n = p + 1;
    long long prec = kiepert_required_terms(p, opt.guard);
    const R& proto = F.proto();

    RecognizeOptions ropt;
    ropt.allow_positive_tail = true; // the p positive-order reciprocals are omitted
    std::vector<TriPoly<R>> powsums;
    powsums.reserve(std::size_t(n));
    for (long long k = 1; k <= n; ++k) {
        GammaPoly<R> g = recognize(kiepert_s_k(F, p, k, prec), F, prec, ropt);
        powsums.push_back(TriPoly<R>::from_gamma(g));
    }

    ModEqPoly<R> psi = power_sums_to_monic(powsums, n, proto,
                                           /*require_integral=*/true);
    int sgn = ((p - 1) / 2) % 2 ? -1 : 1;
    R expected = ring::from_long_like(proto, sgn * p);
    ModEqPoly<R> phi = reverse_and_descale(psi, p, std::optional<R>(expected), proto);
    phi.label = std::string("Phi[") + (sgn < 0 ? "-" : "") + "w_" +
                std::to_string(p) + "^2]";
    return phi;
}

// The intermediate monic polynomial with roots p/x_i (before reversal);
// exposed for tests of the Newton stage.
template <class R>
ModEqPoly<R> build_kiepert_reciprocal(FormCache<R>& F, long long p,
                                      const KiepertOptions& opt = {}) {
    long long n = p + 1;
    long long prec = kiepert_required_terms(p, opt.guard);
    RecognizeOptions ropt;
    ropt.allow_positive_tail = true;
    std::vector<TriPoly<R>> powsums;
    for (long long k = 1; k <= n; ++k) {
        GammaPoly<R> g = recognize(kiepert_s_k(F, p, k, prec), F, prec, ropt);
        powsums.push_back(TriPoly<R>::from_gamma(g));
    }
    return power_sums_to_monic(powsums, n, F.proto(), true);
}

} // namespace modeq
