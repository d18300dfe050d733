#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "modeq/series.hpp"

namespace modeq {

// Generators for the q-expansions the pipelines consume: eta and its
// rescalings, E4, E6, Delta, j, gamma2, gamma3, the double-quotient kernel
// C12, and the eta-power bases of the power-sum formulas.
//
// Every method takes `prec`: the result is correct modulo q^prec. Repeated
// calls are idempotent; a recursive mutex guards the memo, so concurrent
// callers are safe. Values are immutable once cached.
//
// Powers are memoized incrementally (|k| -> |k|+1 costs one multiplication),
// which keeps the k-loops of the pipelines linear in the number of series
// multiplications.
template <class R>
class FormCache {
public:
    explicit FormCache(R proto = R{}) : proto_(std::move(proto)) {}

    const R& proto() const { return proto_; }

    // Euler product Pi_{n>=1} (1 - q^{step n}) via the pentagonal number
    // theorem: exponents step*k(3k-1)/2, signs (-1)^k.
    const FracSeries<R>& pent(long long step, long long prec) {
        return memo("pent", step, 0, 0, prec, [&] {
            std::vector<std::pair<long long, R>> terms;
            R one = ring::one_like(proto_);
            terms.push_back({0, one});
            for (long long k = 1;; ++k) {
                long long g1 = step * (k * (3 * k - 1) / 2);
                long long g2 = step * (k * (3 * k + 1) / 2);
                if (g1 >= prec && g2 >= prec) break;
                R s = (k & 1) ? -one : one;
                if (g1 < prec) terms.push_back({g1, s});
                if (g2 < prec) terms.push_back({g2, s});
            }
            return FracSeries<R>::from_terms(1, prec - 1, std::move(terms));
        });
    }

    const FracSeries<R>& pent_inv(long long step, long long prec) {
        return memo("pentinv", step, 0, 0, prec,
                    [&] { return inverse(pent(step, prec)); });
    }

    // eta(mz) = q^{m/24} Pi (1 - q^{mn}); `terms` counts in units of q^m.
    const FracSeries<R>& eta(const Frac& m, long long terms) {
        return memo("eta", m.n, m.d, 0, terms, [&] {
            std::vector<std::pair<long long, R>> res;
            R one = ring::one_like(proto_);
            auto push = [&](long long g, const R& s) {
                if (g <= terms) res.push_back({m.n * (24 * g + 1), s});
            };
            push(0, one);
            for (long long k = 1; k * (3 * k - 1) / 2 <= terms; ++k) {
                R s = (k & 1) ? -one : one;
                push(k * (3 * k - 1) / 2, s);
                push(k * (3 * k + 1) / 2, s);
            }
            return FracSeries<R>::from_terms(24 * m.d, m.n * (24 * terms + 1) - 1,
                                             std::move(res));
        });
    }

    const FracSeries<R>& e4(long long prec) {
        return memo("e4", 0, 0, 0, prec, [&] { return eisenstein(3, 240, prec); });
    }

    const FracSeries<R>& e6(long long prec) {
        return memo("e6", 0, 0, 0, prec, [&] { return eisenstein(5, -504, prec); });
    }

    // Delta = eta^24 = q Pi(1-q^n)^24.
    const FracSeries<R>& delta(long long prec) {
        return memo("delta", 0, 0, 0, prec, [&] {
            return pow(pent(1, prec), 24).shifted(Frac(1)).truncated(prec - 1);
        });
    }

    // j = E4^3 / Delta = 1/q + 744 + ...
    const FracSeries<R>& j(long long prec) {
        return memo("j", 0, 0, 0, prec, [&] {
            auto p = prec + 1;
            FracSeries<R> num = pow(e4(p), 3) * pow(pent_inv(1, p), 24);
            return num.shifted(Frac(-1)).truncated(prec - 1);
        });
    }

    // gamma2 = E4 / eta^8 in q^{-1/3}(1 + Z[[q]]).
    const FracSeries<R>& gamma2(long long prec) {
        return memo("gamma2", 0, 0, 0, prec, [&] {
            FracSeries<R> s = e4(prec + 1) * pow(pent_inv(1, prec + 1), 8);
            return s.shifted(Frac(-1, 3)).truncated(3 * prec - 1);
        });
    }

    // gamma3 = E6 / eta^12 in q^{-1/2}(1 + Z[[q]]).
    const FracSeries<R>& gamma3(long long prec) {
        return memo("gamma3", 0, 0, 0, prec, [&] {
            FracSeries<R> s = e6(prec + 1) * pow(pent_inv(1, prec + 1), 12);
            return s.shifted(Frac(-1, 2)).truncated(2 * prec - 1);
        });
    }

    // j^i, built incrementally; window degrades with i as usual.
    const FracSeries<R>& jpow(long long i, long long prec) {
        return memo("jpow", i, 0, 0, prec, [&]() -> FracSeries<R> {
            if (i == 0) {
                FracSeries<R> one = FracSeries<R>::constant(ring::one_like(proto_), prec - 1);
                return one;
            }
            return jpow(i - 1, prec) * j(prec);
        });
    }

    // gamma2^a gamma3^b for 0 <= a, b <= 2.
    const FracSeries<R>& gamma_pow(long long a, long long b, long long prec) {
        return memo("gpow", a, b, 0, prec, [&] {
            FracSeries<R> s = FracSeries<R>::constant(ring::one_like(proto_), prec + 2);
            for (long long i = 0; i < a; ++i) s = s * gamma2(prec + 2);
            for (long long i = 0; i < b; ++i) s = s * gamma3(prec + 2);
            return s;
        });
    }

    // (gamma2^a gamma3^b)^{-1} = E4^{-a} E6^{-b} eta^{8a+12b}, assembled in
    // integer exponents and shifted by (2a+3b)/6.
    const FracSeries<R>& gamma_inv(long long a, long long b, long long prec) {
        return memo("ginv", a, b, 0, prec, [&] {
            long long p = prec + 2;
            FracSeries<R> s = pow(pent(1, p), 8 * a + 12 * b);
            for (long long i = 0; i < a; ++i) s = s * inverse(e4(p));
            for (long long i = 0; i < b; ++i) s = s * inverse(e6(p));
            return s.shifted(Frac(2 * a + 3 * b, 6));
        });
    }

    // C12(w) in integer w-exponents: the w^r prefactor of
    // eta(p1 z) eta(z/p2) / (eta(z) eta(p1 z /p2)) is cancelled analytically
    // (the four eta exponents sum to exactly r). Symmetric in p1, p2.
    const FracSeries<R>& c12(long long p1, long long p2, long long prec) {
        long long a = std::min(p1, p2), b = std::max(p1, p2);
        return memo("c12", a, b, 0, prec, [&] {
            return pent(a * b, prec) * pent(1, prec) * pent_inv(a, prec) *
                   pent_inv(b, prec);
        });
    }

    const FracSeries<R>& c12_pow(long long p1, long long p2, long long k,
                                 long long prec) {
        long long a = std::min(p1, p2), b = std::max(p1, p2);
        return memo("c12pow", a, b, k, prec, [&]() -> FracSeries<R> {
            if (k == 0)
                return FracSeries<R>::constant(ring::one_like(proto_), prec - 1);
            if (k > 0) return c12_pow(a, b, k - 1, prec) * c12(a, b, prec);
            return c12_pow(a, b, k + 1, prec) *
                   memo("c12inv", a, b, 0, prec, [&] { return inverse(c12(a, b, prec)); });
        });
    }

    // C(q) = 1 / Pi(1-q^n), the reciprocal pentagonal series.
    const FracSeries<R>& cq_pow(long long k, long long prec) {
        return memo("cqpow", k, 0, 0, prec, [&]() -> FracSeries<R> {
            if (k == 0)
                return FracSeries<R>::constant(ring::one_like(proto_), prec - 1);
            if (k > 0) return cq_pow(k - 1, prec) * pent_inv(1, prec);
            return cq_pow(k + 1, prec) * pent(1, prec);
        });
    }

    // Integer part of q^{-1/24} eta(pz)^2 / eta(z): val 0, the (p-1)/12
    // exponent offset is re-attached by the caller.
    const FracSeries<R>& sck_base_pow(long long p, long long k, long long prec) {
        return memo("sckbase", p, 0, k, prec, [&]() -> FracSeries<R> {
            if (k == 0)
                return FracSeries<R>::constant(ring::one_like(proto_), prec - 1);
            if (k > 0)
                return sck_base_pow(p, k - 1, prec) *
                       memo("sckb1", p, 0, 0, prec,
                            [&] { return pow(pent(p, prec), 2) * pent_inv(1, prec); });
            return sck_base_pow(p, k + 1, prec) *
                   memo("sckbm1", p, 0, 0, prec,
                        [&] { return pow(pent_inv(p, prec), 2) * pent(1, prec); });
        });
    }

    // Integer part of (eta(z)/eta(pz))^{2k}; offset k(1-p)/12 re-attached by
    // the caller.
    const FracSeries<R>& kiepert_base_pow(long long p, long long k, long long prec) {
        return memo("kpbase", p, 0, k, prec, [&]() -> FracSeries<R> {
            if (k == 0)
                return FracSeries<R>::constant(ring::one_like(proto_), prec - 1);
            if (k > 0)
                return kiepert_base_pow(p, k - 1, prec) *
                       memo("kpb1", p, 0, 0, prec,
                            [&] { return pow(pent(1, prec) * pent_inv(p, prec), 2); });
            return kiepert_base_pow(p, k + 1, prec) *
                   memo("kpbm1", p, 0, 0, prec,
                        [&] { return pow(pent(p, prec) * pent_inv(1, prec), 2); });
        });
    }

    // w_{p1,p2}^e = (eta(z/p1) eta(z/p2) / (eta(z/(p1 p2)) eta(z)))^e as a
    // series in q^{1/(p1 p2)}.
    FracSeries<R> w_quotient(long long p1, long long p2, long long e, long long prec) {
        FracSeries<R> s = eta(Frac(1, p1), prec * p1 + 1) *
                          eta(Frac(1, p2), prec * p2 + 1) *
                          inverse(eta(Frac(1, p1 * p2), prec * p1 * p2 + 1)) *
                          inverse(eta(Frac(1), prec + 1));
        return pow(s, e);
    }

    // (eta(z)/eta(pz))^2-based Kiepert root function w_p^2 = (eta(z/p)/eta(z))^2.
    FracSeries<R> wp_squared(long long p, long long prec) {
        FracSeries<R> s = eta(Frac(1, p), prec * p + 1) * inverse(eta(Frac(1), prec + 1));
        return pow(s, 2);
    }

private:
    R proto_;
    std::recursive_mutex mu_;
    std::map<std::tuple<std::string, long long, long long, long long, long long>,
             std::unique_ptr<const FracSeries<R>>>
        memo_;

    template <class Fn>
    const FracSeries<R>& memo(const char* kind, long long a, long long b,
                              long long c, long long prec, Fn&& fn) {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto key = std::make_tuple(std::string(kind), a, b, c, prec);
        auto it = memo_.find(key);
        if (it == memo_.end()) {
            FracSeries<R> value = fn();
            it = memo_.emplace(std::move(key),
                               std::make_unique<const FracSeries<R>>(std::move(value)))
                     .first;
        }
        return *it->second;
    }

    FracSeries<R> eisenstein(int power, long long scale, long long prec) {
        std::vector<Int> sig(std::size_t(std::max(prec, 1LL)), Int(0));
        for (long long d = 1; d < prec; ++d) {
            Int dp;
            mpz_ui_pow_ui(dp.get_mpz_t(), (unsigned long)d, (unsigned long)power);
            for (long long n = d; n < prec; n += d) sig[std::size_t(n)] += dp;
        }
        std::vector<std::pair<long long, R>> terms;
        terms.push_back({0, ring::one_like(proto_)});
        for (long long n = 1; n < prec; ++n)
            terms.push_back(
                {n, ring::from_rat_like(proto_, Rat(Int(scale) * sig[std::size_t(n)]))});
        return FracSeries<R>::from_terms(1, prec - 1, std::move(terms));
    }
};

} // namespace modeq
