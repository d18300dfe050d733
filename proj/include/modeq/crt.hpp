#pragma once

#include <cstdint>
#include <functional>
#include <future>
#include <thread>
#include <vector>

#include "modeq/modring.hpp"
#include "modeq/newton.hpp"

namespace modeq {

struct CrtOptions {
    int prime_bits = 62;
    long long budget = 32;        // maximum number of primes
    int stable_window = 2;        // extra primes that must leave the lift unchanged
    unsigned threads = 0;         // 0: hardware concurrency
};

// Primes for one reconstruction run. Each prime must exceed the pipeline
// degree (so the Newton divisions 1/k exist mod m) and avoid p1, p2.
struct CrtPlan {
    std::vector<std::uint64_t> primes;
    long long degree = 0;
    std::vector<long long> avoid;
    int stable_window = 2;
};

inline bool crt_prime_admissible(std::uint64_t m, long long degree,
                                 const std::vector<long long>& avoid) {
    if ((long long)m <= degree) return false;
    for (long long a : avoid)
        if ((long long)m == a) return false;
    return true;
}

inline CrtPlan make_crt_plan(long long degree, std::vector<long long> avoid,
                             const CrtOptions& opt) {
    CrtPlan plan;
    plan.degree = degree;
    plan.avoid = std::move(avoid);
    plan.stable_window = opt.stable_window;
    Int p = Int(1) << (opt.prime_bits - 1);
    while ((long long)plan.primes.size() < opt.budget) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (!p.fits_ulong_p())
            throw InadmissiblePrime("prime budget exceeds the word size");
        std::uint64_t m = p.get_ui();
        if (crt_prime_admissible(m, plan.degree, plan.avoid))
            plan.primes.push_back(m);
    }
    return plan;
}

inline Int symmetric_lift(const Int& x, const Int& M) {
    Int r = x % M;
    if (r < 0) r += M;
    if (2 * r > M) r -= M;
    return r;
}

namespace detail {

// y = x (mod M), y = r (mod m), returned as the symmetric representative
// mod M*m.
inline Int crt_step(const Int& x, const Int& M, std::uint64_t r, std::uint64_t m) {
    Int mm(m);
    Int d = (Int(r) - x) % mm;
    if (d < 0) d += mm;
    Int minv;
    if (mpz_invert(minv.get_mpz_t(), Int(M % mm).get_mpz_t(), mm.get_mpz_t()) == 0)
        throw InadmissiblePrime("modulus repeats in the plan");
    Int u = d * minv % mm;
    return symmetric_lift(x + M * u, M * mm);
}

inline void lift_jpoly(JPoly<Rat>& acc, const JPoly<Mod>& res, const Int& M,
                       std::uint64_t m) {
    std::size_t len = std::max(acc.c.size(), res.c.size());
    acc.c.resize(len, Rat(0));
    for (std::size_t i = 0; i < len; ++i) {
        Int cur(acc.c[i].get_num()); // integral by construction
        std::uint64_t r = i < res.c.size() ? res.c[i].v % m : 0;
        acc.c[i] = Rat(crt_step(cur, M, r, m));
    }
    acc.trim();
}

} // namespace detail

// Coefficientwise CRT with symmetric lift; first call starts from M = 1.
inline void crt_fold(ModEqPoly<Rat>& acc, Int& M, const ModEqPoly<Mod>& res,
                     std::uint64_t m) {
    if (acc.coeffs.empty()) {
        acc.coeffs.resize(res.coeffs.size());
        acc.label = res.label;
    }
    if (acc.coeffs.size() != res.coeffs.size())
        throw InvariantViolation("residue polynomials disagree in degree");
    for (std::size_t d = 0; d < acc.coeffs.size(); ++d)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                detail::lift_jpoly(acc.coeffs[d].part[a][b],
                                   res.coeffs[d].part[a][b], M, m);
    M *= Int(m);
}

// Run `build` once per plan prime (one worker per prime, nothing shared),
// fold the residues in plan order, and stop once `stable_window` consecutive
// primes leave every lifted coefficient unchanged.
inline ModEqPoly<Rat> crt_reconstruct(
    const CrtPlan& plan, const CrtOptions& opt,
    const std::function<ModEqPoly<Mod>(std::uint64_t)>& build) {
    if (plan.primes.size() < 2)
        throw NotConverged("need at least two primes");
    unsigned workers = opt.threads ? opt.threads
                                   : std::max(1u, std::thread::hardware_concurrency());

    ModEqPoly<Rat> acc;
    Int M(1);
    int stable = 0;
    std::size_t next = 0;
    while (next < plan.primes.size()) {
        std::size_t wave = std::min<std::size_t>(workers, plan.primes.size() - next);
        std::vector<std::future<ModEqPoly<Mod>>> futs;
        futs.reserve(wave);
        for (std::size_t i = 0; i < wave; ++i) {
            std::uint64_t m = plan.primes[next + i];
            futs.push_back(std::async(std::launch::async, build, m));
        }
        for (std::size_t i = 0; i < wave; ++i) {
            ModEqPoly<Mod> res = futs[i].get();
            ModEqPoly<Rat> before = acc;
            crt_fold(acc, M, res, plan.primes[next + i]);
            bool unchanged = !before.coeffs.empty() && before == acc;
            stable = unchanged ? stable + 1 : 0;
            if (stable >= plan.stable_window) return acc;
        }
        next += wave;
    }
    throw NotConverged("coefficients still changing after " +
                       std::to_string(plan.primes.size()) + " primes");
}

} // namespace modeq
