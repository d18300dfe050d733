#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modeq/gammapoly.hpp"

namespace modeq {

// The modular equation: monic in F, one normal-form trivariate coefficient
// per F-degree.
template <class R>
struct ModEqPoly {
    std::vector<TriPoly<R>> coeffs; // coeffs[d] multiplies F^d
    std::string label;

    long long degree() const { return (long long)coeffs.size() - 1; }

    bool is_integral() const {
        for (auto& c : coeffs)
            if (!c.is_integral()) return false;
        return true;
    }

    bool operator==(const ModEqPoly& o) const { return coeffs == o.coeffs; }
};

// Newton's identities: from power sums p_1..p_n to the monic polynomial
// prod (X - x_i) = sum_k (-1)^k e_k X^{n-k}, with e_k = (1/k) sum_{i=1..k}
// (-1)^{i-1} e_{k-i} p_i over exact scalars.
template <class R>
ModEqPoly<R> power_sums_to_monic(const std::vector<TriPoly<R>>& powsums,
                                 long long n, const R& proto,
                                 bool require_integral = false) {
    if ((long long)powsums.size() < n)
        throw InvariantViolation("need " + std::to_string(n) + " power sums, got " +
                                 std::to_string(powsums.size()));
    std::vector<TriPoly<R>> e(std::size_t(n + 1));
    e[0] = TriPoly<R>::constant(ring::one_like(proto));
    for (long long k = 1; k <= n; ++k) {
        TriPoly<R> acc = TriPoly<R>::zero();
        for (long long i = 1; i <= k; ++i) {
            TriPoly<R> term = normal_mul(e[std::size_t(k - i)], powsums[std::size_t(i - 1)]);
            acc = (i & 1) ? acc + term : acc - term;
        }
        e[std::size_t(k)] = acc.scaled(ring::inv(ring::from_long_like(proto, k)));
    }
    ModEqPoly<R> m;
    m.coeffs.resize(std::size_t(n + 1));
    for (long long k = 0; k <= n; ++k) {
        TriPoly<R> c = e[std::size_t(k)];
        if (k & 1) c = -c;
        if (require_integral && !c.is_integral())
            throw NonIntegralCoefficient("e_" + std::to_string(k) +
                                         " is not integral");
        m.coeffs[std::size_t(n - k)] = c;
    }
    return m;
}

// From the monic polynomial with roots y_i = scale / x_i to the monic
// polynomial with roots x_i: reverse the coefficient sequence, absorb
// scale-powers per degree, and divide by the constant term (which must be a
// plain nonzero constant).
//
//   out[m] = in[n-m] * scale^{n-m} / in[0]
template <class R>
ModEqPoly<R> reverse_and_descale(const ModEqPoly<R>& m, long long scale,
                                 const std::optional<R>& expected_constant,
                                 const R& proto, bool require_integral = true) {
    long long n = m.degree();
    if (n < 1) throw InvariantViolation("degree must be at least 1");
    auto lead = m.coeffs[std::size_t(n)].as_constant();
    if (!lead || !(*lead == ring::one_like(proto)))
        throw InconsistentScaling("input polynomial is not monic");
    auto cn = m.coeffs[0].as_constant();
    if (!cn)
        throw InconsistentScaling("constant term is not a plain constant");
    if (ring::is_zero(*cn))
        throw InconsistentScaling("constant term vanishes; roots are not invertible");
    R cn_inv = ring::inv(*cn);

    ModEqPoly<R> out;
    out.label = m.label;
    out.coeffs.resize(std::size_t(n + 1));
    R p = ring::from_long_like(proto, scale);
    R ppow = ring::one_like(proto); // scale^{n-m}, built from m = n down
    for (long long d = n; d >= 0; --d) {
        TriPoly<R> c = m.coeffs[std::size_t(n - d)].scaled(ppow * cn_inv);
        if (require_integral && !c.is_integral())
            throw InconsistentScaling("coefficient of F^" + std::to_string(d) +
                                      " is not integral after descaling");
        out.coeffs[std::size_t(d)] = c;
        if (d > 0) ppow *= p;
    }
    if (expected_constant) {
        auto c0 = out.coeffs[0].as_constant();
        if (!c0 || !(*c0 == *expected_constant))
            throw InconsistentScaling("constant term does not match the expected value");
    }
    return out;
}

} // namespace modeq
