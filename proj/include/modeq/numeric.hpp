#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "modeq/double_eta.hpp"
#include "modeq/forms.hpp"
#include "modeq/newton.hpp"
#include "modeq/params.hpp"

namespace modeq {

using Cplx = std::complex<double>;

struct VerifyOptions {
    int samples = 10;
    double tol = 1e-8;
    unsigned seed = 12345;
    long long terms = 40; // series window for j, gamma2, gamma3
};

struct VerifyReport {
    double residual_plus = 0.0;
    double residual_minus = 0.0;
    int chosen_sign = 0;
    int samples = 0;
    double tol = 0.0;
    bool convergence_warning = false;
};

// Floating-point check that produced equations vanish: everything here is
// derived from complex exponentials directly, independent of the exact
// pipelines it validates (only the q-expansions of j, gamma2, gamma3 are
// shared, and those are pinned by their own exact identities).
class NumericOracle {
public:
    explicit NumericOracle(const VerifyOptions& opt = {});

    // z with Im z >= 1.2; q = exp(2 pi i z)
    std::vector<Cplx> sample_points(int n);

    // eta(u) through the Euler product; partial pentagonal sums cancel
    // catastrophically once |exp(2 pi i u)| is close to 1, the product form
    // does not.
    Cplx eta(Cplx u) const;

    // Evaluate a truncated series at q, every exponent a/b evaluated as
    // exp(2 pi i z a/b) on the single consistent branch.
    Cplx eval_series(const FracSeries<Rat>& s, Cplx z);

    Cplx j_at(Cplx z);
    Cplx gamma2_at(Cplx z);
    Cplx gamma3_at(Cplx z);

    Cplx wp_squared_at(long long p, Cplx z) const;
    Cplx w_double_at(const ParamSet& ps, Cplx z) const;

    Cplx tripoly_at(const TriPoly<Rat>& t, Cplx J, Cplx g2, Cplx g3) const;

    // Evaluate Phi(sign * f(z), gamma2, gamma3, j) for both signs at n
    // random points; residuals are relative to the largest monomial.
    VerifyReport check_equation(const ModEqPoly<Rat>& eq,
                                const std::function<Cplx(Cplx)>& f, int samples,
                                double tol);

    // Conjugate sums evaluated directly from the transformation data; the
    // desk-scale witnesses for the sieved-series formulas.
    Cplx sigma_c2_direct(const ParamSet& ps, long long k, Cplx z) const;
    Cplx sigma_c_direct(const ParamSet& ps, long long k, Cplx z) const;

    bool convergence_warned() const { return warned_; }

private:
    VerifyOptions opt_;
    FormCache<Rat> cache_;
    bool warned_ = false;
};

inline Cplx cpow_int(Cplx base, long long k) {
    if (k < 0) {
        base = 1.0 / base;
        k = -k;
    }
    Cplx acc(1.0, 0.0);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

} // namespace modeq
