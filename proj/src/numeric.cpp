#include "modeq/numeric.hpp"

#include <cmath>
#include <random>

namespace modeq {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

NumericOracle::NumericOracle(const VerifyOptions& opt) : opt_(opt) {}

std::vector<Cplx> NumericOracle::sample_points(int n) {
    if (n < 1) throw InvariantViolation("need at least one sample point");
    std::mt19937 rng(opt_.seed);
    std::uniform_real_distribution<double> re(-0.5, 0.5);
    std::uniform_real_distribution<double> im(1.2, 2.0);
    std::vector<Cplx> pts;
    pts.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) pts.emplace_back(re(rng), im(rng));
    return pts;
}

Cplx NumericOracle::eta(Cplx u) const {
    Cplx w = std::exp(Cplx(0, 1) * kTwoPi * u);
    Cplx acc = std::exp(Cplx(0, 1) * kTwoPi * u / 24.0);
    Cplx wn = w;
    for (int n = 1; n < 100000; ++n) {
        acc *= (1.0 - wn);
        wn *= w;
        if (std::abs(wn) < 1e-22) break;
    }
    return acc;
}

Cplx NumericOracle::eval_series(const FracSeries<Rat>& s, Cplx z) {
    if (s.is_zero()) return Cplx(0, 0);
    Cplx step = std::exp(Cplx(0, 1) * kTwoPi * z / double(s.denom));
    Cplx qe = std::exp(Cplx(0, 1) * kTwoPi * z * (double(s.lo) / double(s.denom)));
    Cplx acc(0, 0);
    Cplx last(0, 0);
    for (std::size_t i = 0; i < s.c.size(); ++i) {
        double c = mpq_get_d(s.c[i].get_mpq_t());
        if (c != 0.0) {
            last = c * qe;
            acc += last;
        }
        qe *= step;
    }
    if (std::abs(last) > 1e-16 * std::abs(acc)) warned_ = true;
    return acc;
}

Cplx NumericOracle::j_at(Cplx z) { return eval_series(cache_.j(opt_.terms), z); }
Cplx NumericOracle::gamma2_at(Cplx z) { return eval_series(cache_.gamma2(opt_.terms), z); }
Cplx NumericOracle::gamma3_at(Cplx z) { return eval_series(cache_.gamma3(opt_.terms), z); }

Cplx NumericOracle::wp_squared_at(long long p, Cplx z) const {
    Cplx r = eta(z / double(p)) / eta(z);
    return r * r;
}

Cplx NumericOracle::w_double_at(const ParamSet& ps, Cplx z) const {
    Cplx w = eta(z / double(ps.p1)) * eta(z / double(ps.p2)) /
             (eta(z / double(ps.N)) * eta(z));
    return cpow_int(w, ps.e);
}

Cplx NumericOracle::tripoly_at(const TriPoly<Rat>& t, Cplx J, Cplx g2,
                               Cplx g3) const {
    Cplx acc(0, 0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b) {
            const auto& p = t.part[a][b];
            if (p.is_zero()) continue;
            Cplx horner(0, 0);
            for (long long d = p.degree(); d >= 0; --d)
                horner = horner * J + mpq_get_d(p.coeff(d).get_mpq_t());
            acc += horner * cpow_int(g2, a) * cpow_int(g3, b);
        }
    return acc;
}

VerifyReport NumericOracle::check_equation(const ModEqPoly<Rat>& eq,
                                           const std::function<Cplx(Cplx)>& f,
                                           int samples, double tol) {
    VerifyReport rep;
    rep.samples = samples;
    rep.tol = tol;
    auto pts = sample_points(samples);
    for (Cplx z : pts) {
        Cplx J = j_at(z), g2 = gamma2_at(z), g3 = gamma3_at(z);
        Cplx fv = f(z);
        for (int sign : {+1, -1}) {
            Cplx F = double(sign) * fv;
            Cplx acc(0, 0);
            double maxmono = 0.0;
            Cplx Fp(1, 0);
            for (std::size_t d = 0; d < eq.coeffs.size(); ++d) {
                const TriPoly<Rat>& c = eq.coeffs[d];
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const auto& p = c.part[a][b];
                        for (long long jd = 0; jd <= p.degree(); ++jd) {
                            double cd = mpq_get_d(p.coeff(jd).get_mpq_t());
                            if (cd == 0.0) continue;
                            Cplx mono = cd * cpow_int(J, jd) * cpow_int(g2, a) *
                                        cpow_int(g3, b) * Fp;
                            acc += mono;
                            maxmono = std::max(maxmono, std::abs(mono));
                        }
                    }
                Fp *= F;
            }
            double resid = maxmono > 0 ? std::abs(acc) / maxmono : std::abs(acc);
            if (sign > 0)
                rep.residual_plus = std::max(rep.residual_plus, resid);
            else
                rep.residual_minus = std::max(rep.residual_minus, resid);
        }
    }
    rep.convergence_warning = warned_;
    if (rep.residual_plus < tol && rep.residual_minus >= tol)
        rep.chosen_sign = +1;
    else if (rep.residual_minus < tol && rep.residual_plus >= tol)
        rep.chosen_sign = -1;
    else if (rep.residual_plus < tol && rep.residual_minus < tol)
        rep.chosen_sign = rep.residual_plus <= rep.residual_minus ? +1 : -1;
    else
        throw NoVanishingSign("residuals " + std::to_string(rep.residual_plus) +
                              " / " + std::to_string(rep.residual_minus) +
                              " both exceed tol");
    return rep;
}

Cplx NumericOracle::sigma_c2_direct(const ParamSet& ps, long long k, Cplx z) const {
    // C2'_{nu} = phi^{e nu} eps2^e Q2(z+nu)^e with the theta2 exponents
    // cancelled by construction.
    long long p1 = ps.p1, p2 = ps.p2;
    double re = ps.re().to_double();
    double eps2 = (p2 == 2) ? 1.0 : double(legendre(p1, p2));
    Cplx acc(0, 0);
    for (long long nu = 0; nu < p2; ++nu) {
        Cplx u = z + double(nu);
        Cplx q2 = eta(double(p1) * u) * eta(u / double(p2)) /
                  (eta(u) * eta(double(p1) * u / double(p2)));
        Cplx phase = std::exp(Cplx(0, 1) * kTwoPi * re * double(nu));
        Cplx root = phase * std::pow(eps2, double(ps.e)) * cpow_int(q2, ps.e);
        acc += cpow_int(root, k);
    }
    return acc;
}

Cplx NumericOracle::sigma_c_direct(const ParamSet& ps, long long k, Cplx z) const {
    long long p = ps.p1;
    Cplx chi = std::exp(Cplx(0, -1) * kTwoPi * double(ps.t) / double(ps.delta));
    Cplx zeta24 = std::exp(Cplx(0, 1) * kTwoPi / 24.0);
    Cplx acc(0, 0);
    Cplx etap2 = eta(double(p) * z) * eta(double(p) * z);
    for (long long nu = 1; nu < p; ++nu) {
        long long mu = 0;
        for (long long c = 1; c < p; ++c)
            if ((c * nu) % p == p - 1) { mu = c; break; } // mu = -1/nu mod p
        long long v = (1 + mu * nu) / p;
        double eps = (p == 2) ? 1.0 : double(legendre(-nu, p));
        long long theta = (p == 2) ? 0
                                   : p * nu * (1 - mu * mu) +
                                         (-3 * p + 2 + v) * mu - 3 + 3 * p;
        Cplx cnu = std::sqrt(double(p)) * eps * cpow_int(zeta24, theta) * etap2 /
                   (eta(z) * eta(z + double(nu) / double(p)));
        Cplx root = cpow_int(chi, mu) * cpow_int(cnu, ps.e);
        acc += cpow_int(root, k);
    }
    return acc;
}

} // namespace modeq
