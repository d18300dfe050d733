#pragma once

#include <array>
#include <optional>
#include <vector>

#include "modeq/forms.hpp"
#include "modeq/series.hpp"

namespace modeq {

// Dense polynomial in J, ascending coefficients.
template <class R>
struct JPoly {
    std::vector<R> c;

    bool is_zero() const { return c.empty(); }
    long long degree() const { return (long long)c.size() - 1; }

    void trim() {
        while (!c.empty() && ring::is_zero(c.back())) c.pop_back();
    }

    static JPoly constant(const R& v) {
        JPoly p;
        if (!ring::is_zero(v)) p.c.push_back(v);
        return p;
    }

    R coeff(long long d) const {
        if (d < 0 || d >= (long long)c.size()) return R{};
        return c[std::size_t(d)];
    }

    JPoly operator+(const JPoly& o) const {
        JPoly r = *this;
        if (r.c.size() < o.c.size()) r.c.resize(o.c.size(), R{});
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }

    JPoly operator-() const {
        JPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    JPoly operator-(const JPoly& o) const { return *this + (-o); }

    JPoly operator*(const JPoly& o) const {
        JPoly r;
        if (is_zero() || o.is_zero()) return r;
        r.c.assign(c.size() + o.c.size() - 1, ring::zero_like(c.front()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (ring::is_zero(c[i])) continue;
            for (std::size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] += c[i] * o.c[j];
        }
        r.trim();
        return r;
    }

    JPoly scaled(const R& f) const {
        JPoly r = *this;
        for (auto& x : r.c) x *= f;
        r.trim();
        return r;
    }

    // multiply by J^k
    JPoly shifted_up(long long k) const {
        JPoly r;
        if (is_zero()) return r;
        r.c.assign(c.size() + std::size_t(k), ring::zero_like(c.front()));
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i + std::size_t(k)] = c[i];
        return r;
    }

    bool operator==(const JPoly& o) const {
        if (c.size() != o.c.size()) return false;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!(c[i] == o.c[i])) return false;
        return true;
    }

    bool is_integral() const {
        for (auto& x : c)
            if (!ring::is_integral(x)) return false;
        return true;
    }
};

// Monomial gamma2^a gamma3^b (a<3, b<2) times an integer polynomial in J:
// the recognized form of a power sum.
template <class R>
struct GammaPoly {
    int g2exp = 0;
    int g3exp = 0;
    JPoly<R> polyJ;

    bool is_zero() const { return polyJ.is_zero(); }
};

// Element of Z[J, G2, G3] / (G2^3 - J, G3^2 - (J - 1728)): one J-polynomial
// per gamma monomial slot.
template <class R>
struct TriPoly {
    std::array<std::array<JPoly<R>, 2>, 3> part; // part[a][b], a<3, b<2

    static TriPoly zero() { return TriPoly{}; }

    static TriPoly constant(const R& v) {
        TriPoly t;
        t.part[0][0] = JPoly<R>::constant(v);
        return t;
    }

    static TriPoly from_gamma(const GammaPoly<R>& g) {
        TriPoly t;
        t.part[std::size_t(g.g2exp)][std::size_t(g.g3exp)] = g.polyJ;
        return t;
    }

    bool is_zero() const {
        for (auto& row : part)
            for (auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    }

    // The unique constant value if this is a degree-0 pure-J element.
    std::optional<R> as_constant() const {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                if (!(a == 0 && b == 0) && !part[a][b].is_zero()) return std::nullopt;
        if (part[0][0].is_zero()) return R{};
        if (part[0][0].degree() > 0) return std::nullopt;
        return part[0][0].c[0];
    }

    TriPoly operator+(const TriPoly& o) const {
        TriPoly r;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                r.part[a][b] = part[a][b] + o.part[a][b];
        return r;
    }

    TriPoly operator-(const TriPoly& o) const { return *this + (-o); }

    TriPoly operator-() const {
        TriPoly r;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                r.part[a][b] = -part[a][b];
        return r;
    }

    TriPoly scaled(const R& f) const {
        TriPoly r;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                r.part[a][b] = part[a][b].scaled(f);
        return r;
    }

    bool operator==(const TriPoly& o) const {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                if (!(part[a][b] == o.part[a][b])) return false;
        return true;
    }

    bool is_integral() const {
        for (auto& row : part)
            for (auto& p : row)
                if (!p.is_integral()) return false;
        return true;
    }

    // q-order of the lowest-order monomial: J^d G2^a G3^b starts at
    // -(d + a/3 + b/2), and distinct monomials never share that exponent,
    // so no cancellation is possible.
    std::optional<Frac> valuation() const {
        std::optional<Frac> best;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b) {
                const auto& p = part[a][b];
                if (p.is_zero()) continue;
                Frac v(-(6 * p.degree() + 2 * a + 3 * b), 6);
                if (!best || v < *best) best = v;
            }
        return best;
    }
};

// Product in the normal-form ring: exponent overflow reduces through
// G2^3 -> J and G3^2 -> J - 1728.
template <class R>
TriPoly<R> normal_mul(const TriPoly<R>& x, const TriPoly<R>& y) {
    TriPoly<R> r;
    for (int a1 = 0; a1 < 3; ++a1)
        for (int b1 = 0; b1 < 2; ++b1) {
            if (x.part[a1][b1].is_zero()) continue;
            for (int a2 = 0; a2 < 3; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    if (y.part[a2][b2].is_zero()) continue;
                    JPoly<R> p = x.part[a1][b1] * y.part[a2][b2];
                    int a = a1 + a2, b = b1 + b2;
                    if (a >= 3) {
                        p = p.shifted_up(1); // G2^3 = J
                        a -= 3;
                    }
                    if (b >= 2) {
                        // G3^2 = J - 1728
                        const R& proto = p.c.front();
                        JPoly<R> jm;
                        jm.c = {ring::from_long_like(proto, -1728), ring::one_like(proto)};
                        p = p * jm;
                        b -= 2;
                    }
                    r.part[a][b] = r.part[a][b] + p;
                }
        }
    return r;
}

// Evaluate in the series ring: sum over slots polyJ(j) * gamma2^a * gamma3^b.
template <class R>
FracSeries<R> tripoly_series(const TriPoly<R>& t, FormCache<R>& F, long long prec) {
    FracSeries<R> acc = FracSeries<R>::zero(1, prec - 1);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b) {
            const auto& p = t.part[a][b];
            if (p.is_zero()) continue;
            FracSeries<R> jp = FracSeries<R>::zero(1, prec - 1);
            for (long long d = 0; d <= p.degree(); ++d) {
                if (ring::is_zero(p.coeff(d))) continue;
                jp = jp + F.jpow(d, prec).scaled(p.coeff(d));
            }
            if (a == 0 && b == 0)
                acc = acc + jp;
            else
                acc = acc + jp * F.gamma_pow(a, b, prec);
        }
    return acc;
}

} // namespace modeq
