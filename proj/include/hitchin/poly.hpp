#ifndef HITCHIN_POLY_HPP
#define HITCHIN_POLY_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "hitchin/common.hpp"
#include "hitchin/errors.hpp"

namespace hitchin {

// Dense univariate polynomial over C, coefficients ascending in degree.
struct Poly {
    std::vector<cplx> c;

    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}
    static Poly constant(cplx v) { return Poly({v}); }
    static Poly monomial(int k, cplx v = 1.0) {
        std::vector<cplx> a(size_t(k) + 1, 0.0);
        a[size_t(k)] = v;
        return Poly(std::move(a));
    }

    int degree() const {  // -1 for the zero polynomial
        for (int i = int(c.size()) - 1; i >= 0; --i)
            if (c[size_t(i)] != cplx(0.0)) return i;
        return -1;
    }

    bool is_zero() const { return degree() < 0; }

    cplx eval(cplx z) const {
        cplx r = 0.0;
        for (int i = int(c.size()) - 1; i >= 0; --i) r = r * z + c[size_t(i)];
        return r;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly({cplx(0.0)});
        std::vector<cplx> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
        return Poly(std::move(d));
    }

    Poly operator*(const Poly& o) const {
        if (c.empty() || o.c.empty()) return Poly({cplx(0.0)});
        std::vector<cplx> r(c.size() + o.c.size() - 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == cplx(0.0)) continue;
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        }
        return Poly(std::move(r));
    }

    Poly operator+(const Poly& o) const {
        std::vector<cplx> r(std::max(c.size(), o.c.size()), 0.0);
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
        return Poly(std::move(r));
    }

    Poly operator-(const Poly& o) const { return *this + (o * Poly::constant(-1.0)); }

    Poly operator*(cplx s) const {
        Poly r = *this;
        for (auto& v : r.c) v *= s;
        return r;
    }

    Poly& trim() {
        while (c.size() > 1 && c.back() == cplx(0.0)) c.pop_back();
        return *this;
    }

    // p(a z + b)
    Poly compose_affine(cplx a, cplx b) const {
        if (c.empty()) return Poly({cplx(0.0)});
        Poly r = Poly::constant(c.back());
        Poly lin({b, a});
        for (int i = int(c.size()) - 2; i >= 0; --i)
            r = r * lin + Poly::constant(c[size_t(i)]);
        return r;
    }

    // sum_i |c_i| |z|^i, a per-point magnitude scale for residual tests
    double scale_at(double absz) const {
        double s = 0, p = 1;
        for (size_t i = 0; i < c.size(); ++i) {
            s += std::abs(c[i]) * p;
            p *= absz;
        }
        return s;
    }
};

// Product prod (z - r_i)^{m_i}
inline Poly poly_from_roots(const std::vector<cplx>& roots,
                            const std::vector<int>& mult = {}) {
    Poly p({cplx(1.0)});
    for (size_t i = 0; i < roots.size(); ++i) {
        int m = mult.empty() ? 1 : mult[i];
        for (int k = 0; k < m; ++k) p = p * Poly({-roots[i], 1.0});
    }
    return p;
}

namespace detail {

inline bool lex_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace detail

// All complex roots by Aberth-Ehrlich iteration with Newton polishing.
// Deterministic: initial guesses sit on a slightly perturbed circle at the
// Cauchy bound.  Throws NonConvergence after 500 sweeps.
inline std::vector<cplx> poly_roots(const Poly& p) {
    const int n = p.degree();
    if (n < 0) throw InvalidInput("poly_roots: zero polynomial");
    if (n == 0) return {};

    std::vector<cplx> a(p.c.begin(), p.c.begin() + n + 1);
    const cplx lead = a[size_t(n)];
    for (auto& v : a) v /= lead;

    if (n == 1) return {-a[0]};

    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[size_t(i)]));
    const double radius = 1.0 + bound;

    std::vector<cplx> z(size_t(n), 0.0);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * pi * k / n + 0.4 + 0.01 * k;
        z[size_t(k)] = radius * cplx(std::cos(th), std::sin(th));
    }

    Poly mon{std::vector<cplx>(a)};
    Poly dmon = mon.derivative();

    bool converged = false;
    for (int sweep = 0; sweep < 500 && !converged; ++sweep) {
        converged = true;
        for (int k = 0; k < n; ++k) {
            cplx pk = mon.eval(z[size_t(k)]);
            cplx dk = dmon.eval(z[size_t(k)]);
            if (pk == cplx(0.0)) continue;
            cplx newton = (dk == cplx(0.0)) ? cplx(1e-3) : pk / dk;
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                cplx d = z[size_t(k)] - z[size_t(j)];
                if (std::abs(d) < 1e-300) d = 1e-300;
                sum += 1.0 / d;
            }
            cplx denom = 1.0 - newton * sum;
            cplx step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
            z[size_t(k)] -= step;
            if (std::abs(step) > 1e-14 * (1.0 + std::abs(z[size_t(k)]))) converged = false;
        }
    }
    if (!converged)
        throw NonConvergence("poly_roots: Aberth iteration did not converge in 500 sweeps");

    // Newton polish each root individually.
    for (auto& r : z)
        for (int it = 0; it < 4; ++it) {
            cplx pv = mon.eval(r), dv = dmon.eval(r);
            if (std::abs(dv) < 1e-300) break;
            cplx step = pv / dv;
            r -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(r))) break;
        }

    std::sort(z.begin(), z.end(), detail::lex_less);
    return z;
}

}  // namespace hitchin

#endif
