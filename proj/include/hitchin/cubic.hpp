#ifndef HITCHIN_CUBIC_HPP
#define HITCHIN_CUBIC_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hitchin/common.hpp"
#include "hitchin/errors.hpp"
#include "hitchin/spectral.hpp"

namespace hitchin::cubic {

using spectral::Divisor;
using spectral::HoloDifferential;
using spectral::LeafTangent;
using spectral::SpectralCurve;

// Symmetric 3-tensor on the leaf tangent space (or a mixed basis; the
// basis_label records which slots carry which basis).
struct CubicTensor {
    int dim = 0;
    std::vector<cplx> entries;  // dim^3, index (i*dim + j)*dim + k
    std::string basis_label;

    CubicTensor() = default;
    CubicTensor(int g, std::string label)
        : dim(g), entries(size_t(g) * g * g, 0.0), basis_label(std::move(label)) {}

    cplx& at(int i, int j, int k) { return entries[(size_t(i) * dim + j) * dim + k]; }
    const cplx& at(int i, int j, int k) const {
        return entries[(size_t(i) * dim + j) * dim + k];
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : entries) m = std::max(m, std::abs(v));
        return m;
    }

    // max over the 6 slot permutations of |C - C o sigma| / max|C|
    double symmetry_residual() const {
        double m = 0, s = std::max(max_abs(), 1e-300);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    const cplx& v = at(i, j, k);
                    m = std::max({m, std::abs(v - at(i, k, j)), std::abs(v - at(j, i, k)),
                                  std::abs(v - at(j, k, i)), std::abs(v - at(k, i, j)),
                                  std::abs(v - at(k, j, i))});
                }
        return m / s;
    }
};

// Killing-form cup product of two t-valued differentials.  For sl2 with
// tr = sum_{a in R} a^2 and eta = p_eta dz/(2 yhat) tensor H, a(H) = +-2:
//   sum_a a(eta) a(zeta) = 2 p_eta p_zeta dz^2 / bhat.
// The payload is the numerator polynomial of that rational expression.
struct QuadDiffPayload {
    Poly numerator;   // 2 p_eta p_zeta
    int bhat_power;   // denominator bhat^power (= 1 here)
};

inline QuadDiffPayload killing_cup(const HoloDifferential& eta, const HoloDifferential& zeta) {
    return {eta.p * zeta.p * cplx(2.0), 1};
}

// Res^2 (the t^{-2} Laurent coefficient in a local coordinate at a branch
// point) of omega = h(z) dz^2 / bhat(z)^2, in closed form: with t = yhat,
// z = e + t^2/bhat'(e) + ..., one gets Res^2 = 4 h(e) / bhat'(e)^2.
inline cplx res2_closed(const Poly& h, const SpectralCurve& curve, cplx e) {
    cplx dp = curve.bhat_prime.eval(e);
    if (std::abs(dp) < 1e-10 * std::max(1.0, curve.bhat_prime.scale_at(std::abs(e))))
        throw DerivativeVanishes("res2_closed: bhat' vanishes at the branch point");
    cplx he = h.eval(e);
    return 4.0 * he / (dp * dp);
}

// Laurent data a_{-2}, a_{-1}, a_0 of a quadratic differential pulled back
// to the local coordinate t (t^2 = bhat(z)) at a branch point.
struct QuadDifferentialGerm {
    cplx at;
    cplx a_m2, a_m1, a_0;
};

// Brute-force contour oracle for Res^2.  omega is the coefficient function
// of the quadratic differential in the z-chart (omega(z) dz^2).  The local
// parametrization z(t) is computed by Newton continuation of yhat^2 = bhat
// around the circle |t| = rho; Laurent coefficients are extracted by DFT.
// coord_scale s probes coordinate independence: coefficients are extracted
// with respect to tau = t/s (a_{-2} must not move).
inline QuadDifferentialGerm res2_numeric(const std::function<cplx(cplx)>& omega,
                                         const SpectralCurve& curve, cplx e,
                                         double coord_scale = 1.0) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& o : curve.branch_points)
        if (o != e) dmin = std::min(dmin, std::abs(o - e));
    if (!std::isfinite(dmin)) throw InvalidInput("res2_numeric: need >= 2 branch points");

    cplx dp = curve.bhat_prime.eval(e);
    if (std::abs(dp) < 1e-10 * std::max(1.0, curve.bhat_prime.scale_at(std::abs(e))))
        throw DerivativeVanishes("res2_numeric: bhat' vanishes at the branch point");

    double rho = 0.1 * dmin;
    // keep the z-excursion of the contour well inside the nearest branch point
    while (rho * rho / std::abs(dp) > 0.3 * dmin) rho *= 0.5;
    if (rho < 1e-150) throw ContourTooLarge("res2_numeric: contour radius underflow");

    const int N = 256;
    cplx s_m2 = 0.0, s_m1 = 0.0, s_0 = 0.0;
    cplx z = e + rho * rho / dp;  // quadratic model at theta = 0
    for (int n = 0; n < N; ++n) {
        double th = 2.0 * pi * n / N;
        cplx t = rho * cplx(std::cos(th), std::sin(th));
        cplx t2 = t * t;
        // Newton continuation from the previous sample
        for (int it = 0; it < 50; ++it) {
            cplx f = curve.bhat.eval(z) - t2;
            cplx d = curve.bhat_prime.eval(z);
            cplx step = f / d;
            z -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        cplx dzdt = 2.0 * t / curve.bhat_prime.eval(z);
        cplx f = omega(z) * dzdt * dzdt * (coord_scale * coord_scale);
        // f as a function of tau = t/s on the circle |tau| = rho/s
        cplx w_m2 = cplx(std::cos(2 * th), std::sin(2 * th));
        cplx w_m1 = cplx(std::cos(th), std::sin(th));
        s_m2 += f * w_m2;
        s_m1 += f * w_m1;
        s_0 += f;
    }
    double rtau = rho / coord_scale;
    QuadDifferentialGerm g;
    g.at = e;
    g.a_m2 = s_m2 / double(N) * (rtau * rtau);
    g.a_m1 = s_m1 / double(N) * rtau;
    g.a_0 = s_0 / double(N);
    return g;
}

namespace detail {

inline void check_generic_for_cubic(const SpectralCurve& curve) {
    for (const auto& e : curve.branch_points) {
        cplx dp = curve.bhat_prime.eval(e);
        if (std::abs(dp) < 1e-10 * std::max(1.0, curve.bhat_prime.scale_at(std::abs(e))))
            throw GenericityViolation(GenericityKind::RepeatedRoot,
                                      "cubic: non-simple ramification");
    }
}

inline void check_divisor_matches(const SpectralCurve& curve, const Divisor& div) {
    if (div.points != curve.divisor.points || div.mults != curve.divisor.mults)
        throw InvalidInput("cubic: divisor does not match the curve's divisor");
}

}  // namespace detail

// Root-sum residue form of the cubic:
//   c(xi,eta,zeta) = sum_p Res^2_p sum_{a in R} a(xi)a(eta)a(zeta)/a(lambda),
// which for sl2 collapses (both roots contributing equally) to
//   sum_m 4 p_i(e_m) p_j(e_m) p_k(e_m) q_D(e_m) / bhat'(e_m)^2.
// Slots may carry distinct bases (needed for the normalized transport).
inline CubicTensor cubic_root_sum_mixed(const SpectralCurve& curve,
                                        const std::vector<Poly>& slot_i,
                                        const std::vector<Poly>& slot_j,
                                        const std::vector<Poly>& slot_k,
                                        const std::string& label) {
    detail::check_generic_for_cubic(curve);
    const int g = int(slot_i.size());
    if (int(slot_j.size()) != g || int(slot_k.size()) != g)
        throw InvalidInput("cubic_root_sum_mixed: slot size mismatch");
    CubicTensor c(g, label);

    const auto& e = curve.branch_points;
    const size_t M = e.size();
    std::vector<cplx> w(M);  // 4 q_D(e_m) / bhat'(e_m)^2
    for (size_t m = 0; m < M; ++m) {
        cplx dp = curve.bhat_prime.eval(e[m]);
        w[m] = 4.0 * curve.frame.q_D.eval(e[m]) / (dp * dp);
    }
    std::vector<std::vector<cplx>> vi(size_t(g), std::vector<cplx>(M, 0.0));
    std::vector<std::vector<cplx>> vj = vi, vk = vi;
    for (int a = 0; a < g; ++a)
        for (size_t m = 0; m < M; ++m) {
            vi[size_t(a)][m] = slot_i[size_t(a)].eval(e[m]);
            vj[size_t(a)][m] = slot_j[size_t(a)].eval(e[m]);
            vk[size_t(a)][m] = slot_k[size_t(a)].eval(e[m]);
        }
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) {
                cplx s = 0.0;
                for (size_t m = 0; m < M; ++m)
                    s += w[m] * vi[size_t(i)][m] * vj[size_t(j)][m] * vk[size_t(k)][m];
                c.at(i, j, k) = s;
            }
    return c;
}

inline CubicTensor cubic_root_sum(const SpectralCurve& curve, const Divisor& div,
                                  const std::vector<LeafTangent>& tangents) {
    detail::check_divisor_matches(curve, div);
    if (int(tangents.size()) != curve.genus)
        throw InvalidInput("cubic_root_sum: expected one tangent per leaf basis direction");
    std::vector<Poly> ps;
    for (const auto& t : tangents) ps.push_back(t.p);
    return cubic_root_sum_mixed(curve, ps, ps, ps, "leaf");
}

// Discriminant log-derivative form:
//   c(xi)(eta,zeta) = 1/2 sum_p Res^2_p( (L_Y D / D) eta cup zeta ),
// with D = -4 disc_scale * bhat e^2, so L_Y D / D = delta_bhat / bhat
// (any constant multiple of D drops out; disc_scale makes that testable).
// Evaluation goes through res2_closed on the combined rational expression
// h dz^2/bhat^2 with h = p_i q_D * (killing cup numerator).
inline CubicTensor cubic_disc_log(const SpectralCurve& curve, const Divisor& div,
                                  const std::vector<LeafTangent>& tangents,
                                  double disc_scale = 1.0) {
    detail::check_divisor_matches(curve, div);
    detail::check_generic_for_cubic(curve);
    if (int(tangents.size()) != curve.genus)
        throw InvalidInput("cubic_disc_log: expected one tangent per leaf basis direction");
    const int g = curve.genus;
    CubicTensor c(g, "leaf");

    // d/dbeta of (disc_scale * -4 bhat) over itself: the scale cancels here
    // exactly as it would for any constant normalization of the discriminant.
    const double ratio_scale = (-4.0 * disc_scale) / (-4.0 * disc_scale);

    for (int j = 0; j < g; ++j)
        for (int k = j; k < g; ++k) {
            QuadDiffPayload cup = killing_cup(spectral::tangent_to_differential(tangents[size_t(j)]),
                                              spectral::tangent_to_differential(tangents[size_t(k)]));
            for (int i = 0; i < g; ++i) {
                Poly h = tangents[size_t(i)].p * curve.frame.q_D * cup.numerator * cplx(ratio_scale);
                cplx s = 0.0;
                for (const auto& e : curve.branch_points) s += res2_closed(h, curve, e);
                c.at(i, j, k) = 0.5 * s;
                c.at(i, k, j) = c.at(i, j, k);
            }
        }
    return c;
}

// Max entrywise relative difference between the two evaluation routes.
inline double ab_residual(const CubicTensor& a, const CubicTensor& b) {
    double m = 0, s = std::max({a.max_abs(), b.max_abs(), 1e-300});
    for (size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m / s;
}

}  // namespace hitchin::cubic

#endif
