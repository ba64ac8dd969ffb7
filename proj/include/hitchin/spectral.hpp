#ifndef HITCHIN_SPECTRAL_HPP
#define HITCHIN_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hitchin/common.hpp"
#include "hitchin/errors.hpp"
#include "hitchin/poly.hpp"

namespace hitchin::spectral {

// Effective divisor D = sum n_i q_i on the affine chart of P^1.
// deg D >= 3 so that L = K(D) has positive degree and L^2 is very ample.
struct Divisor {
    std::vector<cplx> points;
    std::vector<int> mults;

    Divisor(std::vector<cplx> q, std::vector<int> n)
        : points(std::move(q)), mults(std::move(n)) {
        if (points.size() != mults.size())
            throw InvalidInput("Divisor: points/multiplicities length mismatch");
        int deg = 0;
        for (int m : mults) {
            if (m <= 0) throw InvalidInput("Divisor: multiplicities must be positive");
            deg += m;
        }
        if (deg < 3) throw InvalidInput("Divisor: deg D >= 3 required");
        for (size_t i = 0; i < points.size(); ++i)
            for (size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j])
                    throw InvalidInput("Divisor: points must be pairwise distinct");
    }

    int degree() const {
        int d = 0;
        for (int m : mults) d += m;
        return d;
    }
};

// Affine frame data for L = K(D) on P^1: sections of L^k are represented
// by polynomials of degree <= k*d in the frame e^k = (dz/q_D)^k, where
// q_D = prod (z - q_i)^{n_i} and d = deg D - 2 = deg L.
struct BundleFrame {
    int d;
    Poly q_D;

    explicit BundleFrame(const Divisor& div)
        : d(div.degree() - 2), q_D(poly_from_roots(div.points, div.mults)) {}
};

struct GenericityConfig {
    double separation_rel = 1e-8;   // min branch-point separation / scale
    double divisor_rel = 1e-8;      // min distance branch points <-> supp D / scale
    double residual_rel = 1e-12;    // Newton polish residual for roots
};

// SL2 cameral curve yhat^2 = bhat(z) over the affine chart, bhat of degree
// exactly 2d (no branching at infinity), simple branch points away from
// supp D.  Genus d-1.
struct SpectralCurve {
    Divisor divisor;
    BundleFrame frame;
    Poly bhat;
    Poly bhat_prime;
    std::vector<cplx> branch_points;  // canonical (Re, Im)-lex order
    int genus;
    double scale;  // 1 + max |branch point|

    int num_branch() const { return int(branch_points.size()); }
};

// All roots of bhat, Newton-polished, canonically ordered.
inline std::vector<cplx> branch_points(const Poly& bhat) {
    int deg = bhat.degree();
    if (deg < 1) throw InvalidInput("branch_points: constant polynomial");
    return poly_roots(bhat);
}

inline SpectralCurve make_curve(const Divisor& div, const Poly& coeffs,
                                const GenericityConfig& cfg = {}) {
    BundleFrame frame(div);
    const int want = 2 * frame.d;

    if (int(coeffs.c.size()) != want + 1)
        throw InvalidInput("make_curve: expected exactly " + std::to_string(want + 1) +
                           " coefficients for deg D = " + std::to_string(div.degree()));
    double cnorm = 0;
    for (const auto& c : coeffs.c) cnorm = std::max(cnorm, std::abs(c));
    if (cnorm == 0 || std::abs(coeffs.c.back()) < 1e-13 * cnorm)
        throw GenericityViolation(GenericityKind::DegreeDrop,
                                  "make_curve: leading coefficient vanishes (branching at infinity)");

    std::vector<cplx> e = branch_points(coeffs);
    double scale = 1.0;
    for (const auto& z : e) scale = std::max(scale, std::abs(z));

    for (size_t i = 0; i < e.size(); ++i)
        for (size_t j = i + 1; j < e.size(); ++j)
            if (std::abs(e[i] - e[j]) < cfg.separation_rel * scale)
                throw GenericityViolation(GenericityKind::RepeatedRoot,
                                          "make_curve: branch points closer than tolerance (non-simple ramification)");

    for (const auto& z : e)
        for (const auto& q : div.points)
            if (std::abs(z - q) < cfg.divisor_rel * scale)
                throw GenericityViolation(GenericityKind::RootAtDivisor,
                                          "make_curve: branch point meets supp D");

    for (const auto& z : e) {
        double res = std::abs(coeffs.eval(z));
        if (res > cfg.residual_rel * coeffs.scale_at(std::abs(z)))
            throw NonConvergence("make_curve: branch point residual above tolerance");
    }

    return SpectralCurve{div, frame, coeffs, coeffs.derivative(), e, frame.d - 1, scale};
}

// Tangent to the symplectic leaf: delta bhat = p * q_D with deg p <= d-2,
// i.e. a section of L^2(-D).
struct LeafTangent {
    Poly p;
};

// t-valued holomorphic differential p(z) dz / (2 yhat) on the curve.
struct HoloDifferential {
    Poly p;
};

// Monomial basis p_i = z^i, i = 0..d-2; dim = d-1 = genus.
inline std::vector<LeafTangent> leaf_basis(const Divisor& div) {
    const int d = div.degree() - 2;
    std::vector<LeafTangent> basis;
    for (int i = 0; i + 2 <= d; ++i) basis.push_back({Poly::monomial(i)});
    return basis;
}

// The omega_t-isomorphism is the identity on the polynomial payload:
// delta bhat = p q_D  <->  xi = p dz/(2 yhat).  Absolute normalization is
// absorbed into the harness constant kappa.
inline HoloDifferential tangent_to_differential(const LeafTangent& t) {
    return HoloDifferential{t.p};
}

// Branch-point velocities along a leaf direction, by implicit
// differentiation of bhat(e) + beta * delta_bhat(e) = 0:
//   e_dot_m = -delta_bhat(e_m) / bhat'(e_m).
inline std::vector<cplx> branch_motion(const SpectralCurve& curve, const LeafTangent& t) {
    Poly delta = t.p * curve.frame.q_D;
    std::vector<cplx> vel;
    vel.reserve(curve.branch_points.size());
    for (const auto& e : curve.branch_points) {
        cplx dp = curve.bhat_prime.eval(e);
        if (std::abs(dp) < 1e-10 * std::max(1.0, curve.bhat_prime.scale_at(std::abs(e))))
            throw DerivativeVanishes("branch_motion: bhat' vanishes at a branch point");
        vel.push_back(-delta.eval(e) / dp);
    }
    return vel;
}

}  // namespace hitchin::spectral

#endif
