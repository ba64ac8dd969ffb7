#ifndef HITCHIN_PERIODS_HPP
#define HITCHIN_PERIODS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "hitchin/common.hpp"
#include "hitchin/errors.hpp"
#include "hitchin/linalg.hpp"
#include "hitchin/poly.hpp"
#include "hitchin/spectral.hpp"

namespace hitchin::periods {

// ---------------------------------------------------------------------------
// Homology scheme for the even hyperelliptic model y^2 = lc prod (z - e_m),
// 2g+2 simple branch points, no branching at infinity.
//
// The branch points are ordered lexicographically by (Re, Im); the polyline
// e_1 -> e_2 -> ... -> e_{2g+2} is then x-monotone, hence simple, and the
// configuration is isotopic to the classical collinear picture.  Cuts are
// the odd chain segments [e_1,e_2], [e_3,e_4], ..., gaps the even ones.
// y is continued along the whole chain, detouring around each branch point
// on the right-hand side of the walk.  In terms of the doubled segment
// integrals
//     S_j = 2 Int_{cut_j} phi,   T_j = 2 Int_{gap_j} phi
// (both taken with the walk branch of y, in walk direction) the cycles
//     A_j = S_j,    B_k = -(T_k + T_{k+1} + ... + T_g)
// form a canonical basis: A.B = id, A.A = B.B = 0, oriented so that the
// normalized matrix lands in Siegel space.  Correctness is certified a
// posteriori (Z symmetric, Im Z > 0) on every run.
// ---------------------------------------------------------------------------

struct PeriodConfig {
    double quad_tol = 1e-10;  // relative tolerance on cycle integrals
    double sym_tol = 1e-8;    // allowed |Z - Z^T| / |Z|
    double cond_max = 1e8;
    int min_order = 16;
    int max_order = 4096;
    bool certify = true;  // run the symmetry / positivity certificate
};

struct HomologyBasis {
    std::vector<std::pair<int, int>> pairs;        // g+1 cut endpoint index pairs
    std::vector<int> a_cycles;                     // cut indices carrying A-cycles
    std::vector<std::vector<int>> b_chain_spec;    // gap segments entering each B-cycle
};

struct PeriodData {
    CMat A, B, Z;
    CMat N;  // normalization: columns express the normalized differentials
    double cond_A = 0;
    double sym_residual = 0;
    double min_im_eig = 0;
};

// Sorting permutation by (Re, Im); deterministic tie-break.
inline std::vector<int> canonical_order(const std::vector<cplx>& pts) {
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (pts[size_t(a)].real() != pts[size_t(b)].real())
            return pts[size_t(a)].real() < pts[size_t(b)].real();
        return pts[size_t(a)].imag() < pts[size_t(b)].imag();
    });
    return idx;
}

inline HomologyBasis build_homology(const std::vector<cplx>& ordered_pts) {
    const int n = int(ordered_pts.size());
    if (n < 4 || n % 2 != 0)
        throw InvalidInput("build_homology: need an even number (>= 4) of branch points");
    const int g = n / 2 - 1;
    HomologyBasis h;
    for (int j = 0; j <= g; ++j) h.pairs.push_back({2 * j, 2 * j + 1});
    for (int j = 0; j < g; ++j) h.a_cycles.push_back(j);
    for (int k = 0; k < g; ++k) {
        std::vector<int> gaps;
        for (int j = k; j < g; ++j) gaps.push_back(j);
        h.b_chain_spec.push_back(gaps);
    }
    return h;
}

namespace detail {

// Continuation state of y = sqrt(lc) prod sign_i sqrt(z - e_i) along a path.
// Hops are sign-matched per factor; ambiguous hops are bisected.
class BranchTracker {
  public:
    BranchTracker(const std::vector<cplx>* pts, cplx lc_sqrt, cplx z0)
        : pts_(pts), lc_sqrt_(lc_sqrt), z_(z0), sign_(pts->size(), 1) {}

    const cplx& position() const { return z_; }

    void advance(cplx target, int depth = 0) {
        if (depth > 48)
            throw NonConvergence("BranchTracker: continuation path too close to a branch point");
        for (size_t i = 0; i < pts_->size(); ++i) {
            cplx prev = double(sign_[i]) * std::sqrt(z_ - (*pts_)[i]);
            cplx cand = std::sqrt(target - (*pts_)[i]);
            double dplus = std::abs(cand - prev);
            double dminus = std::abs(-cand - prev);
            double lo = std::min(dplus, dminus), hi = std::max(dplus, dminus);
            if (lo > 0.7 * hi) {
                // ambiguous: split the straight hop
                cplx mid = 0.5 * (z_ + target);
                advance(mid, depth + 1);
                advance(target, depth + 1);
                return;
            }
            // provisional; committed below once all factors resolve
        }
        for (size_t i = 0; i < pts_->size(); ++i) {
            cplx prev = double(sign_[i]) * std::sqrt(z_ - (*pts_)[i]);
            cplx cand = std::sqrt(target - (*pts_)[i]);
            sign_[i] = (std::abs(cand - prev) <= std::abs(-cand - prev)) ? 1 : -1;
        }
        z_ = target;
    }

    cplx value() const {
        cplx y = lc_sqrt_;
        for (size_t i = 0; i < pts_->size(); ++i)
            y *= double(sign_[i]) * std::sqrt(z_ - (*pts_)[i]);
        return y;
    }

  private:
    const std::vector<cplx>* pts_;
    cplx lc_sqrt_;
    cplx z_;
    std::vector<int> sign_;
};

// The chain with per-segment entry states of the y-continuation.
// Not copyable: the stored trackers point into pts_.
class Chain {
  public:
    Chain(const Chain&) = delete;
    Chain& operator=(const Chain&) = delete;

    Chain(std::vector<cplx> ordered_pts, cplx lc) : pts_(std::move(ordered_pts)), lc_(lc) {
        const int n = int(pts_.size());
        if (n < 2) throw InvalidInput("Chain: need at least 2 branch points");
        cplx lc_sqrt = std::sqrt(lc_);

        // entry offsets: stay a fixed fraction inside each segment, away
        // from every other branch point
        radius_.resize(size_t(n));
        for (int i = 0; i < n; ++i) {
            double dmin = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j)
                if (j != i) dmin = std::min(dmin, std::abs(pts_[size_t(j)] - pts_[size_t(i)]));
            radius_[size_t(i)] = 0.25 * dmin;
        }

        cplx u0 = direction(0);
        BranchTracker walk(&pts_, lc_sqrt, pts_[0] + entry_radius(0, 0) * u0);
        entries_.push_back(walk);

        for (int i = 0; i + 2 < n; ++i) {
            // along segment i to the detour start before p_{i+1}
            cplx ui = direction(i);
            cplx v = pts_[size_t(i) + 1];
            double rho = entry_radius(i, 1);
            walk.advance(v - rho * ui);

            // polygonal arc around p_{i+1}, swept on the right-hand side of
            // the walk (counterclockwise from arg(-u_i) to arg(u_{i+1}))
            cplx un = direction(i + 1);
            double rho_next = entry_radius(i + 1, 0);
            double pha = std::arg(-ui);
            double phb = std::arg(un);
            double delta = phb - pha;
            while (delta <= 1e-12) delta += 2.0 * pi;
            while (delta > 2.0 * pi) delta -= 2.0 * pi;
            int steps = std::max(2, int(std::ceil(delta / (pi / 4))));
            for (int s = 1; s <= steps; ++s) {
                double ph = pha + delta * s / steps;
                double r = rho + (rho_next - rho) * s / steps;
                walk.advance(v + r * cplx(std::cos(ph), std::sin(ph)));
            }
            entries_.push_back(walk);  // state at p_{i+1} + rho_next * u_{i+1}
        }
    }

    int num_segments() const { return int(pts_.size()) - 1; }

    // Batched integrals Int_seg h_a(z) dz / y(z) for all numerators at once.
    // Endpoint square-root singularities are absorbed by Gauss-Chebyshev
    // nodes; the order doubles until the whole battery is converged.
    std::vector<cplx> segment_integrals(int seg, const std::vector<Poly>& numerators,
                                        const PeriodConfig& cfg) const {
        const cplx p0 = pts_[size_t(seg)], p1 = pts_[size_t(seg) + 1];
        const cplx mid = 0.5 * (p0 + p1), r = 0.5 * (p1 - p0);
        const double entry_u = -1.0 + 2.0 * entry_radius(seg, 0) / std::abs(p1 - p0);

        std::vector<cplx> prev(numerators.size(), 0.0), cur(numerators.size(), 0.0);
        bool have_prev = false;
        for (int n = cfg.min_order; n <= cfg.max_order; n *= 2) {
            std::vector<double> us(size_t(n), 0.0);
            for (int k = 0; k < n; ++k) us[size_t(k)] = std::cos((2.0 * k + 1.0) * pi / (2.0 * n));
            std::sort(us.begin(), us.end());

            std::vector<cplx> yvals(size_t(n), 0.0);
            // nodes below the entry point, walking toward p0
            {
                BranchTracker t = entries_[size_t(seg)];
                for (int k = int(us.size()) - 1; k >= 0; --k) {
                    if (us[size_t(k)] > entry_u) continue;
                    t.advance(mid + r * us[size_t(k)]);
                    yvals[size_t(k)] = t.value();
                }
            }
            // nodes above it, walking toward p1
            {
                BranchTracker t = entries_[size_t(seg)];
                for (int k = 0; k < n; ++k) {
                    if (us[size_t(k)] <= entry_u) continue;
                    t.advance(mid + r * us[size_t(k)]);
                    yvals[size_t(k)] = t.value();
                }
            }

            std::fill(cur.begin(), cur.end(), cplx(0.0));
            for (int k = 0; k < n; ++k) {
                double u = us[size_t(k)];
                cplx z = mid + r * u;
                cplx w = r * std::sqrt(1.0 - u * u) / yvals[size_t(k)];
                for (size_t a = 0; a < numerators.size(); ++a)
                    cur[a] += numerators[a].eval(z) * w;
            }
            for (auto& v : cur) v *= pi / n;

            if (have_prev) {
                double scale = 1e-300, diff = 0;
                for (size_t a = 0; a < cur.size(); ++a) {
                    scale = std::max(scale, std::abs(cur[a]));
                    diff = std::max(diff, std::abs(cur[a] - prev[a]));
                }
                if (diff <= cfg.quad_tol * scale) return cur;
            }
            prev = cur;
            have_prev = true;
        }
        throw QuadratureStall("segment_integrals: tolerance unmet at max quadrature order");
    }

  private:
    cplx direction(int seg) const {
        cplx d = pts_[size_t(seg) + 1] - pts_[size_t(seg)];
        return d / std::abs(d);
    }
    // entry offset into segment seg from its start (side=0) or end (side=1)
    double entry_radius(int seg, int side) const {
        double len = std::abs(pts_[size_t(seg) + 1] - pts_[size_t(seg)]);
        double r = radius_[size_t(seg) + size_t(side)];
        return std::min(r, 0.2 * len);
    }

    std::vector<cplx> pts_;
    cplx lc_;
    std::vector<double> radius_;
    std::vector<BranchTracker> entries_;
};

}  // namespace detail

enum class CycleKind { A, B };

// One cycle integral of the differential h(z) dz / y over A_k or B_k.
inline cplx cycle_integral(const std::vector<cplx>& ordered_pts, cplx lc, const Poly& h,
                           CycleKind kind, int index, const PeriodConfig& cfg = {}) {
    detail::Chain chain(ordered_pts, lc);
    const int g = int(ordered_pts.size()) / 2 - 1;
    std::vector<Poly> batt{h};
    if (kind == CycleKind::A) {
        // cut indices 0..g are valid segment loops; 0..g-1 are the A-cycles
        if (index < 0 || 2 * index + 1 >= int(ordered_pts.size()))
            throw InvalidInput("cycle_integral: A-cycle index out of range");
        return 2.0 * chain.segment_integrals(2 * index, batt, cfg)[0];
    }
    if (index < 0 || index >= g)
        throw InvalidInput("cycle_integral: B-cycle index out of range");
    cplx s = 0.0;
    for (int j = index; j < g; ++j) s += 2.0 * chain.segment_integrals(2 * j + 1, batt, cfg)[0];
    return -s;
}

// Period matrices of the ordered branch-point configuration:
//   A[a][j] = Int_{A_j} z^a dz/y,  B[a][k] = Int_{B_k} z^a dz/y,
//   Z = A^{-1} B  (normalized B-periods), N = A^{-T} (normalization).
inline PeriodData period_matrix_for(const std::vector<cplx>& ordered_pts, cplx lc,
                                    const PeriodConfig& cfg = {}) {
    const int n = int(ordered_pts.size());
    if (n < 4 || n % 2 != 0)
        throw InvalidInput("period_matrix: need an even number (>= 4) of branch points");
    const int g = n / 2 - 1;

    HomologyBasis hom = build_homology(ordered_pts);
    detail::Chain chain(ordered_pts, lc);
    std::vector<Poly> monomials;
    for (int a = 0; a < g; ++a) monomials.push_back(Poly::monomial(a));

    CMat A(g, g), T(g, g);
    for (int j = 0; j < g; ++j) {
        // cut j runs between the points of pair j; gap j follows it
        auto cut = chain.segment_integrals(hom.pairs[size_t(j)].first, monomials, cfg);
        auto gap = chain.segment_integrals(hom.pairs[size_t(j)].second, monomials, cfg);
        for (int a = 0; a < g; ++a) {
            A(a, j) = 2.0 * cut[size_t(a)];
            T(a, j) = 2.0 * gap[size_t(a)];
        }
    }

    PeriodData pd;
    pd.A = A;
    pd.B = CMat(g, g);
    for (int k = 0; k < g; ++k)
        for (int a = 0; a < g; ++a) {
            cplx s = 0.0;
            for (int j : hom.b_chain_spec[size_t(k)]) s += T(a, j);
            pd.B(a, k) = -s;
        }

    pd.cond_A = linalg::cond1(A);
    if (pd.cond_A > cfg.cond_max)
        throw IllConditioned("period_matrix: A-period matrix condition number " +
                             std::to_string(pd.cond_A));

    pd.N = linalg::inverse(A.transpose());
    pd.Z = linalg::solve(A, pd.B);

    CMat diff = pd.Z - pd.Z.transpose();
    pd.sym_residual = diff.max_abs() / std::max(pd.Z.max_abs(), 1e-300);

    std::vector<std::vector<double>> imz(size_t(g), std::vector<double>(size_t(g), 0.0));
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) imz[size_t(i)][size_t(j)] = pd.Z(i, j).imag();
    // symmetrize before the eigenvalue sweep
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            double s = 0.5 * (imz[size_t(i)][size_t(j)] + imz[size_t(j)][size_t(i)]);
            imz[size_t(i)][size_t(j)] = imz[size_t(j)][size_t(i)] = s;
        }
    pd.min_im_eig = linalg::min_eig_sym(imz);

    if (cfg.certify) {
        if (pd.sym_residual > cfg.sym_tol)
            throw SymmetryFail(pd.sym_residual,
                               "period_matrix: Z not symmetric (homology basis defect)");
        if (pd.min_im_eig <= 0)
            throw PositivityFail(pd.min_im_eig,
                                 "period_matrix: Im Z not positive definite (homology basis defect)");
    }
    return pd;
}

inline PeriodData period_matrix(const spectral::SpectralCurve& curve,
                                const PeriodConfig& cfg = {}) {
    if (curve.genus < 1) throw InvalidInput("period_matrix: genus >= 1 required");
    return period_matrix_for(curve.branch_points, curve.bhat.c.back(), cfg);
}

}  // namespace hitchin::periods

#endif
