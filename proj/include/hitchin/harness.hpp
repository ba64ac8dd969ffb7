#ifndef HITCHIN_HARNESS_HPP
#define HITCHIN_HARNESS_HPP

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <vector>

#include "hitchin/common.hpp"
#include "hitchin/cubic.hpp"
#include "hitchin/errors.hpp"
#include "hitchin/periods.hpp"
#include "hitchin/spectral.hpp"

namespace hitchin::harness {

using cubic::CubicTensor;
using periods::PeriodConfig;
using periods::PeriodData;
using spectral::Divisor;
using spectral::LeafTangent;
using spectral::SpectralCurve;

struct VerificationConfig {
    Divisor divisor;
    Poly b_coeffs;
    double fd_step = 1e-4;
    double quad_tol = 1e-10;
    double sym_tol = 1e-8;
    double spread_tol = 1e-3;
    unsigned seed = 1;
    std::vector<int> directions;  // empty: all leaf basis directions
    int base_points = 1;          // >1: suite mode, extra points along the leaf
    bool richardson = false;

    VerificationConfig(Divisor d, Poly b) : divisor(std::move(d)), b_coeffs(std::move(b)) {}

    PeriodConfig period_config() const {
        PeriodConfig pc;
        pc.quad_tol = quad_tol;
        pc.sym_tol = sym_tol;
        return pc;
    }
};

struct StageReport {
    double periods_cond_A = 0;
    double periods_sym_residual = 0;
    double periods_min_im_eig = 0;
    double cubic_ab_residual = 0;
    double cubic_sym_residual = 0;
    double fd_sym_residual = 0;          // max over directions of |dZ - dZ^T|/|dZ|
    double transported_sym_residual = -1;  // full S3-symmetry of the FD tensor
};

struct KappaReport {
    int genus = 0;
    std::vector<cplx> kappa_entries;     // g^3 per-entry estimates (0 where skipped)
    std::vector<bool> participates;      // |Cnorm| above threshold
    cplx kappa_mean = 0.0;
    double relative_spread = 0.0;
    int entries_skipped = 0;
    bool pass = false;
    StageReport stages;
    // suite mode
    std::vector<cplx> base_point_means;
    double cross_base_spread = 0.0;
};

namespace detail {

inline double min_separation(const std::vector<cplx>& pts) {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            m = std::min(m, std::abs(pts[i] - pts[j]));
    return m;
}

// Match perturbed branch points to the base ordering by nearest neighbor.
// Refuses to guess when the matching is not a bijection or a point moved
// further than a tenth of the base separation.
inline std::vector<cplx> match_to_base(const std::vector<cplx>& base,
                                       const std::vector<cplx>& moved) {
    if (base.size() != moved.size())
        throw MatchingAmbiguous("branch matching: point counts differ");
    const double guard = 0.1 * min_separation(base);
    std::vector<cplx> out(base.size());
    std::vector<bool> used(moved.size(), false);
    for (size_t i = 0; i < base.size(); ++i) {
        size_t best = moved.size();
        double bestd = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < moved.size(); ++j) {
            double d = std::abs(moved[j] - base[i]);
            if (d < bestd) { bestd = d; best = j; }
        }
        if (best == moved.size() || used[best])
            throw MatchingAmbiguous("branch matching: nearest-neighbor map not a bijection");
        if (bestd > guard)
            throw MatchingAmbiguous("branch matching: displacement exceeds 10% of separation");
        used[best] = true;
        out[i] = moved[best];
    }
    return out;
}

}  // namespace detail

// Z of the curve bhat + s * delta, with homology continued from the base
// curve's canonical ordering (no re-sorting).
inline PeriodData perturbed_periods(const SpectralCurve& base, const Poly& delta, double s,
                                    const PeriodConfig& pc) {
    Poly coeffs = base.bhat + delta * cplx(s);
    SpectralCurve moved = spectral::make_curve(base.divisor, coeffs);
    std::vector<cplx> ordered = detail::match_to_base(base.branch_points, moved.branch_points);
    return periods::period_matrix_for(ordered, coeffs.c.back(), pc);
}

// Central-difference Gauss-Manin derivative dZ/dbeta_i along the leaf
// direction p_i q_D, optionally Richardson-extrapolated with step h/2.
inline CMat fd_gauss_manin(const SpectralCurve& curve, const LeafTangent& dir, double h,
                           const PeriodConfig& pc, bool richardson = false) {
    Poly delta = dir.p * curve.frame.q_D;

    // step guard: predicted displacement stays well below the separation
    double vmax = 0;
    for (const cplx& v : spectral::branch_motion(curve, dir)) vmax = std::max(vmax, std::abs(v));
    if (vmax * h > 0.1 * detail::min_separation(curve.branch_points))
        throw InvalidInput("fd_gauss_manin: fd_step too large for this curve");

    auto central = [&](double step) {
        PeriodData zp = perturbed_periods(curve, delta, +step, pc);
        PeriodData zm = perturbed_periods(curve, delta, -step, pc);
        return (zp.Z - zm.Z) * cplx(1.0 / (2.0 * step));
    };
    CMat d = central(h);
    if (richardson) {
        CMat d2 = central(h / 2);
        d = d2 * cplx(4.0 / 3.0) - d * cplx(1.0 / 3.0);
    }
    return d;
}

// Cubic with the first slot in the leaf basis and slots two and three
// transported to the normalized differentials omega_j = sum_a N[a][j] phi_a;
// phi_a = z^a dz/y corresponds to p = 2 z^a in the xi-parametrization.
inline CubicTensor cubic_in_normalized_basis(const SpectralCurve& curve, const Divisor& div,
                                             const CMat& N) {
    const int g = curve.genus;
    std::vector<Poly> leaf, mono2;
    for (const auto& t : spectral::leaf_basis(div)) leaf.push_back(t.p);
    for (int a = 0; a < g; ++a) mono2.push_back(Poly::monomial(a, 2.0));

    CubicTensor mixed = cubic::cubic_root_sum_mixed(curve, leaf, mono2, mono2, "leaf x mono x mono");
    CubicTensor out(g, "leaf x normalized x normalized");
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) {
                cplx s = 0.0;
                for (int a = 0; a < g; ++a)
                    for (int b = 0; b < g; ++b)
                        s += N(a, j) * N(b, k) * mixed.at(i, a, b);
                out.at(i, j, k) = s;
            }
    return out;
}

namespace detail {

struct SinglePoint {
    std::vector<cplx> kappa;       // g^3
    std::vector<bool> participates;
    cplx mean = 0.0;
    double spread = 0.0;
    int skipped = 0;
    double participation = 0.0;
    StageReport stages;
};

inline SinglePoint verify_at(const Divisor& div, const Poly& bhat,
                             const VerificationConfig& cfg) {
    SinglePoint out;
    SpectralCurve curve = spectral::make_curve(div, bhat);
    const int g = curve.genus;
    if (g < 1) throw InvalidInput("verify: genus >= 1 required (deg D >= 4)");

    PeriodConfig pc = cfg.period_config();
    PeriodData pd = periods::period_matrix(curve, pc);
    out.stages.periods_cond_A = pd.cond_A;
    out.stages.periods_sym_residual = pd.sym_residual;
    out.stages.periods_min_im_eig = pd.min_im_eig;

    auto basis = spectral::leaf_basis(div);
    CubicTensor ca = cubic::cubic_disc_log(curve, div, basis);
    CubicTensor cb = cubic::cubic_root_sum(curve, div, basis);
    out.stages.cubic_ab_residual = cubic::ab_residual(ca, cb);
    out.stages.cubic_sym_residual = cb.symmetry_residual();

    CubicTensor cnorm = cubic_in_normalized_basis(curve, div, pd.N);

    std::vector<int> dirs = cfg.directions;
    if (dirs.empty())
        for (int i = 0; i < g; ++i) dirs.push_back(i);
    for (int i : dirs)
        if (i < 0 || i >= g)
            throw InvalidInput("verify: leaf direction index " + std::to_string(i) +
                               " out of range for genus " + std::to_string(g));

    std::vector<CMat> fd(size_t(g), CMat{});
    std::vector<bool> have(size_t(g), false);
    auto run_dir = [&](int i) {
        return fd_gauss_manin(curve, basis[size_t(i)], cfg.fd_step, pc, cfg.richardson);
    };
    if (max_threads() > 1 && dirs.size() > 1) {
        std::vector<std::future<CMat>> futs;
        for (int i : dirs) futs.push_back(std::async(std::launch::async, run_dir, i));
        for (size_t n = 0; n < dirs.size(); ++n) {
            fd[size_t(dirs[n])] = futs[n].get();
            have[size_t(dirs[n])] = true;
        }
    } else {
        for (int i : dirs) {
            fd[size_t(i)] = run_dir(i);
            have[size_t(i)] = true;
        }
    }

    for (int i : dirs) {
        CMat diff = fd[size_t(i)] - fd[size_t(i)].transpose();
        double rel = diff.max_abs() / std::max(fd[size_t(i)].max_abs(), 1e-300);
        out.stages.fd_sym_residual = std::max(out.stages.fd_sym_residual, rel);
    }

    // kappa per entry
    out.kappa.assign(size_t(g) * g * g, 0.0);
    out.participates.assign(size_t(g) * g * g, false);
    double cmax = cnorm.max_abs();
    std::vector<cplx> vals;
    int considered = 0;
    for (int i : dirs)
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) {
                ++considered;
                size_t idx = (size_t(i) * g + j) * g + k;
                if (std::abs(cnorm.at(i, j, k)) <= 1e-8 * cmax || cmax == 0.0) {
                    ++out.skipped;
                    continue;
                }
                cplx kap = fd[size_t(i)](j, k) / cnorm.at(i, j, k);
                out.kappa[idx] = kap;
                out.participates[idx] = true;
                vals.push_back(kap);
            }
    if (vals.empty()) throw InvalidInput("verify: no usable tensor entries");
    for (const auto& v : vals) out.mean += v;
    out.mean /= double(vals.size());
    for (const auto& v : vals)
        out.spread = std::max(out.spread, std::abs(v - out.mean));
    out.spread /= std::max(std::abs(out.mean), 1e-300);
    out.participation = double(vals.size()) / double(considered);

    // full S3 symmetry of the FD tensor, first slot transported to the
    // normalized basis (p = 2 sum_a N[a][i] z^a); needs all directions
    if (int(dirs.size()) == g) {
        CubicTensor fdn(g, "normalized^3");
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                for (int k = 0; k < g; ++k) {
                    cplx s = 0.0;
                    for (int a = 0; a < g; ++a) s += 2.0 * pd.N(a, i) * fd[size_t(a)](j, k);
                    fdn.at(i, j, k) = s;
                }
        out.stages.transported_sym_residual = fdn.symmetry_residual();
    }
    return out;
}

}  // namespace detail

// End-to-end verification: kappa = FD / Cnorm must be one constant across
// all entries and directions (and, in suite mode, across base points).
inline KappaReport verify(const VerificationConfig& cfg) {
    KappaReport rep;
    detail::SinglePoint base = detail::verify_at(cfg.divisor, cfg.b_coeffs, cfg);
    SpectralCurve curve = spectral::make_curve(cfg.divisor, cfg.b_coeffs);
    rep.genus = curve.genus;
    rep.kappa_entries = base.kappa;
    rep.participates = base.participates;
    rep.kappa_mean = base.mean;
    rep.relative_spread = base.spread;
    rep.entries_skipped = base.skipped;
    rep.stages = base.stages;
    rep.base_point_means.push_back(base.mean);

    bool pass = base.spread < cfg.spread_tol && base.participation >= 0.8;

    if (cfg.base_points > 1) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        auto basis = spectral::leaf_basis(cfg.divisor);
        int made = 1;
        int attempts = 0;
        while (made < cfg.base_points && attempts < 40) {
            ++attempts;
            Poly shift({cplx(0.0)});
            for (const auto& t : basis)
                shift = shift + t.p * cplx(u(rng), u(rng));
            Poly b2 = cfg.b_coeffs + shift * curve.frame.q_D * cplx(0.1);
            try {
                detail::SinglePoint sp = detail::verify_at(cfg.divisor, b2, cfg);
                rep.base_point_means.push_back(sp.mean);
                pass = pass && sp.spread < cfg.spread_tol && sp.participation >= 0.8;
                ++made;
            } catch (const GenericityViolation&) {
                continue;  // resample the leaf direction
            }
        }
        if (made < cfg.base_points)
            throw InvalidInput("verify: could not sample enough generic base points");

        cplx mean = 0.0;
        for (const auto& m : rep.base_point_means) mean += m;
        mean /= double(rep.base_point_means.size());
        for (const auto& m : rep.base_point_means)
            rep.cross_base_spread = std::max(rep.cross_base_spread, std::abs(m - mean));
        rep.cross_base_spread /= std::max(std::abs(mean), 1e-300);
        pass = pass && rep.cross_base_spread < cfg.spread_tol;
    }

    rep.pass = pass;
    return rep;
}

}  // namespace hitchin::harness

#endif
