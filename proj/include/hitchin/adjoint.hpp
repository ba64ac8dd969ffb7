#ifndef HITCHIN_ADJOINT_HPP
#define HITCHIN_ADJOINT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "hitchin/common.hpp"
#include "hitchin/linalg.hpp"
#include "hitchin/rootsys.hpp"

namespace hitchin::adjoint {

using rootsys::CartanType;
using rootsys::Family;
using rootsys::RootSystem;

using cvec = std::vector<cplx>;

namespace detail {

// Elementary symmetric polynomials e_1..e_k of the given values.
inline cvec elementary_symmetric(const cvec& x) {
    cvec e(x.size() + 1, 0.0);
    e[0] = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = std::min(i + 1, x.size()); j >= 1; --j)
            e[j] += x[i] * e[j - 1];
    e.erase(e.begin());
    return e;
}

inline cplx bilinear(const cvec& a, const cvec& b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

// The Chevalley generators I_1..I_l of C[t]^W for one Cartan type,
// evaluated on rank-coordinates:
//   A_l      simple-coroot coordinates; I_i = signed elementary symmetric
//            functions of the l+1 zero-sum eigenvalues (I(xH) = x^2 for A_1,
//            the characteristic-polynomial convention)
//   B/C/D_l  standard coordinates x_1..x_l; e_i(x^2), plus the Pfaffian
//            x_1...x_l for D_l
//   G_2      <x,x> and a degree-6 Reynolds average over the Weyl orbit of a
//            fixed generic linear form; algebraic independence is certified
//            at construction via a nonzero Jacobian at a test point
class InvariantSet {
  public:
    explicit InvariantSet(const CartanType& t)
        : type_(t), rs_(rootsys::build_root_system(t)) {
        const int l = t.rank;
        const int ad = rs_.ambient_dim;

        embed_.assign(size_t(ad), std::vector<double>(size_t(l), 0.0));
        if (t.family == Family::A) {
            // columns = simple coroots e_i - e_{i+1}
            for (int j = 0; j < l; ++j) {
                embed_[size_t(j)][size_t(j)] = 1.0;
                embed_[size_t(j) + 1][size_t(j)] = -1.0;
            }
        } else if (t.family == Family::G) {
            // columns = simple coroots 2a/<a,a>
            for (int j = 0; j < 2; ++j) {
                const RatVec& a = rs_.simple_roots[size_t(j)];
                Rat nn = dot(a, a);
                for (int i = 0; i < 3; ++i)
                    embed_[size_t(i)][size_t(j)] = (Rat(2) * a[size_t(i)] / nn).to_double();
            }
        } else {
            for (int j = 0; j < l; ++j) embed_[size_t(j)][size_t(j)] = 1.0;
        }

        degrees_ = rootsys::exponent_data(t).degrees;

        if (t.family == Family::G) {
            auto w = rootsys::generate_weyl(rs_);
            for (const auto& m : w.elements) {
                std::vector<double> flat;
                for (const auto& r : m.a) flat.push_back(r.to_double());
                weyl_flat_.push_back(flat);
            }
            rho_ = {1.0, 2.0, -3.0};
            certify_independence();
        }
    }

    const CartanType& type() const { return type_; }
    const RootSystem& root_system() const { return rs_; }
    int rank() const { return type_.rank; }
    const std::vector<int>& degrees() const { return degrees_; }

    // rank-coordinates -> ambient coordinates of t
    cvec embed(const cvec& v) const {
        cvec x(embed_.size(), 0.0);
        for (size_t i = 0; i < embed_.size(); ++i)
            for (size_t j = 0; j < embed_[i].size(); ++j)
                x[i] += embed_[i][j] * v[j];
        return x;
    }

    cvec eval_all(const cvec& v) const {
        const int l = type_.rank;
        cvec out(size_t(l), 0.0);
        switch (type_.family) {
            case Family::A: {
                cvec x = embed(v);
                cvec e = detail::elementary_symmetric(x);
                for (int i = 1; i <= l; ++i)
                    out[size_t(i) - 1] = ((i % 2) ? -1.0 : 1.0) * e[size_t(i)];
                break;
            }
            case Family::B:
            case Family::C: {
                cvec sq(v.size());
                for (size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
                cvec e = detail::elementary_symmetric(sq);
                for (int i = 0; i < l; ++i) out[size_t(i)] = e[size_t(i)];
                break;
            }
            case Family::D: {
                cvec sq(v.size());
                cplx pf = 1.0;
                for (size_t i = 0; i < v.size(); ++i) {
                    sq[i] = v[i] * v[i];
                    pf *= v[i];
                }
                cvec e = detail::elementary_symmetric(sq);
                // e_1(x^2)..e_{l-1}(x^2) of degrees 2,4,..,2l-2 plus the
                // Pfaffian at degree l, ordered to match the degree table
                std::vector<std::pair<int, cplx>> tagged;
                for (int i = 0; i + 1 < l; ++i) tagged.push_back({2 * (i + 1), e[size_t(i)]});
                tagged.push_back({l, pf});
                std::stable_sort(tagged.begin(), tagged.end(),
                                 [](auto& a, auto& b) { return a.first < b.first; });
                for (int i = 0; i < l; ++i) out[size_t(i)] = tagged[size_t(i)].second;
                break;
            }
            case Family::G: {
                cvec x = embed(v);
                out[0] = detail::bilinear(x, x);
                cplx s = 0.0;
                for (const auto& w : weyl_flat_) {
                    cvec wx(3, 0.0);
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) wx[size_t(i)] += w[size_t(i) * 3 + j] * x[size_t(j)];
                    cplx f = rho_[0] * wx[0] + rho_[1] * wx[1] + rho_[2] * wx[2];
                    cplx f2 = f * f;
                    s += f2 * f2 * f2;
                }
                out[1] = s / double(weyl_flat_.size());
                break;
            }
        }
        return out;
    }

    cplx eval(int i, const cvec& v) const { return eval_all(v)[size_t(i)]; }

    // Weyl action transported to rank-coordinates: v -> E^+ (w . E v).
    cvec weyl_apply_coords(const RatMat& w, const cvec& v) const {
        cvec x = embed(v);
        cvec wx(x.size(), 0.0);
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < x.size(); ++j)
                wx[i] += w(int(i), int(j)).to_double() * x[j];
        return coords_from_ambient(wx);
    }

    cvec coords_from_ambient(const cvec& x) const {
        // least-squares solve E v = x (exact when x lies in t)
        const int l = type_.rank;
        CMat g(l, l), b(l, 1);
        for (int i = 0; i < l; ++i) {
            for (int j = 0; j < l; ++j) {
                double s = 0;
                for (size_t k = 0; k < embed_.size(); ++k)
                    s += embed_[k][size_t(i)] * embed_[k][size_t(j)];
                g(i, j) = s;
            }
            cplx s = 0.0;
            for (size_t k = 0; k < embed_.size(); ++k) s += embed_[k][size_t(i)] * x[k];
            b(i, 0) = s;
        }
        CMat v = linalg::solve(g, b);
        cvec out(size_t(l), 0.0);
        for (int i = 0; i < l; ++i) out[size_t(i)] = v(i, 0);
        return out;
    }

  private:
    void certify_independence() {
        // evaluated after construction of the G2 evaluators
        cvec v0 = {cplx(0.37, 0.21), cplx(-0.54, 0.13)};
        cplx d = jacobian_det_of(*this, v0);
        if (std::abs(d) < 1e-10)
            throw std::logic_error("G2 invariants: Reynolds average degenerate at test point");
    }

    static cplx jacobian_det_of(const InvariantSet& inv, const cvec& v);

    CartanType type_;
    RootSystem rs_;
    std::vector<std::vector<double>> embed_;
    std::vector<int> degrees_;
    std::vector<std::vector<double>> weyl_flat_;  // G2 only
    std::vector<double> rho_;                     // G2 only
};

inline cvec chi(const InvariantSet& inv, const cvec& v) { return inv.eval_all(v); }

// Jacobian det of chi by central differences with one Richardson step.
inline cplx jacobian_det(const InvariantSet& inv, const cvec& v) {
    const int l = inv.rank();
    double vnorm = 0;
    for (const auto& z : v) vnorm += std::norm(z);
    vnorm = std::sqrt(vnorm);
    const double h = 1e-5 * (1.0 + vnorm);

    auto diff = [&](double step) {
        CMat m(l, l);
        for (int j = 0; j < l; ++j) {
            cvec vp = v, vm = v;
            vp[size_t(j)] += step;
            vm[size_t(j)] -= step;
            cvec ip = inv.eval_all(vp), im = inv.eval_all(vm);
            for (int i = 0; i < l; ++i) m(i, j) = (ip[size_t(i)] - im[size_t(i)]) / (2.0 * step);
        }
        return m;
    };

    CMat d1 = diff(h), d2 = diff(h / 2);
    CMat r = d2 * cplx(4.0 / 3.0) - d1 * cplx(1.0 / 3.0);
    return linalg::det(r);
}

inline cplx InvariantSet::jacobian_det_of(const InvariantSet& inv, const cvec& v) {
    return jacobian_det(inv, v);
}

// alpha(x) for a root alpha and an ambient vector x (Euclidean pairing).
inline cplx root_value(const RatVec& alpha, const cvec& x) {
    cplx s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += alpha[i].to_double() * x[i];
    return s;
}

// D_chi(x) = prod over all roots of alpha(x); x in ambient coordinates.
inline cplx discriminant(const RootSystem& rs, const cvec& x) {
    cplx p = 1.0;
    for (const auto& a : rs.roots) p *= root_value(a, x);
    return p;
}

inline cplx pos_root_product(const RootSystem& rs, const cvec& x) {
    cplx p = 1.0;
    for (const auto& a : rs.positive_roots) p *= root_value(a, x);
    return p;
}

struct DiscriminantReport {
    std::vector<cvec> sample_points;  // rank-coordinates
    cvec jacobian_values;
    cvec pos_root_products;
    cvec full_root_products;
    cplx ratio_mean = 0.0;
    double ratio_spread = 0.0;
    bool pass = false;
    // det(d chi) has degree |R+|, matching the positive-root product; the
    // full-root product has degree |R| and cannot be proportional to it.
    bool full_root_degree_consistent = false;
};

// Sample regular points and test det(d chi) = c * prod_{a>0} a pointwise.
inline DiscriminantReport verify_chevalley(const InvariantSet& inv, const RootSystem& rs,
                                           int n_samples, unsigned seed,
                                           double spread_tol = 1e-6) {
    if (n_samples < 2) throw InvalidInput("verify_chevalley: need n_samples >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    DiscriminantReport rep;
    cvec ratios;
    int rejects = 0;
    while (int(rep.sample_points.size()) < n_samples) {
        cvec v(size_t(inv.rank()), 0.0);
        for (auto& z : v) z = cplx(u(rng), u(rng));
        cvec x = inv.embed(v);
        bool near = false;
        for (const auto& a : rs.roots)
            if (std::abs(root_value(a, x)) < 1e-3) { near = true; break; }
        if (near) {
            if (++rejects >= 100)
                throw SampleOnHyperplane("verify_chevalley: 100 consecutive near-hyperplane samples");
            continue;
        }
        rejects = 0;
        cplx jd = jacobian_det(inv, v);
        cplx pp = pos_root_product(rs, x);
        rep.sample_points.push_back(v);
        rep.jacobian_values.push_back(jd);
        rep.pos_root_products.push_back(pp);
        rep.full_root_products.push_back(discriminant(rs, x));
        ratios.push_back(jd / pp);
    }

    cplx mean = 0.0;
    for (const auto& r : ratios) mean += r;
    mean /= double(ratios.size());
    double spread = 0.0;
    for (const auto& r : ratios) spread = std::max(spread, std::abs(r - mean));
    rep.ratio_mean = mean;
    rep.ratio_spread = std::abs(mean) > 0 ? spread / std::abs(mean) : spread;
    rep.pass = rep.ratio_spread < spread_tol;
    return rep;
}

}  // namespace hitchin::adjoint

#endif
