#ifndef HITCHIN_ROOTSYS_HPP
#define HITCHIN_ROOTSYS_HPP

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "hitchin/errors.hpp"
#include "hitchin/rational.hpp"

namespace hitchin::rootsys {

enum class Family { A, B, C, D, G };

// Simple Lie algebra types supported at desk scale:
// A1-A4, B2-B3, C2-C3, D4, G2.
struct CartanType {
    Family family;
    int rank;

    CartanType(Family f, int r) : family(f), rank(r) {
        if (!supported(f, r))
            throw UnsupportedType("unsupported Cartan type " + name_of(f, r));
    }

    static bool supported(Family f, int r) {
        switch (f) {
            case Family::A: return r >= 1 && r <= 4;
            case Family::B: return r >= 2 && r <= 3;
            case Family::C: return r >= 2 && r <= 3;
            case Family::D: return r == 4;
            case Family::G: return r == 2;
        }
        return false;
    }

    static std::string name_of(Family f, int r) {
        static const char* fam = "ABCDG";
        return std::string(1, fam[int(f)]) + std::to_string(r);
    }
    std::string name() const { return name_of(family, rank); }

    // Parse "A2", "G2", ... ; throws UnsupportedType.
    static CartanType parse(const std::string& s) {
        if (s.size() < 2) throw UnsupportedType("cannot parse Cartan type '" + s + "'");
        Family f;
        switch (s[0]) {
            case 'A': f = Family::A; break;
            case 'B': f = Family::B; break;
            case 'C': f = Family::C; break;
            case 'D': f = Family::D; break;
            case 'G': f = Family::G; break;
            default: throw UnsupportedType("cannot parse Cartan type '" + s + "'");
        }
        int r = 0;
        try {
            r = std::stoi(s.substr(1));
        } catch (...) {
            throw UnsupportedType("cannot parse Cartan type '" + s + "'");
        }
        return CartanType(f, r);
    }

    int dim_g() const {
        switch (family) {
            case Family::A: return (rank + 1) * (rank + 1) - 1;
            case Family::B: return rank * (2 * rank + 1);
            case Family::C: return rank * (2 * rank + 1);
            case Family::D: return rank * (2 * rank - 1);
            case Family::G: return 14;
        }
        return 0;
    }
};

// Roots realized as exact rational vectors in a Euclidean ambient space
// (A_l and G2 sit in the zero-sum hyperplane of dimension rank+1; every
// realization here uses the standard form, so inner_product is identity).
struct RootSystem {
    CartanType type;
    int ambient_dim;
    std::vector<RatVec> roots;           // all roots, positives first
    std::vector<RatVec> positive_roots;
    std::vector<RatVec> simple_roots;
    RatMat inner_product;

    const RatVec& root(int i) const { return roots[i]; }
};

// Weyl group as explicit orthogonal matrices on the ambient space.
struct WeylGroup {
    std::vector<RatMat> elements;
    std::vector<int> generators;  // indices of the simple reflections
    size_t order() const { return elements.size(); }
};

struct ExponentData {
    std::vector<int> degrees;    // d_i, ascending
    std::vector<int> exponents;  // m_i = d_i - 1
};

namespace detail {

inline RatVec unit(int dim, int i) {
    RatVec v(dim, Rat(0));
    v[i] = Rat(1);
    return v;
}

inline bool contains(const std::vector<RatVec>& set, const RatVec& v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

}  // namespace detail

inline ExponentData exponent_data(const CartanType& t) {
    ExponentData e;
    switch (t.family) {
        case Family::A:
            for (int i = 2; i <= t.rank + 1; ++i) e.degrees.push_back(i);
            break;
        case Family::B:
        case Family::C:
            for (int i = 1; i <= t.rank; ++i) e.degrees.push_back(2 * i);
            break;
        case Family::D:
            for (int i = 1; i < t.rank; ++i) e.degrees.push_back(2 * i);
            e.degrees.push_back(t.rank);
            std::sort(e.degrees.begin(), e.degrees.end());
            break;
        case Family::G:
            e.degrees = {2, 6};
            break;
    }
    for (int d : e.degrees) e.exponents.push_back(d - 1);
    return e;
}

inline RootSystem build_root_system(const CartanType& t) {
    RootSystem rs{t, 0, {}, {}, {}, {}};
    const int l = t.rank;
    auto& pos = rs.positive_roots;

    switch (t.family) {
        case Family::A: {
            rs.ambient_dim = l + 1;
            for (int i = 0; i <= l; ++i)
                for (int j = i + 1; j <= l; ++j) {
                    RatVec v(l + 1, Rat(0));
                    v[i] = Rat(1);
                    v[j] = Rat(-1);
                    pos.push_back(v);
                }
            for (int i = 0; i < l; ++i) {
                RatVec v(l + 1, Rat(0));
                v[i] = Rat(1);
                v[i + 1] = Rat(-1);
                rs.simple_roots.push_back(v);
            }
            break;
        }
        case Family::B: {
            rs.ambient_dim = l;
            for (int i = 0; i < l; ++i)
                for (int j = i + 1; j < l; ++j) {
                    RatVec v(l, Rat(0));
                    v[i] = Rat(1); v[j] = Rat(-1);
                    pos.push_back(v);
                    v[j] = Rat(1);
                    pos.push_back(v);
                }
            for (int i = 0; i < l; ++i) pos.push_back(detail::unit(l, i));
            for (int i = 0; i + 1 < l; ++i) {
                RatVec v(l, Rat(0));
                v[i] = Rat(1); v[i + 1] = Rat(-1);
                rs.simple_roots.push_back(v);
            }
            rs.simple_roots.push_back(detail::unit(l, l - 1));
            break;
        }
        case Family::C: {
            rs.ambient_dim = l;
            for (int i = 0; i < l; ++i)
                for (int j = i + 1; j < l; ++j) {
                    RatVec v(l, Rat(0));
                    v[i] = Rat(1); v[j] = Rat(-1);
                    pos.push_back(v);
                    v[j] = Rat(1);
                    pos.push_back(v);
                }
            for (int i = 0; i < l; ++i) {
                RatVec v(l, Rat(0));
                v[i] = Rat(2);
                pos.push_back(v);
            }
            for (int i = 0; i + 1 < l; ++i) {
                RatVec v(l, Rat(0));
                v[i] = Rat(1); v[i + 1] = Rat(-1);
                rs.simple_roots.push_back(v);
            }
            RatVec last(l, Rat(0));
            last[l - 1] = Rat(2);
            rs.simple_roots.push_back(last);
            break;
        }
        case Family::D: {
            rs.ambient_dim = l;
            for (int i = 0; i < l; ++i)
                for (int j = i + 1; j < l; ++j) {
                    RatVec v(l, Rat(0));
                    v[i] = Rat(1); v[j] = Rat(-1);
                    pos.push_back(v);
                    v[j] = Rat(1);
                    pos.push_back(v);
                }
            for (int i = 0; i + 1 < l; ++i) {
                RatVec v(l, Rat(0));
                v[i] = Rat(1); v[i + 1] = Rat(-1);
                rs.simple_roots.push_back(v);
            }
            RatVec last(l, Rat(0));
            last[l - 2] = Rat(1); last[l - 1] = Rat(1);
            rs.simple_roots.push_back(last);
            break;
        }
        case Family::G: {
            // Zero-sum realization in 3 coordinates keeps everything rational:
            // short roots are the A2 roots, long roots the (2,-1,-1) patterns.
            rs.ambient_dim = 3;
            auto vec = [](std::int64_t a, std::int64_t b, std::int64_t c) {
                return RatVec{Rat(a), Rat(b), Rat(c)};
            };
            pos = {vec(1, -1, 0), vec(-2, 1, 1), vec(-1, 0, 1),
                   vec(0, -1, 1), vec(1, -2, 1), vec(-1, -1, 2)};
            rs.simple_roots = {vec(1, -1, 0), vec(-2, 1, 1)};
            break;
        }
    }

    rs.roots = pos;
    for (const auto& v : pos) rs.roots.push_back(Rat(-1) * v);
    rs.inner_product = RatMat::identity(rs.ambient_dim);
    return rs;
}

// Reflection in the hyperplane orthogonal to alpha (ambient coordinates).
inline RatVec reflect_vector(const RatVec& alpha, const RatVec& v) {
    Rat c = Rat(2) * dot(v, alpha) / dot(alpha, alpha);
    return v - c * alpha;
}

// s_alpha(v) = v - 2<v,a>/<a,a> a; alpha must belong to the root set.
inline RatVec reflect(const RootSystem& rs, const RatVec& alpha, const RatVec& v) {
    if (!detail::contains(rs.roots, alpha))
        throw NotARoot("reflect: vector is not a root of " + rs.type.name());
    return reflect_vector(alpha, v);
}

inline RatMat reflection_matrix(int dim, const RatVec& alpha) {
    RatMat m(dim);
    for (int j = 0; j < dim; ++j) {
        RatVec col = reflect_vector(alpha, detail::unit(dim, j));
        for (int i = 0; i < dim; ++i) m(i, j) = col[i];
    }
    return m;
}

// Closure of the simple reflections under multiplication.  The supported
// groups have order at most 1152; exceeding 10^4 generated elements
// signals a bug (or a deliberately non-crystallographic input).
inline WeylGroup generate_weyl(const RootSystem& rs) {
    constexpr size_t kCap = 10000;
    WeylGroup w;
    std::unordered_set<RatMat, RatMatHash> seen;

    std::vector<RatMat> gens;
    for (const auto& a : rs.simple_roots)
        gens.push_back(reflection_matrix(rs.ambient_dim, a));

    std::vector<RatMat> frontier{RatMat::identity(rs.ambient_dim)};
    seen.insert(frontier[0]);
    w.elements.push_back(frontier[0]);

    while (!frontier.empty()) {
        std::vector<RatMat> next;
        for (const auto& m : frontier)
            for (const auto& g : gens) {
                RatMat p = g * m;
                if (seen.insert(p).second) {
                    w.elements.push_back(p);
                    next.push_back(p);
                    if (w.elements.size() > kCap)
                        throw ClosureOverflow("generate_weyl: closure exceeded 10^4 elements");
                }
            }
        frontier = std::move(next);
    }

    for (const auto& a : rs.simple_roots) {
        RatMat g = reflection_matrix(rs.ambient_dim, a);
        for (size_t i = 0; i < w.elements.size(); ++i)
            if (w.elements[i] == g) { w.generators.push_back(int(i)); break; }
    }
    return w;
}

// Coefficients of a root in the simple-root basis (exact).  Used by the
// invariant checks: every root must be an all-nonnegative or
// all-nonpositive integral combination.
inline RatVec simple_root_coefficients(const RootSystem& rs, const RatVec& root) {
    const int k = int(rs.simple_roots.size());
    // Solve the Gram system G c = b with G_ij = <a_i, a_j>.
    std::vector<RatVec> g(k, RatVec(k));
    RatVec b(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) g[i][j] = dot(rs.simple_roots[i], rs.simple_roots[j]);
        b[i] = dot(rs.simple_roots[i], root);
    }
    // Gaussian elimination, exact.
    for (int col = 0; col < k; ++col) {
        int piv = col;
        while (piv < k && g[piv][col].is_zero()) ++piv;
        if (piv == k)
            throw std::logic_error("simple_root_coefficients: singular Gram matrix");
        std::swap(g[piv], g[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < k; ++r) {
            if (r == col || g[r][col].is_zero()) continue;
            Rat f = g[r][col] / g[col][col];
            for (int c = 0; c < k; ++c) g[r][c] -= f * g[col][c];
            b[r] -= f * b[col];
        }
    }
    RatVec c(k);
    for (int i = 0; i < k; ++i) c[i] = b[i] / g[i][i];
    return c;
}

}  // namespace hitchin::rootsys

#endif
