#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hitchin/spectral.hpp"

using namespace hitchin;
using namespace hitchin::spectral;

static Divisor five_points() {
    return Divisor({cplx(0, 0), cplx(2, 0), cplx(-2, 0), cplx(3, 0), cplx(-3, 0)},
                   {1, 1, 1, 1, 1});
}

static Poly z6_minus_1() {
    std::vector<cplx> c(7, 0.0);
    c[0] = -1.0;
    c[6] = 1.0;
    return Poly(c);
}

TEST_CASE("divisor validation") {
    REQUIRE_THROWS_AS(Divisor({cplx(0, 0), cplx(1, 0)}, {1, 1}), InvalidInput);  // deg 2
    REQUIRE_THROWS_AS(Divisor({cplx(0, 0), cplx(0, 0), cplx(1, 0)}, {1, 1, 1}),
                      InvalidInput);  // repeated point
    REQUIRE_THROWS_AS(Divisor({cplx(0, 0)}, {0}), InvalidInput);
    REQUIRE_NOTHROW(Divisor({cplx(0, 0), cplx(1, 0)}, {2, 1}));  // deg 3 with multiplicity
}

TEST_CASE("bundle frame degree bookkeeping") {
    Divisor d = five_points();
    BundleFrame f(d);
    REQUIRE(f.d == 3);
    REQUIRE(f.q_D.degree() == 5);  // = d + 2
}

TEST_CASE("make_curve: genus-2 example and genericity violations") {
    Divisor div = five_points();
    SpectralCurve curve = make_curve(div, z6_minus_1());
    REQUIRE(curve.genus == 2);
    REQUIRE(curve.num_branch() == 6);  // = |R| deg L = 2d
    for (const auto& e : curve.branch_points)
        REQUIRE(std::abs(std::pow(e, 6) - 1.0) < 1e-12);

    // repeated root: (z^2-1)^2 needs deg D = 4
    Divisor div4({cplx(3, 0), cplx(-3, 0), cplx(0, 3), cplx(0, -3)}, {1, 1, 1, 1});
    Poly sq({cplx(1, 0), 0, cplx(-2, 0), 0, cplx(1, 0)});
    try {
        make_curve(div4, sq);
        FAIL("expected GenericityViolation");
    } catch (const GenericityViolation& e) {
        REQUIRE(e.kind == GenericityKind::RepeatedRoot);
    }

    // branch point on supp D
    Divisor div_hit({cplx(1, 0), cplx(2, 0), cplx(-2, 0), cplx(3, 0), cplx(-3, 0)},
                    {1, 1, 1, 1, 1});
    try {
        make_curve(div_hit, z6_minus_1());
        FAIL("expected GenericityViolation");
    } catch (const GenericityViolation& e) {
        REQUIRE(e.kind == GenericityKind::RootAtDivisor);
    }

    // degree drop
    std::vector<cplx> c(7, 0.0);
    c[0] = -1.0;
    c[5] = 1.0;
    try {
        make_curve(div, Poly(c));
        FAIL("expected GenericityViolation");
    } catch (const GenericityViolation& e) {
        REQUIRE(e.kind == GenericityKind::DegreeDrop);
    }
}

TEST_CASE("leaf basis dimension equals genus") {
    REQUIRE(leaf_basis(Divisor({cplx(0, 0), cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(4, 0)},
                               {1, 1, 1, 1, 1}))
                .size() == 2);  // deg D = 5
    REQUIRE(leaf_basis(Divisor({cplx(0, 0), cplx(1, 0), cplx(2, 0), cplx(3, 0)}, {1, 1, 1, 1}))
                .size() == 1);  // deg D = 4
    REQUIRE(leaf_basis(Divisor({cplx(0, 0), cplx(1, 0), cplx(2, 0)}, {2, 2, 2})).size() == 3);
    // up to d = 6: dim = d - 1 = genus throughout
    REQUIRE(leaf_basis(Divisor({cplx(0, 0), cplx(1, 0), cplx(2, 0)}, {3, 2, 2})).size() == 4);
    REQUIRE(leaf_basis(Divisor({cplx(0, 0), cplx(1, 0), cplx(2, 0)}, {3, 3, 2})).size() == 5);
    // basis polynomials are 1, z, z^2, ...
    auto basis = leaf_basis(five_points());
    REQUIRE(basis[0].p.degree() == 0);
    REQUIRE(basis[1].p.degree() == 1);
}

TEST_CASE("tangent_to_differential is the identity on payloads") {
    LeafTangent zero{Poly({cplx(0, 0)})};
    REQUIRE(tangent_to_differential(zero).p.is_zero());
    LeafTangent lin{Poly::monomial(1)};
    REQUIRE(tangent_to_differential(lin).p.degree() == 1);
}

TEST_CASE("branch_motion closed forms") {
    // bhat = z^2 - 1 with delta bhat = 1: velocities -1/(2e) at e = +-1.
    // Realize delta bhat = q_D * p with p = 1 by dividing out q_D at the end:
    // use the direct formula through a degree-3 divisor whose q_D is absorbed.
    Divisor div({cplx(5, 0), cplx(-5, 0), cplx(0, 5)}, {1, 1, 1});  // d = 1
    Poly b({cplx(-1, 0), 0, cplx(1, 0)});
    SpectralCurve curve = make_curve(div, b);
    // leaf basis is empty at d=1 (genus 0); test the velocity formula with
    // an explicit constant tangent against hand values of -q_D(e)/b'(e)
    LeafTangent t{Poly::constant(1.0)};
    auto vel = branch_motion(curve, t);
    for (size_t m = 0; m < vel.size(); ++m) {
        cplx e = curve.branch_points[m];
        cplx expect = -curve.frame.q_D.eval(e) / (2.0 * e);
        REQUIRE(std::abs(vel[m] - expect) < 1e-12 * std::abs(expect));
    }

    // delta bhat vanishing at a branch point gives velocity 0 there
    Divisor div5 = Divisor({cplx(0, 0), cplx(2, 0), cplx(-2, 0), cplx(3, 0), cplx(-3, 0)},
                           {1, 1, 1, 1, 1});
    SpectralCurve c6 = make_curve(div5, z6_minus_1());
    LeafTangent kill_e0{Poly({-c6.branch_points[0], 1.0})};  // p(z) = z - e_0
    auto v6 = branch_motion(c6, kill_e0);
    REQUIRE(std::abs(v6[0]) < 1e-12);
}

TEST_CASE("branch_motion agrees with finite-difference root tracking") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Divisor div({cplx(0, 0), cplx(2, 0), cplx(-2, 0), cplx(3, 0), cplx(-3, 0)},
                {1, 1, 1, 1, 1});

    auto run = [&](const Poly& b, const LeafTangent& t) {
        SpectralCurve curve = make_curve(div, b);
        double minsep = 1e30;
        const auto& bp = curve.branch_points;
        for (size_t i = 0; i < bp.size(); ++i)
            for (size_t j = i + 1; j < bp.size(); ++j)
                minsep = std::min(minsep, std::abs(bp[i] - bp[j]));
        if (minsep < 0.15) return;  // too clustered for clean tracking
        auto vel = branch_motion(curve, t);
        double vmax = 1.0;
        for (const auto& v : vel) vmax = std::max(vmax, std::abs(v));
        const double h = 1e-5 / vmax;
        Poly delta = t.p * curve.frame.q_D;
        SpectralCurve plus = make_curve(div, b + delta * cplx(h));
        SpectralCurve minus = make_curve(div, b + delta * cplx(-h));
        for (size_t m = 0; m < vel.size(); ++m) {
            cplx e = curve.branch_points[m];
            auto nearest = [&](const SpectralCurve& c) {
                cplx best = c.branch_points[0];
                for (const auto& x : c.branch_points)
                    if (std::abs(x - e) < std::abs(best - e)) best = x;
                return best;
            };
            cplx fd = (nearest(plus) - nearest(minus)) / (2.0 * h);
            REQUIRE(std::abs(fd - vel[m]) < 1e-6 * std::max(1.0, std::abs(vel[m])));
        }
    };

    run(z6_minus_1(), LeafTangent{Poly::constant(1.0)});  // delta bhat = q_D
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cplx> c(7, 0.0);
        for (auto& x : c) x = cplx(u(rng), u(rng));
        c[6] += 2.0;  // keep the leading coefficient away from zero
        Poly b(c);
        try {
            run(b, LeafTangent{Poly({cplx(u(rng), u(rng)), cplx(u(rng), u(rng))})});
        } catch (const GenericityViolation&) {
            continue;  // rare non-generic sample; skip
        }
    }
}

TEST_CASE("leaf constraint: perturbation fixes the divisor jet") {
    // deg D = 6 with a double point: delta bhat = p q_D matches bhat and its
    // first n_i - 1 derivatives at each q_i for any step s.
    Divisor div({cplx(0.5, 0.5), cplx(2, 0), cplx(-2, 1), cplx(3, -1)}, {2, 2, 1, 1});
    const int d = div.degree() - 2;  // 4
    std::vector<cplx> c(size_t(2 * d + 1), 0.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& x : c) x = cplx(u(rng), u(rng));
    c.back() += 3.0;
    Poly b(c);
    SpectralCurve curve = make_curve(div, b);

    for (const auto& t : leaf_basis(div)) {
        Poly pert = b + t.p * curve.frame.q_D * cplx(0.37, -0.11);
        Poly diff = pert - b;
        for (size_t i = 0; i < div.points.size(); ++i) {
            Poly dk = diff;
            for (int k = 0; k < div.mults[i]; ++k) {
                REQUIRE(std::abs(dk.eval(div.points[i])) < 1e-12 * b.scale_at(std::abs(div.points[i])));
                dk = dk.derivative();
            }
        }
    }
}

TEST_CASE("branch_motion refuses non-simple ramification") {
    Divisor div({cplx(5, 0), cplx(-5, 0), cplx(0, 5)}, {1, 1, 1});
    SpectralCurve curve = make_curve(div, Poly({cplx(-1, 0), 0, cplx(1, 0)}));
    curve.branch_points[0] = 0.0;  // force a fake doubled point
    REQUIRE_THROWS_AS(branch_motion(curve, LeafTangent{Poly::constant(1.0)}),
                      DerivativeVanishes);
}
