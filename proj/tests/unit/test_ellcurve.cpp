#include <doctest.h>

#include <set>

#include "quartic/ellcurve.hpp"
#include "quartic/endo.hpp"

using namespace quartic;

namespace {

const Surface& v0prime() {
    static Surface s = parse_surface("1,1,-1,-1");
    return s;
}

const ProjPoint& euler() {
    static ProjPoint p = parse_point("133:134:158:59");
    return p;
}

const RulingPair& rulings() {
    static RulingPair r = RulingPair::build(v0prime(), tau_square(euler()));
    return r;
}

} // namespace

TEST_CASE("group law on 37a: y^2 + y = x^3 - x") {
    WeierstrassCurve e{0, 0, 1, -1, 0};
    CHECK(e.discriminant() == 37);
    EllPoint p = EllPoint::affine(0, 0);
    CHECK(on_curve(e, p));
    CHECK(ell_neg(e, p) == EllPoint::affine(0, -1));
    CHECK(ell_add(e, p, ell_neg(e, p)) == EllPoint::O());
    CHECK(ell_mul(e, 2, p) == EllPoint::affine(1, 0));
    CHECK(ell_mul(e, 3, p) == EllPoint::affine(-1, -1));
    CHECK(ell_mul(e, -2, p) == ell_neg(e, ell_mul(e, 2, p)));
    CHECK(ell_mul(e, 0, p) == EllPoint::O());
    // (0,0) has infinite order on this rank-1 curve.
    CHECK(!bounded_torsion_order(e, p));
    CHECK_THROWS_AS(ell_add(e, p, EllPoint::affine(1, 1)), Error);
}

TEST_CASE("torsion orders on y^2 = x^3 + 1") {
    WeierstrassCurve e{0, 0, 0, 0, 1};
    CHECK(bounded_torsion_order(e, EllPoint::affine(2, 3)) == 6);
    CHECK(bounded_torsion_order(e, EllPoint::affine(0, 1)) == 3);
    CHECK(bounded_torsion_order(e, EllPoint::affine(-1, 0)) == 2);
    CHECK(bounded_torsion_order(e, EllPoint::O()) == 1);
}

TEST_CASE("full rational 2-torsion on y^2 = x^3 - x") {
    WeierstrassCurve e{0, 0, 0, -1, 0};
    for (int x : {-1, 0, 1}) {
        EllPoint t = EllPoint::affine(x, 0);
        CHECK(bounded_torsion_order(e, t) == 2);
        CHECK(ell_add(e, t, t) == EllPoint::O());
    }
}

TEST_CASE("fibre-to-Weierstrass transport round-trips") {
    for (int i = 1; i <= 2; ++i) {
        auto [e, m] = fibre_to_weierstrass(v0prime(), rulings(), i, euler());
        CHECK(e.discriminant() != 0);
        CHECK(m.curve() == e);
        CHECK(m.origin_point() == euler());
        CHECK(m.to_curve(euler()) == EllPoint::O());
        CHECK(m.to_fibre(EllPoint::O()) == euler());
        // Transport some fibre companions and come back.
        for (const SignAut& sig : SignAut::double_flips()) {
            ProjPoint q = apply_sign_aut(sig, euler());
            REQUIRE(rulings().fibre_value(i, q) == rulings().fibre_value(i, euler()));
            EllPoint img = m.to_curve(q);
            CHECK(on_curve(e, img));
            CHECK(m.to_fibre(img) == q);
        }
        ProjPoint ei = apply_endo(v0prime(), rulings(), i, euler());
        CHECK(m.to_fibre(m.to_curve(ei)) == ei);
    }
}

TEST_CASE("double sign flips transport to the three nontrivial 2-torsion points") {
    // Regression guard for chord negation on the plane cubic: a sign-flipped
    // seed exercises the exceptional (pool) paths of the transport.
    for (const ProjPoint& seed : {euler(), apply_sign_aut(SignAut(3), euler())}) {
        auto [e, m] = fibre_to_weierstrass(v0prime(), rulings(), 1, seed);
        std::set<std::pair<Rat, Rat>> images;
        for (const SignAut& sig : SignAut::double_flips()) {
            EllPoint t = m.to_curve(apply_sign_aut(sig, seed));
            REQUIRE(!t.infinity);
            CHECK(ell_add(e, t, t) == EllPoint::O());
            images.insert({t.x, t.y});
        }
        CHECK(images.size() == 3);
    }
}

TEST_CASE("singular fibres are rejected") {
    // (1:2:1:2) lies on a line; one of the two fibrations degenerates there.
    ProjPoint lp = parse_point("1:2:1:2");
    int bad = rulings().is_singular_fibre(1, lp) ? 1 : 2;
    CHECK_THROWS_AS(fibre_to_weierstrass(v0prime(), rulings(), bad, lp), Error);
    try {
        fibre_to_weierstrass(v0prime(), rulings(), bad, lp);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadInput);
    }
    // The other fibration is fine at the same point.
    CHECK_NOTHROW(fibre_to_weierstrass(v0prime(), rulings(), 3 - bad, lp));
}
