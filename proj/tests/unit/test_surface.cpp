#include <doctest.h>

#include "quartic/surface.hpp"

using namespace quartic;

TEST_CASE("surface validation") {
    CHECK_THROWS_AS(parse_surface("1,0,-1,-1"), Error);
    CHECK_THROWS_AS(parse_surface("1,1,1,-1"), Error);   // product -1
    CHECK_THROWS_AS(parse_surface("6,-2,-3,-1"), Error);  // product -36
    CHECK_THROWS_AS(parse_surface("1,1,-1"), Error);
    CHECK(parse_surface("1,1,-1,-1").sqrt_abcd() == 1);
    CHECK(parse_surface("-2,1,1,-2").sqrt_abcd() == 2);
}

TEST_CASE("rational coefficients clear to a content-one integer vector") {
    Surface s = parse_surface("1/2,1/2,-1/2,-1/2");
    CHECK(s.int_coeffs() == Vec4I{1, 1, -1, -1});
    CHECK(s.contains(parse_point("1:1:1:1")));
    Surface t = parse_surface("2,2,-2,-2");
    CHECK(t.int_coeffs() == Vec4I{1, 1, -1, -1});
}

TEST_CASE("membership and classification") {
    Surface s = parse_surface("1,1,-1,-1");
    CHECK(s.contains(parse_point("133:134:158:59")));
    CHECK(!s.contains(parse_point("1:1:1:2")));
    CHECK(classify_point(s, parse_point("133:134:158:59")).kind == PointClass::Generic);
    CHECK(classify_point(s, parse_point("1:0:1:0")).kind == PointClass::OmegaPoint);
    PointClass lp = classify_point(s, parse_point("1:2:1:2"));
    CHECK(lp.kind == PointClass::OnLine);
    CHECK(lp.pairing == LinePairing::XZ_YW);
    // (1:1:1:1) lies on two lines; the first matching pairing is reported.
    CHECK(classify_point(s, parse_point("1:1:1:1")).kind == PointClass::OnLine);
    Surface t = parse_surface("-2,1,1,-2");
    CHECK(classify_point(t, parse_point("0:1:1:1")).kind == PointClass::CoordinatePlane);
    CHECK_THROWS_AS(classify_point(s, parse_point("1:1:1:2")), Error);
}

TEST_CASE("sign automorphisms act projectively") {
    ProjPoint p = parse_point("1:2:3:4");
    // Negating w is the same projective map as negating x, y, z.
    CHECK(apply_sign_aut(SignAut(8), p) == apply_sign_aut(SignAut(7), p));
    CHECK(apply_sign_aut(SignAut(3), p).str() == "1:2:-3:-4");
    CHECK(SignAut::all().size() == 8);
    CHECK(SignAut::double_flips().size() == 3);
    for (const SignAut& sig : SignAut::double_flips())
        CHECK(apply_sign_aut(sig, apply_sign_aut(sig, p)) == p);
}

TEST_CASE("tangent plane is the reduced gradient") {
    Surface s = parse_surface("1,1,-1,-1");
    ProjPoint p = parse_point("133:134:158:59");
    Vec4I t = tangent_plane(s, p);
    CHECK(t == Vec4I{Int(133) * 133 * 133, Int(134) * 134 * 134, -Int(158) * 158 * 158,
                     -Int(59) * 59 * 59});
    Int dot = 0;
    for (int i = 0; i < 4; ++i) dot += t[static_cast<size_t>(i)] * p[i];
    CHECK(dot == 0);
    CHECK_THROWS_AS(tangent_plane(s, parse_point("1:1:1:2")), Error);
}

TEST_CASE("sum-zero transport normalizes the seed to the all-ones point") {
    Surface s = parse_surface("1,1,-1,-1");
    ProjPoint p = parse_point("133:134:158:59");
    SumZeroTransport tr = transport_sum_zero(s, p);
    Rat sum = 0;
    for (const auto& c : tr.target.coeffs()) sum += c;
    CHECK(sum == 0);
    CHECK(tr.forward(p) == parse_point("1:1:1:1"));
    CHECK(tr.backward(tr.forward(p)) == p);
    // Transport carries the surface points along.
    ProjPoint q = apply_sign_aut(SignAut(3), p);
    CHECK(tr.target.contains(tr.forward(q)));
    CHECK(tr.backward(tr.forward(q)) == q);
    CHECK_THROWS_AS(transport_sum_zero(parse_surface("-2,1,1,-2"), parse_point("0:1:1:1")), Error);
}
