#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exset/canonical.hpp"
#include "support.hpp"

using namespace exset;
using exset::testing::rng;

TEST_CASE("veronese embedding values and incidence") {
    CHECK(veronese_embed(P1Point({1, 0})).same_as(ProjPoint({1, 0, 0})));
    CHECK(veronese_embed(P1Point({0, 1})).same_as(ProjPoint({0, 0, 1})));
    CHECK(veronese_embed(P1Point({1, 1})).same_as(ProjPoint({1, 2, 1})));

    auto r = rng(2);
    HomPoly conic = veronese_conic();
    for (int i = 0; i < 50; ++i) {
        P1Point p({exset::testing::random_unit_disc(r), exset::testing::random_unit_disc(r) + Complex(1.1, 0)});
        ProjPoint img = veronese_embed(p);
        CHECK(std::abs(conic.eval(img.coords())) < 1e-12 * 8.0);
    }
}

TEST_CASE("iota on the stock Moebius maps") {
    CHECK(iota(MoebiusClass::identity()).same_as(ProjTransform::identity()));

    MoebiusClass shift(Mat2{{1, 1, 0, 1}}); // z -> z + 1
    CHECK(iota(shift).same_as(ProjTransform(Mat3::from_rows({1, 1, 1}, {0, 1, 2}, {0, 0, 1}))));

    MoebiusClass doubling(Mat2{{2, 0, 0, 1}}); // z -> 2z
    CHECK(iota(doubling).same_as(ProjTransform(Mat3::from_rows({4, 0, 0}, {0, 2, 0}, {0, 0, 1}))));
}

TEST_CASE("iota is a morphism and intertwines the embedding") {
    auto r = rng(3);
    for (int i = 0; i < 100; ++i) {
        MoebiusClass m1 = exset::testing::random_moebius(r);
        MoebiusClass m2 = exset::testing::random_moebius(r);
        CHECK(iota(m1.compose(m2)).same_as(iota(m1).compose(iota(m2)), 1e-9));

        P1Point p({exset::testing::random_unit_disc(r), exset::testing::random_unit_disc(r) + Complex(1.1, 0)});
        ProjPoint lhs = apply(iota(m1), veronese_embed(p));
        ProjPoint rhs = veronese_embed(m1.apply(p));
        CHECK(lhs.same_as(rhs, 1e-9));
    }
}

TEST_CASE("iota leaves the Veronese conic invariant with unit scale") {
    auto r = rng(4);
    HomPoly conic = veronese_conic();
    for (int i = 0; i < 50; ++i) {
        InvarianceResult res = invariance_check(conic, iota(exset::testing::random_moebius(r)));
        CHECK(res.invariant);
        CHECK(std::abs(res.scale - 1.0) < 1e-9);
    }
}

TEST_CASE("cubic stabilizer elements") {
    CHECK(cubic_stabilizer_element(1.0).same_as(ProjTransform::identity()));

    ProjTransform two = cubic_stabilizer_element(2.0);
    CHECK(two.same_as(ProjTransform(Mat3::diagonal(1.0 / 32, 16, 2))));
    InvarianceResult res = invariance_check(cuspidal_cubic_model(), two);
    CHECK(res.invariant);
    CHECK(std::abs(res.scale - 8.0) < 1e-9);

    ProjTransform imag = cubic_stabilizer_element(Complex(0, 1));
    CHECK(imag.same_as(ProjTransform(Mat3::diagonal(Complex(0, -1), 1.0, Complex(0, 1)))));
    InvarianceResult resi = invariance_check(cuspidal_cubic_model(), imag);
    CHECK(resi.invariant);
    CHECK(std::abs(resi.scale - Complex(0, -1)) < 1e-9);

    CHECK_THROWS_AS((void)cubic_stabilizer_element(0.0), Error);
}

TEST_CASE("stabilizer group law") {
    auto r = rng(5);
    for (int i = 0; i < 30; ++i) {
        Complex a = exset::testing::random_unit_disc(r) + Complex(1.4, 0);
        Complex b = exset::testing::random_unit_disc(r) + Complex(1.4, 0);
        CHECK(cubic_stabilizer_element(a).compose(cubic_stabilizer_element(b))
                  .same_as(cubic_stabilizer_element(a * b), 1e-9));
    }
}

TEST_CASE("pencil elements fix every line through [1:0:0]") {
    CHECK(pencil_element(0, 0).same_as(ProjTransform::identity()));

    ProjTransform g = pencil_element(1, 2);
    InvarianceResult base = invariance_check(make_poly({{{0, 1, 0}, 1.0}}), g); // line y = 0
    CHECK(base.invariant);
    CHECK(std::abs(base.scale - 1.0) < 1e-12);

    // line through [1:0:0] and [0:1:-1]
    HomPoly other = make_poly({{{0, 1, 0}, 1.0}, {{0, 0, 1}, 1.0}});
    InvarianceResult res = invariance_check(other, g);
    CHECK(res.invariant);
    CHECK(std::abs(res.scale - 1.0) < 1e-12);

    auto r = rng(6);
    for (int i = 0; i < 20; ++i) {
        ProjTransform h = pencil_element(exset::testing::random_unit_disc(r), exset::testing::random_unit_disc(r));
        Complex dy = exset::testing::random_unit_disc(r), dz = exset::testing::random_unit_disc(r);
        if (std::abs(dy) + std::abs(dz) < 0.2) continue;
        HomPoly line = HomPoly(1, {{{0, 1, 0}, dy}, {{0, 0, 1}, dz}});
        InvarianceResult res2 = invariance_check(line, h);
        CHECK(res2.invariant);
        CHECK(std::abs(res2.scale - 1.0) < 1e-9);
    }
}

TEST_CASE("stabilizer constraint accepts exactly the diagonal family") {
    CHECK(stabilizer_constraint_check(ProjTransform(Mat3::diagonal(1.0 / 32, 16, 2))));
    CHECK(stabilizer_constraint_check(ProjTransform::identity()));
    CHECK_FALSE(stabilizer_constraint_check(ProjTransform(Mat3::diagonal(2, 1, 0.5))));
    CHECK_THROWS_AS((void)stabilizer_constraint_check(ProjTransform(Mat3::from_rows({1, 1, 0}, {0, 1, 0}, {0, 0, 1}))),
                    Error);

    auto r = rng(7);
    for (int i = 0; i < 20; ++i) {
        Complex a = exset::testing::random_unit_disc(r) + Complex(1.3, 0);
        CHECK(stabilizer_constraint_check(cubic_stabilizer_element(a)));
    }
}

TEST_CASE("conic normalization on the models") {
    NormalizationResult self = normalize_conic(veronese_conic());
    CHECK(self.residual < 1e-10);
    CHECK(pullback(veronese_conic(), self.transform.lift()).proportional_to(veronese_conic(), 1e-9));

    HomPoly sphere = make_poly({{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}});
    NormalizationResult sq = normalize_conic(sphere);
    CHECK(sq.residual < 1e-10);
    CHECK(pullback(veronese_conic(), sq.transform.lift()).proportional_to(sphere, 1e-9));

    CHECK_THROWS_AS((void)normalize_conic(make_poly({{{1, 1, 0}, 1.0}})), Error);
}

TEST_CASE("conic normalization round-trips random images") {
    auto r = rng(8);
    for (int i = 0; i < 25; ++i) {
        HomPoly image = pullback(veronese_conic(), exset::testing::random_invertible(r));
        NormalizationResult n = normalize_conic(image);
        CHECK(n.residual < 1e-7);
        CHECK(pullback(veronese_conic(), n.transform.lift()).proportional_to(image, 1e-7));
    }
}

TEST_CASE("cuspidal cubic normalization on the model") {
    NormalizationResult n = normalize_cuspidal_cubic(cuspidal_cubic_model());
    CHECK(n.residual < 1e-8);
    REQUIRE(n.cusp.has_value());
    CHECK(n.cusp->same_as(ProjPoint({1, 0, 0}), 1e-7));
    REQUIRE(n.inflection.has_value());
    CHECK(n.inflection->same_as(ProjPoint({0, 1, 0}), 1e-7));
    // the frame sends the cusp to [1:0:0] exactly as framed
    CHECK(apply(n.transform, *n.cusp).same_as(ProjPoint({1, 0, 0}), 1e-7));
}

TEST_CASE("cuspidal cubic normalization recovers a coordinate permutation") {
    // y z^2 - x^3: cusp at [0:1:0], inflection at [1:0:0]
    HomPoly permuted = make_poly({{{0, 1, 2}, 1.0}, {{3, 0, 0}, -1.0}});
    NormalizationResult n = normalize_cuspidal_cubic(permuted);
    CHECK(n.residual < 1e-8);
    CHECK(n.cusp->same_as(ProjPoint({0, 1, 0}), 1e-7));
    CHECK(n.inflection->same_as(ProjPoint({0, 0, 1}), 1e-7));
    CHECK(pullback(cuspidal_cubic_model(), n.transform.lift()).proportional_to(permuted, 1e-7));
}

TEST_CASE("cuspidal cubic normalization round-trips random images") {
    auto r = rng(9);
    for (int i = 0; i < 10; ++i) {
        Mat3 g = exset::testing::random_invertible(r);
        HomPoly image = pullback(cuspidal_cubic_model(), g);
        NormalizationResult n = normalize_cuspidal_cubic(image);
        CHECK(n.residual < 1e-7);
        CHECK(pullback(cuspidal_cubic_model(), n.transform.lift()).proportional_to(image, 1e-7));
        // distinguished points of the image are the preimages of e1, e2
        Mat3 ginv = adjugate(g);
        CHECK(n.cusp->same_as(ProjPoint(ginv * Vec3{1, 0, 0}), 1e-7));
        CHECK(n.inflection->same_as(ProjPoint(ginv * Vec3{0, 1, 0}), 1e-7));
    }
}

TEST_CASE("wrong-type inputs are rejected") {
    HomPoly nodal = make_poly({{{0, 2, 1}, 1.0}, {{3, 0, 0}, -1.0}, {{2, 0, 1}, -1.0}});
    CHECK_THROWS_AS((void)normalize_cuspidal_cubic(nodal), Error);
    HomPoly smooth = make_poly({{{3, 0, 0}, 1.0}, {{0, 3, 0}, 1.0}, {{0, 0, 3}, 1.0}});
    CHECK_THROWS_AS((void)normalize_cuspidal_cubic(smooth), Error);
}
