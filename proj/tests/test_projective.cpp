#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exset/projective.hpp"
#include "support.hpp"

using namespace exset;
using exset::testing::rng;

namespace {

Mat3 unipotent_full() {
    return Mat3::from_rows({1, 1, 0}, {0, 1, 1}, {0, 0, 1});
}

Mat3 single_entry(int r, int c) {
    Mat3 m;
    m(r, c) = 1.0;
    return m;
}

/// Limit of the renormalized power sequence by repeated squaring; after k
/// rounds this is g^(2^k) scaled to unit max entry.
Mat3 iterated_power(const Mat3& a, int squarings) {
    Mat3 b = canonicalized(a);
    for (int i = 0; i < squarings; ++i) b = canonicalized(b * b);
    return b;
}

} // namespace

TEST_CASE("join of coordinate points and a derived pair") {
    ProjPoint e1({1, 0, 0}), e2({0, 1, 0}), e3({0, 0, 1});
    CHECK(join(e1, e2).same_as(ProjLine({0, 0, 1})));
    CHECK(join(e1, e3).same_as(ProjLine({0, 1, 0})));
    // cross product oracle: (1,1,1) x (1,-1,1) = (2, 0, -2)
    CHECK(join(ProjPoint({1, 1, 1}), ProjPoint({1, -1, 1})).same_as(ProjLine({1, 0, -1})));
    CHECK_THROWS_AS((void)join(e1, ProjPoint({2, 0, 0})), Error);
}

TEST_CASE("apply moves points by the projectivized product") {
    ProjTransform id = ProjTransform::identity();
    CHECK(apply(id, ProjPoint({1, 2, 3})).same_as(ProjPoint({1, 2, 3})));

    ProjTransform d(Mat3::diagonal(2, 1, 0.5));
    CHECK(apply(d, ProjPoint({1, 1, 1})).same_as(ProjPoint({4, 2, 1})));

    ProjTransform shear(Mat3::from_rows({1, 1, 1}, {0, 1, 2}, {0, 0, 1}));
    CHECK(apply(shear, ProjPoint({0, 0, 1})).same_as(ProjPoint({1, 2, 1})));
}

TEST_CASE("eigen analysis on the stock examples") {
    EigenData id = eigen_analysis(ProjTransform::identity());
    CHECK(id.diagonalizable);
    for (auto l : id.eigenvalues) CHECK(std::abs(l - 1.0) < 1e-12);

    EigenData uni = eigen_analysis(ProjTransform(unipotent_full()));
    CHECK_FALSE(uni.diagonalizable);
    for (auto l : uni.eigenvalues) CHECK(std::abs(l - 1.0) < 1e-9);

    EigenData dg = eigen_analysis(ProjTransform(Mat3::diagonal(0.5, 1, 2)));
    CHECK(dg.diagonalizable);
    CHECK(std::abs(dg.eigenvalues[0] - 2.0) < 1e-12);
    CHECK(std::abs(dg.eigenvalues[1] - 1.0) < 1e-12);
    CHECK(std::abs(dg.eigenvalues[2] - 0.5) < 1e-12);
}

TEST_CASE("eigenvalue ordering breaks modulus ties by argument") {
    EigenData e = eigen_analysis(ProjTransform(Mat3::diagonal(1, Complex(0, 1), Complex(0, -1))));
    CHECK(std::abs(e.eigenvalues[0] - Complex(0, 1)) < 1e-12);
    CHECK(std::abs(e.eigenvalues[1] - 1.0) < 1e-12);
    CHECK(std::abs(e.eigenvalues[2] - Complex(0, -1)) < 1e-12);
}

TEST_CASE("determinant-1 lift: eigenvalue product is 1") {
    auto r = rng(7);
    for (int i = 0; i < 50; ++i) {
        EigenData e = eigen_analysis(exset::testing::random_transform(r));
        Complex prod = e.eigenvalues[0] * e.eigenvalues[1] * e.eigenvalues[2];
        CHECK(std::abs(prod - 1.0) < 1e-9);
    }
}

TEST_CASE("element classification") {
    CHECK(classify_element(ProjTransform(unipotent_full())).kind == ElementKind::Parabolic);
    CHECK(classify_element(ProjTransform(Mat3::diagonal(0.5, 1, 2))).kind == ElementKind::Loxodromic);
    CHECK(classify_element(ProjTransform(Mat3::diagonal(1, Complex(0, 1), Complex(0, -1)))).kind ==
          ElementKind::Elliptic);
    // J2 + 1 block with unitary eigenvalues
    CHECK(classify_element(ProjTransform(Mat3::from_rows({1, 1, 0}, {0, 1, 0}, {0, 0, 1}))).kind ==
          ElementKind::Parabolic);
}

TEST_CASE("classification is independent of the lift scale") {
    auto r = rng(11);
    for (int i = 0; i < 30; ++i) {
        Mat3 m = exset::testing::random_invertible(r);
        Complex c = exset::testing::random_unit_disc(r) + Complex(1.5, 0);
        ElementKind k1 = classify_element(ProjTransform(m)).kind;
        ElementKind k2 = classify_element(ProjTransform(c * m)).kind;
        CHECK(k1 == k2);
        CHECK(power_limit(ProjTransform(m)).same_as(power_limit(ProjTransform(c * m)), 1e-8));
    }
}

TEST_CASE("ill-conditioned eigenvalue clustering is reported, not guessed") {
    // two eigenvalues separated below the numerical clustering radius but
    // above what the rank test can resolve at the default tolerance
    CHECK_THROWS_AS((void)eigen_analysis(ProjTransform(Mat3::diagonal(1.0, 1.0 + 1e-6, 2.0))), Error);
    try {
        (void)eigen_analysis(ProjTransform(Mat3::diagonal(1.0, 1.0 + 1e-6, 2.0)));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ill_conditioned);
    }
}

TEST_CASE("power limits: the five closed forms") {
    struct Case {
        Mat3 g;
        Mat3 expected;
    };
    const Complex alpha2 = 2.0, alpha_half = 0.5;
    const Complex phase = std::polar(1.0, 2.0 * 3.14159265358979323846 * 0.3);
    std::vector<Case> cases = {
        {unipotent_full(), single_entry(0, 2)},
        {Mat3::from_rows({alpha2, 1, 0}, {0, alpha2, 0}, {0, 0, 1.0 / (alpha2 * alpha2)}), single_entry(0, 1)},
        {Mat3::from_rows({alpha_half, 1, 0}, {0, alpha_half, 0}, {0, 0, 1.0 / (alpha_half * alpha_half)}),
         single_entry(2, 2)},
        {Mat3::diagonal(0.5, 1, 2), single_entry(2, 2)},
        {Mat3::diagonal(alpha_half, phase * alpha_half, std::conj(phase) / (alpha_half * alpha_half)),
         single_entry(2, 2)},
    };
    for (const auto& c : cases) {
        PseudoProjMap lim = power_limit(ProjTransform(c.g));
        CHECK(proportionality_residual(c.expected, lim.rep()) < 1e-12);
        // soundness: renormalized iterated powers approach the analytic limit
        Mat3 iter = iterated_power(ProjTransform(c.g).lift(), 60);
        CHECK(proportionality_residual(lim.rep(), iter) < 1e-8);
    }
}

TEST_CASE("power limit reports non-convergence for twisting elements") {
    // distinct unimodular eigenvalues with irrational angle ratio
    Mat3 rot = Mat3::diagonal(1.0, std::polar(1.0, 1.0), std::polar(1.0, -1.0));
    CHECK_THROWS_AS((void)power_limit(ProjTransform(rot)), Error);
    try {
        (void)power_limit(ProjTransform(rot));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::non_convergent);
    }
    // finite order but non-scalar: powers cycle, no limit either
    CHECK_THROWS_AS((void)power_limit(ProjTransform(Mat3::diagonal(1, Complex(0, 1), Complex(0, -1)))), Error);
    // scalar in PSL(3,C): constant sequence
    CHECK(power_limit(ProjTransform::identity()).same_as(PseudoProjMap(Mat3::identity())));
}

TEST_CASE("power limit of a generic loxodromic matches iterated squaring") {
    auto r = rng(23);
    for (int i = 0; i < 10; ++i) {
        Mat3 q = exset::testing::random_invertible(r);
        Mat3 a = q * Mat3::diagonal(0.4, 1.1, 2.3) * inverse(q);
        PseudoProjMap lim = power_limit(ProjTransform(a));
        CHECK(lim.rank() == 1);
        CHECK(proportionality_residual(lim.rep(), iterated_power(ProjTransform(a).lift(), 60)) < 1e-8);
    }
}

TEST_CASE("kernel loci by rank") {
    KernelLocus k1 = kernel(PseudoProjMap(single_entry(0, 2)));
    REQUIRE(k1.kind == KernelLocus::Kind::Line);
    CHECK(k1.line->same_as(ProjLine({0, 0, 1})));

    KernelLocus k2 = kernel(PseudoProjMap(single_entry(2, 2)));
    REQUIRE(k2.kind == KernelLocus::Kind::Line);
    CHECK(k2.line->same_as(ProjLine({0, 0, 1})));

    // rank-2 example: projection onto the first two coordinates
    Mat3 p2 = Mat3::diagonal(1, 1, 0);
    KernelLocus kp = kernel(PseudoProjMap(p2));
    REQUIRE(kp.kind == KernelLocus::Kind::Point);
    CHECK(kp.point->same_as(ProjPoint({0, 0, 1})));

    auto r = rng(3);
    for (int i = 0; i < 10; ++i) {
        PseudoProjMap full(exset::testing::random_invertible(r));
        CHECK(kernel(full).kind == KernelLocus::Kind::Empty);
    }
}

TEST_CASE("incidence: join contains its points and transforms preserve it") {
    auto r = rng(31);
    for (int i = 0; i < 100; ++i) {
        ProjPoint p(exset::testing::random_vec3(r)), q(exset::testing::random_vec3(r));
        if (p.same_as(q, 1e-6)) continue;
        ProjLine l = join(p, q);
        CHECK(l.contains(p, 1e-10));
        CHECK(l.contains(q, 1e-10));

        ProjTransform g = exset::testing::random_transform(r);
        ProjLine gl = apply(g, l);
        CHECK(gl.contains(apply(g, p), 1e-8));
        ProjPoint off(exset::testing::random_vec3(r));
        CHECK(l.contains(off, 1e-8) == gl.contains(apply(g, off), 1e-7));
    }
}

TEST_CASE("projection morphism on the stock examples") {
    ProjPoint center({1, 0, 0});
    ProjLine screen({1, 0, 0}); // x = 0

    // pencil-type element acts trivially on the base line
    ProjTransform pencil(Mat3::from_rows({1, 1, 2}, {0, 1, 0}, {0, 0, 1}));
    CHECK(projection_morphism(pencil, center, screen).same_as(MoebiusClass::identity()));

    ProjTransform d(Mat3::diagonal(2, 1, 0.5));
    MoebiusClass md = projection_morphism(d, center, screen);
    CHECK(md.same_as(MoebiusClass(Mat2{{1.0, 0.0, 0.0, 0.5}})));

    CHECK(projection_morphism(ProjTransform::identity(), center, screen).same_as(MoebiusClass::identity()));

    CHECK_THROWS_AS((void)projection_morphism(d, ProjPoint({1, 1, 1}), screen), Error);
    CHECK_THROWS_AS((void)projection_morphism(d, ProjPoint({0, 1, 0}), screen), Error);
}

TEST_CASE("projection morphism is a group morphism") {
    auto r = rng(41);
    ProjPoint center({1, 0, 0});
    auto random_fixing = [&]() {
        for (;;) {
            Mat3 m;
            m(0, 0) = exset::testing::random_unit_disc(r) + Complex(1.2, 0);
            m(0, 1) = exset::testing::random_unit_disc(r);
            m(0, 2) = exset::testing::random_unit_disc(r);
            m(1, 1) = exset::testing::random_unit_disc(r);
            m(1, 2) = exset::testing::random_unit_disc(r);
            m(2, 1) = exset::testing::random_unit_disc(r);
            m(2, 2) = exset::testing::random_unit_disc(r);
            if (std::abs(det(m)) > 0.05) return ProjTransform(m);
        }
    };
    for (int i = 0; i < 100; ++i) {
        ProjLine screen({1, exset::testing::random_unit_disc(r), exset::testing::random_unit_disc(r)});
        ProjTransform g = random_fixing(), h = random_fixing();
        MoebiusClass lhs = projection_morphism(g.compose(h), center, screen);
        MoebiusClass rhs = projection_morphism(g, center, screen).compose(projection_morphism(h, center, screen));
        CHECK(lhs.same_as(rhs, 1e-8));
    }
}

TEST_CASE("eigen basis spans eigenvectors and Jordan chains") {
    EigenData uni = eigen_analysis(ProjTransform(unipotent_full()));
    REQUIRE(uni.basis.size() == 3);
    CHECK(uni.basis[0].same_as(ProjPoint({1, 0, 0})));

    EigenData dg = eigen_analysis(ProjTransform(Mat3::diagonal(0.5, 1, 2)));
    REQUIRE(dg.basis.size() == 3);
    CHECK(dg.basis[0].same_as(ProjPoint({0, 0, 1}))); // eigenvalue 2 listed first
}
