#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exset/classifier.hpp"
#include "support.hpp"

using namespace exset;
using exset::testing::rng;

namespace {

HomPoly axis(int var) {
    Monomial m;
    (var == 0 ? m.x : var == 1 ? m.y : m.z) = 1;
    return HomPoly(1, {{m, 1.0}});
}

GroupPresentation stabilizer_group() {
    return GroupPresentation::from({{"s2", cubic_stabilizer_element(2.0)}});
}

} // namespace

TEST_CASE("orbit action on invariant configurations") {
    auto act = orbit_action(stabilizer_group(), {cuspidal_cubic_model()});
    REQUIRE(act.size() == 1);
    CHECK(act[0].second == Permutation{0});

    auto axes = orbit_action(stabilizer_group(), {axis(0), axis(1), axis(2)});
    CHECK(axes[0].second == Permutation{0, 1, 2});

    GroupPresentation swap_group =
        GroupPresentation::from({{"swap", ProjTransform(Mat3::from_rows({0, 1, 0}, {1, 0, 0}, {0, 0, 1}))}});
    auto swapped = orbit_action(swap_group, {axis(0), axis(1)});
    CHECK(swapped[0].second == Permutation{1, 0});
}

TEST_CASE("orbit action rejects non-invariant configurations with a witness") {
    HomPoly perturbed = cuspidal_cubic_model() + make_poly({{{3, 0, 0}, 0.01}});
    try {
        (void)orbit_action(stabilizer_group(), {perturbed});
        FAIL("expected NotInvariantError");
    } catch (const NotInvariantError& e) {
        CHECK(e.generator() == "s2");
        CHECK(e.residual() > 1e-6);
    }
}

TEST_CASE("orbit action permutation composes along generator words") {
    auto r = rng(12);
    for (int trial = 0; trial < 6; ++trial) {
        // a conjugated coordinate 3-cycle permutes three conjugated axis lines
        Mat3 q = exset::testing::random_invertible(r);
        Mat3 cycle = Mat3::from_rows({0, 0, 1}, {1, 0, 0}, {0, 1, 0});
        ProjTransform g(q * cycle * inverse(q));
        ProjTransform h(q * cycle * cycle * inverse(q));
        std::vector<HomPoly> comps;
        for (int v = 0; v < 3; ++v) comps.push_back(pullback(axis(v), inverse(q)));

        GroupPresentation gp = GroupPresentation::from({{"g", g}, {"h", h}, {"gh", g.compose(h)}});
        auto act = orbit_action(gp, comps);
        const Permutation &sg = act[0].second, &sh = act[1].second, &sgh = act[2].second;
        for (std::size_t j = 0; j < 3; ++j) CHECK(sgh[j] == sg[static_cast<std::size_t>(sh[j])]);
    }
}

TEST_CASE("component classification on the standard catalogue") {
    CHECK(classify_component(axis(2)).kind == ComponentKind::Line);

    ComponentClass conic = classify_component(veronese_conic());
    CHECK(conic.kind == ComponentKind::VeroneseConic);
    CHECK(conic.residual < 1e-8);

    ComponentClass cubic = classify_component(cuspidal_cubic_model());
    CHECK(cubic.kind == ComponentKind::CuspidalCubic);
    REQUIRE(cubic.cusp.has_value());
    CHECK(cubic.cusp->same_as(ProjPoint({1, 0, 0}), 1e-7));
    CHECK(cubic.inflection->same_as(ProjPoint({0, 1, 0}), 1e-7));

    // nodal cubic and smooth cubic fall outside the taxonomy
    HomPoly nodal = make_poly({{{0, 2, 1}, 1.0}, {{3, 0, 0}, -1.0}, {{2, 0, 1}, -1.0}});
    CHECK(classify_component(nodal).kind == ComponentKind::Other);
    HomPoly fermat = make_poly({{{3, 0, 0}, 1.0}, {{0, 3, 0}, 1.0}, {{0, 0, 3}, 1.0}});
    CHECK(classify_component(fermat).kind == ComponentKind::Other);

    CHECK_THROWS_AS((void)classify_component(axis(0) * axis(1)), Error);
}

TEST_CASE("classification kind is projectively invariant") {
    auto r = rng(13);
    for (int i = 0; i < 25; ++i) {
        ProjTransform g = exset::testing::random_transform(r);
        CHECK(classify_component(pullback(veronese_conic(), g.lift())).kind == ComponentKind::VeroneseConic);
        CHECK(classify_component(pullback(cuspidal_cubic_model(), g.lift())).kind == ComponentKind::CuspidalCubic);
    }
}

TEST_CASE("max non-concurrent lines") {
    ProjLine lx({1, 0, 0}), ly({0, 1, 0}), lz({0, 0, 1});
    CHECK(max_nonconcurrent_lines({lx, ly, lz}) == 3);
    // y, z, y - z all pass through [1:0:0]
    CHECK(max_nonconcurrent_lines({ly, lz, ProjLine({0, 1, -1})}) == 2);
    CHECK(max_nonconcurrent_lines({lx, ly}) == 2);
    CHECK(max_nonconcurrent_lines({lx}) == 1);
    // generic quadrilateral: four lines, no three concurrent
    CHECK(max_nonconcurrent_lines({lx, ly, lz, ProjLine({1, 1, 1})}) == 4);
    // three through a point plus one transversal: the bound of three holds
    CHECK(max_nonconcurrent_lines({lx, ly, ProjLine({1, 1, 0}), lz}) == 3);
    CHECK_THROWS_AS((void)max_nonconcurrent_lines({lx, ProjLine({2, 0, 0})}), Error);
}

TEST_CASE("tangency census against the cuspidal cubic and the conic") {
    TangencyCensus cubic = tangency_census(cuspidal_cubic_model(), {ProjLine({1, 0, 0}), ProjLine({0, 1, 0})});
    CHECK(cubic.tangents == 2); // inflectional tangent x=0 and cuspidal tangent y=0
    CHECK(cubic.secants == 0);

    TangencyCensus conic_t = tangency_census(veronese_conic(), {ProjLine({0, 0, 1})});
    CHECK(conic_t.roles[0] == LineRole::Tangent);
    TangencyCensus conic_s = tangency_census(veronese_conic(), {ProjLine({0, 1, 0})});
    CHECK(conic_s.roles[0] == LineRole::Secant);

    // z = 0 passes through the cusp transversally: neither tangent nor secant
    TangencyCensus through_cusp = tangency_census(cuspidal_cubic_model(), {ProjLine({0, 0, 1})});
    CHECK(through_cusp.roles[0] == LineRole::Other);
}

TEST_CASE("census labels are invariant under simultaneous transformation") {
    auto r = rng(14);
    std::vector<ProjLine> lines = {ProjLine({1, 0, 0}), ProjLine({0, 1, 0}), ProjLine({0, 0, 1}),
                                   ProjLine({1, 1, 1})};
    for (int i = 0; i < 10; ++i) {
        ProjTransform g = exset::testing::random_transform(r);
        HomPoly moved = pullback(cuspidal_cubic_model(), g.lift());
        // pullback moves the zero set by g^{-1}, so lines transform the same way
        std::vector<ProjLine> moved_lines;
        for (const auto& l : lines) moved_lines.push_back(apply(g.inverse(), l));
        TangencyCensus before = tangency_census(cuspidal_cubic_model(), lines);
        TangencyCensus after = tangency_census(moved, moved_lines);
        CHECK(before.roles == after.roles);
    }
}

TEST_CASE("theorem report on the cubic-with-axes scene") {
    auto report = theorem_report(stabilizer_group(),
                                 {{"cubic", cuspidal_cubic_model()}, {"x", axis(0)}, {"y", axis(1)}, {"z", axis(2)}},
                                 true, true);
    CHECK(report.compliant());
    CHECK(report.max_nonconcurrent == 3);
    REQUIRE(report.censuses.size() == 1);
    CHECK(report.censuses[0].census.tangents == 2);
    CHECK(report.censuses[0].census.secants == 0);
}

TEST_CASE("theorem report on the Veronese scene") {
    MoebiusClass doubling(Mat2{{2, 0, 0, 1}});
    MoebiusClass shift(Mat2{{1, 1, 0, 1}});
    GroupPresentation g = GroupPresentation::from({{"d", iota(doubling)}, {"t", iota(shift)}});
    auto report = theorem_report(g, {{"ver", veronese_conic()}});
    CHECK(report.compliant());
    CHECK(report.components[0].cls.kind == ComponentKind::VeroneseConic);
}

TEST_CASE("theorem report on the pencil scene") {
    GroupPresentation g = GroupPresentation::from({{"p", pencil_element(1, 0)}});
    auto report = theorem_report(g, {{"y", axis(1)}, {"z", axis(2)}});
    CHECK(report.compliant());
    CHECK(report.max_nonconcurrent == 2);
}

TEST_CASE("theorem report flags four lines in general position") {
    GroupPresentation g = GroupPresentation::from({{"id", ProjTransform::identity()}});
    auto report = theorem_report(g, {{"a", axis(0)},
                                     {"b", axis(1)},
                                     {"c", axis(2)},
                                     {"d", HomPoly(1, {{{1, 0, 0}, 1.0}, {{0, 1, 0}, 1.0}, {{0, 0, 1}, 1.0}})}});
    CHECK_FALSE(report.compliant());
    CHECK(report.max_nonconcurrent == 4);
}

TEST_CASE("degree-3 components of an invariant stabilizer configuration classify cuspidal") {
    auto r = rng(15);
    for (int i = 0; i < 5; ++i) {
        Mat3 q = exset::testing::random_invertible(r);
        // conjugated stabilizer scene: the model data transported by q
        ProjTransform gen(q * cubic_stabilizer_element(2.0).lift() * inverse(q));
        HomPoly comp = pullback(cuspidal_cubic_model(), inverse(q));
        GroupPresentation gp = GroupPresentation::from({{"g", gen}});
        (void)orbit_action(gp, {comp});
        CHECK(classify_component(comp).kind == ComponentKind::CuspidalCubic);
    }
}
