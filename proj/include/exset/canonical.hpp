#pragma once

#include "exset/curves.hpp"

namespace exset {

enum class ModelKind { VeroneseConic, CuspidalCubic };
const char* model_kind_name(ModelKind k);

/// Outcome of normalizing a curve onto one of the model curves: the transform
/// maps the input curve onto the model, i.e. pullback(model, transform) is
/// proportional to the input within the stated residual.
struct NormalizationResult {
    ProjTransform transform;
    ModelKind model;
    double residual = 0.0;
    std::optional<ProjPoint> cusp;       // input-side distinguished points
    std::optional<ProjPoint> inflection; // (cubic case only)
};

/// y^2 - 4xz, the image of the degree-2 embedding of the line.
HomPoly veronese_conic();
/// xy^2 - z^3.
HomPoly cuspidal_cubic_model();
/// (t^3, s^3, s^2 t), a parametrization of the cuspidal cubic model.
RationalParametrization cuspidal_cubic_model_parametrization();

/// [z : w] -> [z^2 : 2zw : w^2]; the image lies on veronese_conic().
ProjPoint veronese_embed(const P1Point& p);

/// The symmetric-square representation of a Moebius class as a plane
/// transform; a group morphism up to scale that intertwines veronese_embed.
ProjTransform iota(const MoebiusClass& m);

/// diag(a^-5, a^4, a), the stabilizer family of the cuspidal cubic model.
ProjTransform cubic_stabilizer_element(Complex a);

/// [[1, a, b], [0, 1, 0], [0, 0, 1]]; fixes every line through [1:0:0].
ProjTransform pencil_element(Complex a, Complex b);

NormalizationResult normalize_conic(const HomPoly& f, double tol = kDefaultTol);

NormalizationResult normalize_cuspidal_cubic(const HomPoly& f, const CurveOptions& opt = {});

/// True iff the det-1 diagonal lift satisfies g22 = g33^4 and g11 = g33^-5,
/// i.e. the element belongs to the cubic stabilizer family.
bool stabilizer_constraint_check(const ProjTransform& g, double tol = kDefaultTol);

} // namespace exset
