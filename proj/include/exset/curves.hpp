#pragma once

#include <optional>

#include "exset/poly.hpp"
#include "exset/projective.hpp"

namespace exset {

struct CurveOptions {
    double tol = kDefaultTol;
    std::uint64_t seed = 0; // drives the deterministic randomized guards
};

enum class SingKind { Node, Cusp, Other };
const char* sing_kind_name(SingKind k);

struct SingularPoint {
    ProjPoint location;
    SingKind kind;
    std::vector<ProjLine> tangent_cone; // two lines for a node, one (repeated) for a cusp
};

struct CurveInvariants {
    int degree = 0;
    int nodes = 0;
    int cusps = 0;
    int class_degree = 0; // degree of the dual curve
    int inflections = 0;
    int genus = 0;
};

struct IntersectionProfile {
    std::vector<std::pair<ProjPoint, int>> points;
    int total_multiplicity() const {
        int s = 0;
        for (const auto& [p, m] : points) s += m;
        return s;
    }
};

struct InvarianceResult {
    bool invariant = false;
    Complex scale = 0.0;
    double residual = 0.0;
};

/// Curve given by binary forms of a common degree: t -> [x(t) : y(t) : z(t)].
struct RationalParametrization {
    BinaryForm x, y, z;
};

struct DualParametrization {
    RationalParametrization tangent_map;   // gamma x gamma_t, possibly with a common factor
    std::optional<HomPoly> implicit;       // interpolated implicit form (degree <= 3)
    double fit_residual = 0.0;
};

InvarianceResult invariance_check(const HomPoly& f, const ProjTransform& g, double tol = kDefaultTol);

/// Locations where all partials vanish, typed by the degree-2 part of the
/// local expansion. Exact mode: degree <= 3.
std::vector<SingularPoint> singular_points(const HomPoly& f, const CurveOptions& opt = {});

/// Smooth points where the Hessian determinant vanishes. Exact mode: degree <= 3.
std::vector<ProjPoint> inflection_points(const HomPoly& f, const CurveOptions& opt = {});

IntersectionProfile line_curve_intersection(const HomPoly& f, const ProjLine& line, const CurveOptions& opt = {});

int clebsch_genus(int n, int d, int s);
int pluecker_class(int n, int d, int s);
int pluecker_inflections(int n, int d, int s);

/// Dual of a nondegenerate conic via the adjugate of its symmetric matrix.
HomPoly dual_conic(const HomPoly& f, double tol = kDefaultTol);

/// Implicit-input entry point: conics go through the adjugate; higher degrees
/// need the parametrized overload.
HomPoly dual_curve(const HomPoly& f, double tol = kDefaultTol);

/// Dual of a rationally parametrized curve; the implicit form is interpolated
/// through sampled tangent lines for degrees up to 3.
DualParametrization dual_curve(const RationalParametrization& gamma, const CurveOptions& opt = {});

/// Common zeros of two coprime curves of degree <= 3 (locations only), via a
/// randomly preconditioned resultant with Newton polish; deterministic for a
/// fixed seed.
std::vector<ProjPoint> curve_common_points(const HomPoly& f, const HomPoly& g, const CurveOptions& opt = {},
                                            bool transverse_only = false);

/// RepeatedFactor guard: restriction-based squarefreeness test.
void require_squarefree(const HomPoly& f, const CurveOptions& opt = {});

/// Line components of f detected through restriction sampling; empty for
/// (numerically) irreducible inputs of degree <= 3.
std::vector<ProjLine> detect_line_components(const HomPoly& f, const CurveOptions& opt = {});

} // namespace exset
