#pragma once

#include <string>

#include "exset/canonical.hpp"

namespace exset {

struct GroupPresentation {
    std::vector<std::pair<std::string, ProjTransform>> generators; // labels unique

    static GroupPresentation from(std::vector<std::pair<std::string, ProjTransform>> gens);
};

enum class ComponentKind { Line, VeroneseConic, CuspidalCubic, Other };
const char* component_kind_name(ComponentKind k);

struct ComponentClass {
    ComponentKind kind = ComponentKind::Other;
    std::optional<ProjTransform> normalizer; // maps the component onto its model
    std::optional<ProjPoint> cusp;
    std::optional<ProjPoint> inflection;
    double residual = 0.0;
};

using Permutation = std::vector<int>;

/// Permutation induced on the components by each generator's point map:
/// sigma(j) = k means pullback(component_k, g) is proportional to component_j.
std::vector<std::pair<std::string, Permutation>> orbit_action(const GroupPresentation& group,
                                                              const std::vector<HomPoly>& components,
                                                              const CurveOptions& opt = {});

ComponentClass classify_component(const HomPoly& f, const CurveOptions& opt = {});

/// Size of the largest subset of lines in general position (no point lying on
/// three of them). Rejects duplicate lines.
int max_nonconcurrent_lines(const std::vector<ProjLine>& lines, double tol = kDefaultTol);

enum class LineRole { Tangent, Secant, Other };
const char* line_role_name(LineRole r);

struct TangencyCensus {
    std::vector<LineRole> roles; // one per line
    std::vector<IntersectionProfile> profiles;
    int tangents = 0;
    int secants = 0;
    int other = 0;
};

/// Per-line contact classification against a conic or cubic: Tangent when the
/// line meets a smooth point with multiplicity >= 2 or is the cuspidal
/// tangent; Secant when all intersections are transverse at smooth points;
/// Other for lines through a singular point transversally.
TangencyCensus tangency_census(const HomPoly& curve, const std::vector<ProjLine>& lines,
                               const CurveOptions& opt = {});

struct Verdict {
    std::string id;
    bool ok = true;
    std::string detail;
};

struct ReportComponent {
    std::string label;
    HomPoly poly;
    ComponentClass cls;
};

struct ReportCensus {
    std::string component; // label of the conic/cubic
    TangencyCensus census;
    std::vector<std::string> line_labels;
};

struct ConfigurationReport {
    std::vector<ReportComponent> components;
    std::vector<std::pair<std::string, Permutation>> actions;
    std::vector<std::string> line_labels;
    int max_nonconcurrent = 0; // 0 when no lines
    std::vector<ReportCensus> censuses;
    std::vector<Verdict> verdicts;
    std::optional<bool> asserted_infinite;
    std::optional<bool> asserted_virtually_cyclic;

    bool compliant() const {
        for (const auto& v : verdicts)
            if (!v.ok) return false;
        return true;
    }
};

/// Full pipeline over labeled components: invariance of the configuration,
/// per-component classification, line-configuration and tangency bounds.
/// Throws NotInvariantError when a generator fails to permute the components.
ConfigurationReport theorem_report(const GroupPresentation& group,
                                   const std::vector<std::pair<std::string, HomPoly>>& components,
                                   std::optional<bool> asserted_infinite = {},
                                   std::optional<bool> asserted_virtually_cyclic = {},
                                   const CurveOptions& opt = {});

} // namespace exset
