#include "exset/classifier.hpp"

#include <algorithm>
#include <set>

namespace exset {

namespace {

bool lines_concurrent(const ProjLine& a, const ProjLine& b, const ProjLine& c, double tol) {
    Vec3 p = cross(a.dual(), b.dual());
    if (max_abs(p) <= tol) return true; // a and b coincide numerically; guarded earlier
    return std::abs(bdot(p, c.dual())) <= tol * norm2(p) * norm2(c.dual());
}

} // namespace

GroupPresentation GroupPresentation::from(std::vector<std::pair<std::string, ProjTransform>> gens) {
    if (gens.empty()) throw Error(Errc::invalid_input, "group presentation needs at least one generator");
    std::set<std::string> seen;
    for (const auto& [label, g] : gens)
        if (!seen.insert(label).second) throw Error(Errc::invalid_input, "duplicate generator label: " + label);
    return GroupPresentation{std::move(gens)};
}

const char* component_kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::Line: return "line";
        case ComponentKind::VeroneseConic: return "veronese-conic";
        case ComponentKind::CuspidalCubic: return "cuspidal-cubic";
        case ComponentKind::Other: return "other";
    }
    return "?";
}

const char* line_role_name(LineRole r) {
    switch (r) {
        case LineRole::Tangent: return "tangent";
        case LineRole::Secant: return "secant";
        case LineRole::Other: return "other";
    }
    return "?";
}

std::vector<std::pair<std::string, Permutation>> orbit_action(const GroupPresentation& group,
                                                              const std::vector<HomPoly>& components,
                                                              const CurveOptions& opt) {
    const std::size_t n = components.size();
    if (n == 0) throw Error(Errc::invalid_input, "no components");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (components[i].degree() == components[j].degree() &&
                components[i].proportional_to(components[j], opt.tol))
                throw Error(Errc::invalid_input, "components must be pairwise non-proportional");

    std::vector<std::pair<std::string, Permutation>> out;
    for (const auto& [label, g] : group.generators) {
        Permutation sigma(n, -1);
        std::vector<bool> used(n, false);
        for (std::size_t j = 0; j < n; ++j) {
            double best_res = 1e300;
            int best_k = -1;
            for (std::size_t k = 0; k < n; ++k) {
                if (components[k].degree() != components[j].degree()) continue;
                double res = align_scale(components[j], pullback(components[k], g.lift())).residual;
                if (res < best_res) { best_res = res; best_k = static_cast<int>(k); }
            }
            if (best_k < 0 || best_res > opt.tol || used[static_cast<std::size_t>(best_k)])
                throw NotInvariantError(label, "component #" + std::to_string(j), best_res);
            sigma[j] = best_k;
            used[static_cast<std::size_t>(best_k)] = true;
        }
        out.emplace_back(label, std::move(sigma));
    }
    return out;
}

ComponentClass classify_component(const HomPoly& f, const CurveOptions& opt) {
    if (f.is_zero()) throw Error(Errc::invalid_input, "zero polynomial");
    const int n = f.degree();
    if (n == 0) throw Error(Errc::invalid_input, "constant polynomial");

    ComponentClass out;
    if (n == 1) {
        out.kind = ComponentKind::Line;
        return out;
    }
    if (n <= 3 && !detect_line_components(f, opt).empty())
        throw Error(Errc::reducible, "component has a line factor");

    if (n == 2) {
        out.kind = ComponentKind::VeroneseConic;
        NormalizationResult nr = normalize_conic(f, opt.tol);
        out.normalizer = nr.transform;
        out.residual = nr.residual;
        return out;
    }
    if (n == 3) {
        auto sing = singular_points(f, opt);
        int nodes = 0, cusps = 0, others = 0;
        for (const auto& s : sing) {
            if (s.kind == SingKind::Node) ++nodes;
            else if (s.kind == SingKind::Cusp) ++cusps;
            else ++others;
        }
        if (nodes == 0 && cusps == 1 && others == 0) {
            NormalizationResult nr = normalize_cuspidal_cubic(f, opt);
            out.kind = ComponentKind::CuspidalCubic;
            out.normalizer = nr.transform;
            out.cusp = nr.cusp;
            out.inflection = nr.inflection;
            out.residual = nr.residual;
            return out;
        }
        out.kind = ComponentKind::Other;
        return out;
    }
    out.kind = ComponentKind::Other;
    return out;
}

int max_nonconcurrent_lines(const std::vector<ProjLine>& lines, double tol) {
    const int n = static_cast<int>(lines.size());
    if (n == 0) throw Error(Errc::invalid_input, "need at least one line");
    if (n > 64) throw Error(Errc::invalid_input, "line configuration too large");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (lines[static_cast<std::size_t>(i)].same_as(lines[static_cast<std::size_t>(j)], tol))
                throw Error(Errc::duplicate_line, "duplicate lines in configuration");

    // concurrency table over triples
    std::vector<std::vector<std::vector<bool>>> conc(
        static_cast<std::size_t>(n),
        std::vector<std::vector<bool>>(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n))));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                bool cc = lines_concurrent(lines[static_cast<std::size_t>(a)], lines[static_cast<std::size_t>(b)],
                                           lines[static_cast<std::size_t>(c)], tol);
                conc[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = cc;
            }

    int best = 0;
    std::vector<int> chosen;
    auto extend = [&](auto&& self, int next) -> void {
        best = std::max(best, static_cast<int>(chosen.size()));
        if (static_cast<int>(chosen.size()) + (n - next) <= best) return; // cannot beat best
        for (int cand = next; cand < n; ++cand) {
            bool ok = true;
            for (std::size_t a = 0; a < chosen.size() && ok; ++a)
                for (std::size_t b = a + 1; b < chosen.size() && ok; ++b)
                    if (conc[static_cast<std::size_t>(chosen[a])][static_cast<std::size_t>(chosen[b])]
                            [static_cast<std::size_t>(cand)])
                        ok = false;
            if (!ok) continue;
            chosen.push_back(cand);
            self(self, cand + 1);
            chosen.pop_back();
        }
    };
    extend(extend, 0);
    return best;
}

TangencyCensus tangency_census(const HomPoly& curve, const std::vector<ProjLine>& lines, const CurveOptions& opt) {
    if (curve.degree() != 2 && curve.degree() != 3)
        throw Error(Errc::invalid_input, "tangency census applies to conics and cubics");

    auto sing = singular_points(curve, opt);

    TangencyCensus out;
    for (const auto& line : lines) {
        IntersectionProfile prof = line_curve_intersection(curve, line, opt);
        bool smooth_tangency = false, cuspidal_tangent = false, singular_contact = false;
        for (const auto& [p, mult] : prof.points) {
            const SingularPoint* at_sing = nullptr;
            for (const auto& s : sing)
                if (s.location.same_as(p, 1e-6)) at_sing = &s;
            if (at_sing) {
                singular_contact = true;
                for (const auto& tc : at_sing->tangent_cone)
                    if (tc.same_as(line, 1e-6) && at_sing->kind == SingKind::Cusp) cuspidal_tangent = true;
            } else if (mult >= 2) {
                smooth_tangency = true;
            }
        }
        LineRole role;
        if (smooth_tangency || cuspidal_tangent) role = LineRole::Tangent;
        else if (!singular_contact) role = LineRole::Secant;
        else role = LineRole::Other;
        out.roles.push_back(role);
        out.profiles.push_back(std::move(prof));
        if (role == LineRole::Tangent) ++out.tangents;
        else if (role == LineRole::Secant) ++out.secants;
        else ++out.other;
    }
    return out;
}

ConfigurationReport theorem_report(const GroupPresentation& group,
                                   const std::vector<std::pair<std::string, HomPoly>>& components,
                                   std::optional<bool> asserted_infinite,
                                   std::optional<bool> asserted_virtually_cyclic, const CurveOptions& opt) {
    if (components.empty()) throw Error(Errc::invalid_input, "no components");

    ConfigurationReport report;
    report.asserted_infinite = asserted_infinite;
    report.asserted_virtually_cyclic = asserted_virtually_cyclic;

    std::vector<HomPoly> polys;
    for (const auto& [label, f] : components) polys.push_back(f);
    report.actions = orbit_action(group, polys, opt);

    std::vector<ProjLine> lines;
    for (const auto& [label, f] : components) {
        ReportComponent rc{label, f, classify_component(f, opt)};
        if (rc.cls.kind == ComponentKind::Line) {
            lines.emplace_back(Vec3{f.coeff({1, 0, 0}), f.coeff({0, 1, 0}), f.coeff({0, 0, 1})});
            report.line_labels.push_back(label);
        }
        report.components.push_back(std::move(rc));
    }

    const char* hypothesis_note = " (assuming the asserted group hypotheses hold)";

    bool trichotomy = true;
    for (const auto& rc : report.components)
        if (rc.cls.kind == ComponentKind::Other) trichotomy = false;
    report.verdicts.push_back(
        {"component-trichotomy", trichotomy,
         trichotomy ? std::string("every component is a line, a conic in Veronese form, or a cuspidal cubic")
                    : std::string("a component falls outside the line/conic/cuspidal-cubic trichotomy") +
                          hypothesis_note});

    if (!lines.empty()) {
        report.max_nonconcurrent = max_nonconcurrent_lines(lines, opt.tol);
        bool ok = report.max_nonconcurrent <= 3;
        report.verdicts.push_back(
            {"line-general-position-bound", ok,
             "largest set of invariant lines in general position has size " +
                 std::to_string(report.max_nonconcurrent) + (ok ? ", within the bound of three" : ", exceeding three") +
                 hypothesis_note});
    }

    for (const auto& rc : report.components) {
        if (rc.cls.kind != ComponentKind::VeroneseConic && rc.cls.kind != ComponentKind::CuspidalCubic) continue;
        if (lines.empty()) continue;
        ReportCensus census{rc.label, tangency_census(rc.poly, lines, opt), report.line_labels};
        bool tangents_ok = census.census.tangents <= 2;
        bool secants_ok = census.census.secants <= 1;
        report.verdicts.push_back({"tangent-count-bound[" + rc.label + "]", tangents_ok,
                                   std::to_string(census.census.tangents) + " tangent line(s) against '" + rc.label +
                                       "'" + (tangents_ok ? ", within the bound of two" : ", exceeding two")});
        report.verdicts.push_back({"secant-count-bound[" + rc.label + "]", secants_ok,
                                   std::to_string(census.census.secants) + " secant line(s) against '" + rc.label +
                                       "'" + (secants_ok ? ", within the bound of one" : ", exceeding one")});
        report.censuses.push_back(std::move(census));
    }

    return report;
}

} // namespace exset
