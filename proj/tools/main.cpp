#include <cstdlib>
#include <iostream>
#include <algorithm>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "exset/scene.hpp"

using namespace exset;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitMissingLabel = 3;
constexpr int kExitNonConvergent = 4;
constexpr int kExitViolation = 5;
constexpr int kExitNotInvariant = 6;

enum class Format { Text, Machine };

struct Options {
    std::string scene_path;
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    Format format = Format::Text;

    CurveOptions curve() const { return {tol, seed}; }
};

std::string fmt_complex(Complex z, double scale = 1.0) {
    // display-only: drop parts that are rounding dust at the ambient scale
    double snap = 1e-12 * std::max(scale, 1e-300);
    double re = std::abs(z.real()) < snap ? 0.0 : z.real();
    double im = std::abs(z.imag()) < snap ? 0.0 : z.imag();
    std::ostringstream os;
    os.precision(12);
    os << re;
    if (im != 0.0) os << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
    return os.str();
}

json json_complex(Complex z) { return json::array({z.real(), z.imag()}); }

json json_matrix(const Mat3& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c) row.push_back(json_complex(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json json_point(const ProjPoint& p) {
    return json::array({json_complex(p.coords()[0]), json_complex(p.coords()[1]), json_complex(p.coords()[2])});
}

json json_line(const ProjLine& l) {
    return json::array({json_complex(l.dual()[0]), json_complex(l.dual()[1]), json_complex(l.dual()[2])});
}

json json_poly(const HomPoly& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        json term;
        term["exp"] = json::array({t.mon.x, t.mon.y, t.mon.z});
        term["coeff"] = json_complex(t.coeff);
        terms.push_back(term);
    }
    return terms;
}

std::string fmt_matrix(const Mat3& m) {
    double scale = max_abs(m);
    std::ostringstream os;
    for (int r = 0; r < 3; ++r) {
        os << "  [";
        for (int c = 0; c < 3; ++c) os << (c ? ", " : " ") << fmt_complex(m(r, c), scale);
        os << " ]\n";
    }
    return os.str();
}

std::string fmt_point(const ProjPoint& p) {
    double scale = max_abs(p.coords());
    std::ostringstream os;
    os << "[" << fmt_complex(p.coords()[0], scale) << " : " << fmt_complex(p.coords()[1], scale) << " : "
       << fmt_complex(p.coords()[2], scale) << "]";
    return os.str();
}

std::string fmt_poly(const HomPoly& p) {
    double scale = p.max_coeff_abs();
    std::ostringstream os;
    bool first = true;
    std::vector<Term> sorted = p.terms();
    std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
        return std::tuple(-a.mon.x, -a.mon.y, -a.mon.z) < std::tuple(-b.mon.x, -b.mon.y, -b.mon.z);
    });
    for (const auto& t : sorted) {
        if (!first) os << " + ";
        first = false;
        std::string c = fmt_complex(t.coeff, scale);
        os << (c.find(' ') == std::string::npos ? c : "(" + c + ")");
        const char* names = "xyz";
        for (int v = 0; v < 3; ++v) {
            int e = t.mon[v];
            if (e == 0) continue;
            os << "*" << names[v];
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

void emit(const Options& opt, const json& machine, const std::string& text) {
    if (opt.format == Format::Machine) std::cout << machine.dump(2) << "\n";
    else std::cout << text;
}

const Mat3& need_generator(const SceneFile& scene, const std::string& label) {
    const Mat3* m = scene.find_generator(label);
    if (!m) throw Error(Errc::missing_label, "no generator labeled '" + label + "'");
    return *m;
}

const HomPoly& need_component(const SceneFile& scene, const std::string& label) {
    const HomPoly* p = scene.find_component(label);
    if (!p) throw Error(Errc::missing_label, "no curve component labeled '" + label + "'");
    return *p;
}

int cmd_classify_element(const Options& opt, const std::string& label) {
    SceneFile scene = load_scene(opt.scene_path);
    ProjTransform g(need_generator(scene, label));
    ElementClass cls = classify_element(g, opt.tol);

    json out;
    out["schema"] = "1";
    out["command"] = "classify-element";
    out["label"] = label;
    out["kind"] = element_kind_name(cls.kind);
    out["diagonalizable"] = cls.eigen.diagonalizable;
    json evs = json::array();
    for (auto l : cls.eigen.eigenvalues) evs.push_back(json_complex(l));
    out["eigenvalues"] = evs;
    out["det1_lift"] = json_matrix(g.lift());

    std::ostringstream text;
    text << label << ": " << element_kind_name(cls.kind) << "\n";
    text << "eigenvalues:";
    for (auto l : cls.eigen.eigenvalues) text << "  " << fmt_complex(l);
    text << "\ndiagonalizable: " << (cls.eigen.diagonalizable ? "yes" : "no") << "\n";
    text << "det-1 lift:\n" << fmt_matrix(g.lift());
    emit(opt, out, text.str());
    return 0;
}

int cmd_power_limit(const Options& opt, const std::string& label) {
    SceneFile scene = load_scene(opt.scene_path);
    ProjTransform g(need_generator(scene, label));
    PseudoProjMap limit = power_limit(g, opt.tol);
    KernelLocus ker = kernel(limit, opt.tol);

    json out;
    out["schema"] = "1";
    out["command"] = "power-limit";
    out["label"] = label;
    out["limit"] = json_matrix(limit.rep());
    out["rank"] = limit.rank();
    switch (ker.kind) {
        case KernelLocus::Kind::Empty: out["kernel"] = nullptr; break;
        case KernelLocus::Kind::Point: out["kernel"] = {{"point", json_point(*ker.point)}}; break;
        case KernelLocus::Kind::Line: out["kernel"] = {{"line", json_line(*ker.line)}}; break;
    }

    std::ostringstream text;
    text << label << ": power limit (rank " << limit.rank() << ")\n" << fmt_matrix(limit.rep());
    if (ker.kind == KernelLocus::Kind::Point) text << "kernel point: " << fmt_point(*ker.point) << "\n";
    if (ker.kind == KernelLocus::Kind::Line)
        text << "kernel line (dual): " << fmt_point(ProjPoint(ker.line->dual())) << "\n";
    emit(opt, out, text.str());
    return 0;
}

int cmd_curve_invariants(const Options& opt, const std::string& label) {
    SceneFile scene = load_scene(opt.scene_path);
    const HomPoly& f = need_component(scene, label);
    const int n = f.degree();

    json out;
    out["schema"] = "1";
    out["command"] = "curve-invariants";
    out["label"] = label;
    out["degree"] = n;

    std::ostringstream text;
    text << label << ": degree " << n << "\n";

    int d = 0, s = 0, others = 0;
    if (n >= 2 && n <= 3) {
        auto sing = singular_points(f, opt.curve());
        json sj = json::array();
        for (const auto& sp : sing) {
            if (sp.kind == SingKind::Node) ++d;
            else if (sp.kind == SingKind::Cusp) ++s;
            else ++others;
            sj.push_back({{"kind", sing_kind_name(sp.kind)}, {"location", json_point(sp.location)}});
            text << "singular point: " << sing_kind_name(sp.kind) << " at " << fmt_point(sp.location) << "\n";
        }
        out["singular_points"] = sj;
        out["nodes"] = d;
        out["cusps"] = s;
        text << "nodes: " << d << ", cusps: " << s << "\n";

        auto flexes = inflection_points(f, opt.curve());
        json fj = json::array();
        for (const auto& p : flexes) {
            fj.push_back(json_point(p));
            text << "inflection point: " << fmt_point(p) << "\n";
        }
        out["inflection_points"] = fj;

        if (others == 0) {
            out["class"] = pluecker_class(n, d, s);
            out["inflections_formula"] = pluecker_inflections(n, d, s);
            out["genus"] = clebsch_genus(n, d, s);
            text << "class: " << pluecker_class(n, d, s) << "\n";
            text << "inflections (computed/formula): " << flexes.size() << "/" << pluecker_inflections(n, d, s)
                 << "\n";
            text << "genus: " << clebsch_genus(n, d, s) << "\n";
        } else {
            text << "singularities beyond nodes and cusps; numeric formulas not applicable\n";
        }
    } else if (n == 1) {
        out["genus"] = 0;
        text << "line; genus 0\n";
    } else {
        throw Error(Errc::degree_unsupported, "curve invariants are computed exactly for degree <= 3");
    }
    emit(opt, out, text.str());
    return 0;
}

int cmd_invariance_check(const Options& opt, const std::string& glabel, const std::string& clabel) {
    SceneFile scene = load_scene(opt.scene_path);
    ProjTransform g(need_generator(scene, glabel));
    const HomPoly& f = need_component(scene, clabel);
    InvarianceResult res = invariance_check(f, g, opt.tol);

    json out;
    out["schema"] = "1";
    out["command"] = "invariance-check";
    out["generator"] = glabel;
    out["component"] = clabel;
    out["invariant"] = res.invariant;
    out["scale"] = json_complex(res.scale);
    out["residual"] = res.residual;

    std::ostringstream text;
    if (res.invariant)
        text << clabel << " is invariant under " << glabel << " with scale " << fmt_complex(res.scale)
             << " (residual " << res.residual << ")\n";
    else
        text << clabel << " is NOT invariant under " << glabel << " (residual " << res.residual << ")\n";
    emit(opt, out, text.str());
    return res.invariant ? 0 : kExitNotInvariant;
}

int cmd_dual_curve(const Options& opt, const std::string& label) {
    SceneFile scene = load_scene(opt.scene_path);
    const HomPoly& f = need_component(scene, label);

    json out;
    out["schema"] = "1";
    out["command"] = "dual-curve";
    out["label"] = label;

    std::ostringstream text;
    if (f.degree() == 2) {
        HomPoly dual = dual_conic(f, opt.tol);
        out["dual"] = json_poly(dual);
        out["route"] = "adjugate";
        text << "dual conic: " << fmt_poly(dual) << "\n";
    } else if (f.degree() == 3) {
        ComponentClass cls = classify_component(f, opt.curve());
        if (cls.kind != ComponentKind::CuspidalCubic || !cls.normalizer)
            throw Error(Errc::unsupported, "dual curve needs a conic or a recognized cuspidal cubic");
        // parametrize the input through the normalizer: gamma = T^{-1} . gamma_model
        Mat3 tinv = adjugate(cls.normalizer->lift());
        RationalParametrization model = cuspidal_cubic_model_parametrization();
        auto combine = [&](int row) {
            BinaryForm acc(model.x.size(), 0.0);
            const BinaryForm* comps[3] = {&model.x, &model.y, &model.z};
            for (int j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += tinv(row, j) * (*comps[j])[k];
            return acc;
        };
        RationalParametrization gamma{combine(0), combine(1), combine(2)};
        DualParametrization dual = dual_curve(gamma, opt.curve());
        if (!dual.implicit) throw Error(Errc::degenerate, "dual interpolation did not converge");
        out["dual"] = json_poly(*dual.implicit);
        out["route"] = "parametrized";
        out["fit_residual"] = dual.fit_residual;
        text << "dual cubic (interpolated): " << fmt_poly(*dual.implicit) << "\n";
        text << "fit residual: " << dual.fit_residual << "\n";
    } else {
        throw Error(Errc::unsupported, "dual curve needs a conic or a recognized cuspidal cubic");
    }
    emit(opt, out, text.str());
    return 0;
}

int cmd_report(const Options& opt) {
    SceneFile scene = load_scene(opt.scene_path);
    GroupPresentation group = scene.group_presentation();

    ConfigurationReport report;
    try {
        report = theorem_report(group, scene.curve, scene.infinite, scene.virtually_cyclic, opt.curve());
    } catch (const NotInvariantError& e) {
        json out;
        out["schema"] = "1";
        out["command"] = "report";
        out["invariant"] = false;
        out["witness"] = {{"generator", e.generator()}, {"component", e.component()}, {"residual", e.residual()}};
        std::ostringstream text;
        text << "configuration is NOT invariant: generator '" << e.generator() << "' fails on " << e.component()
             << " (residual " << e.residual() << ")\n";
        emit(opt, out, text.str());
        return kExitNotInvariant;
    }

    json out;
    out["schema"] = "1";
    out["command"] = "report";
    out["invariant"] = true;
    json comps = json::array();
    for (const auto& rc : report.components) {
        json c;
        c["label"] = rc.label;
        c["degree"] = rc.poly.degree();
        c["kind"] = component_kind_name(rc.cls.kind);
        if (rc.cls.normalizer) c["normalizer"] = json_matrix(rc.cls.normalizer->lift());
        if (rc.cls.cusp) c["cusp"] = json_point(*rc.cls.cusp);
        if (rc.cls.inflection) c["inflection"] = json_point(*rc.cls.inflection);
        comps.push_back(c);
    }
    out["components"] = comps;
    json acts = json::array();
    for (const auto& [label, sigma] : report.actions) acts.push_back({{"generator", label}, {"permutation", sigma}});
    out["actions"] = acts;
    if (!report.line_labels.empty()) {
        out["line_config"] = {{"lines", report.line_labels}, {"max_nonconcurrent", report.max_nonconcurrent}};
    }
    json censuses = json::array();
    for (const auto& rc : report.censuses) {
        json c;
        c["component"] = rc.component;
        c["tangents"] = rc.census.tangents;
        c["secants"] = rc.census.secants;
        c["other"] = rc.census.other;
        json roles = json::array();
        for (std::size_t i = 0; i < rc.census.roles.size(); ++i)
            roles.push_back({{"line", rc.line_labels[i]}, {"role", line_role_name(rc.census.roles[i])}});
        c["lines"] = roles;
        censuses.push_back(c);
    }
    out["censuses"] = censuses;
    json verdicts = json::array();
    for (const auto& v : report.verdicts) verdicts.push_back({{"id", v.id}, {"ok", v.ok}, {"detail", v.detail}});
    out["verdicts"] = verdicts;
    out["compliant"] = report.compliant();
    if (report.asserted_infinite) out["asserted_infinite"] = *report.asserted_infinite;
    if (report.asserted_virtually_cyclic) out["asserted_virtually_cyclic"] = *report.asserted_virtually_cyclic;

    std::ostringstream text;
    text << "components:\n";
    for (const auto& rc : report.components) {
        text << "  " << rc.label << ": " << component_kind_name(rc.cls.kind) << " (degree " << rc.poly.degree()
             << ")";
        if (rc.cls.cusp) text << ", cusp " << fmt_point(*rc.cls.cusp);
        if (rc.cls.inflection) text << ", inflection " << fmt_point(*rc.cls.inflection);
        text << "\n";
    }
    text << "generator actions:\n";
    for (const auto& [label, sigma] : report.actions) {
        text << "  " << label << ": (";
        for (std::size_t i = 0; i < sigma.size(); ++i) text << (i ? " " : "") << sigma[i];
        text << ")\n";
    }
    if (!report.line_labels.empty())
        text << "lines: " << report.line_labels.size() << ", max in general position: " << report.max_nonconcurrent
             << "\n";
    for (const auto& rc : report.censuses)
        text << "census[" << rc.component << "]: " << rc.census.tangents << " tangent(s), " << rc.census.secants
             << " secant(s), " << rc.census.other << " other\n";
    text << "verdicts:\n";
    for (const auto& v : report.verdicts)
        text << "  [" << (v.ok ? "ok" : "VIOLATION") << "] " << v.id << ": " << v.detail << "\n";
    text << (report.compliant() ? "compliant\n" : "NOT compliant\n");
    emit(opt, out, text.str());
    return report.compliant() ? 0 : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exceptional algebraic set toolkit: projective element classification, plane-curve analysis, "
                 "and invariant-configuration reports"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("EXSET_TOL")) opt.tol = std::atof(env);

    std::string format_name = "text";
    app.add_option("--tol", opt.tol, "tolerance for rank/equality/unitarity decisions")->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for randomized guards")->capture_default_str();
    app.add_option("--format", format_name, "output format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}));

    std::string label, glabel, clabel;

    CLI::App* classify = app.add_subcommand("classify-element", "classify a generator as elliptic/parabolic/loxodromic");
    classify->add_option("scene", opt.scene_path, "scene file")->required();
    classify->add_option("label", label, "generator label")->required();

    CLI::App* plimit = app.add_subcommand("power-limit", "pseudo-projective limit of the power sequence");
    plimit->add_option("scene", opt.scene_path, "scene file")->required();
    plimit->add_option("label", label, "generator label")->required();

    CLI::App* cinv = app.add_subcommand("curve-invariants", "singularities, class, inflections and genus");
    cinv->add_option("scene", opt.scene_path, "scene file")->required();
    cinv->add_option("label", label, "curve component label")->required();

    CLI::App* icheck = app.add_subcommand("invariance-check", "check a component against a generator");
    icheck->add_option("scene", opt.scene_path, "scene file")->required();
    icheck->add_option("generator", glabel, "generator label")->required();
    icheck->add_option("component", clabel, "curve component label")->required();

    CLI::App* dual = app.add_subcommand("dual-curve", "dual of a conic or recognized cuspidal cubic");
    dual->add_option("scene", opt.scene_path, "scene file")->required();
    dual->add_option("label", label, "curve component label")->required();

    CLI::App* report = app.add_subcommand("report", "full configuration report with theorem bounds");
    report->add_option("scene", opt.scene_path, "scene file")->required();

    CLI11_PARSE(app, argc, argv);
    opt.format = (format_name == "machine") ? Format::Machine : Format::Text;

    try {
        if (classify->parsed()) return cmd_classify_element(opt, label);
        if (plimit->parsed()) return cmd_power_limit(opt, label);
        if (cinv->parsed()) return cmd_curve_invariants(opt, label);
        if (icheck->parsed()) return cmd_invariance_check(opt, glabel, clabel);
        if (dual->parsed()) return cmd_dual_curve(opt, label);
        if (report->parsed()) return cmd_report(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::parse_error: return kExitParse;
            case Errc::missing_label: return kExitMissingLabel;
            case Errc::non_convergent: return kExitNonConvergent;
            case Errc::not_invariant: return kExitNotInvariant;
            default: return kExitError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
