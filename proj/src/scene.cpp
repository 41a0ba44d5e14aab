#include "exset/scene.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace exset {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(Errc::parse_error, where + ": complex numbers are [re, im] arrays");
    Complex z(j[0].get<double>(), j[1].get<double>());
    if (!is_finite(z)) throw Error(Errc::parse_error, where + ": non-finite complex number");
    return z;
}

json dump_complex(Complex z) { return json::array({z.real(), z.imag()}); }

Mat3 parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw Error(Errc::parse_error, where + ": matrices are 3x3 nested arrays");
    Mat3 m;
    for (int r = 0; r < 3; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 3)
            throw Error(Errc::parse_error, where + ": matrices are 3x3 nested arrays");
        for (int c = 0; c < 3; ++c)
            m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], where);
    }
    return m;
}

json dump_matrix(const Mat3& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int c = 0; c < 3; ++c) row.push_back(dump_complex(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

HomPoly parse_poly(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw Error(Errc::parse_error, where + ": polynomials are non-empty term lists");
    std::vector<Term> terms;
    int degree = -1;
    for (const json& t : j) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coeff"))
            throw Error(Errc::parse_error, where + ": terms carry \"exp\" and \"coeff\"");
        const json& e = t["exp"];
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
            !e[2].is_number_integer())
            throw Error(Errc::parse_error, where + ": \"exp\" is an [i, j, k] integer triple");
        Monomial mon{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
        if (mon.x < 0 || mon.y < 0 || mon.z < 0)
            throw Error(Errc::parse_error, where + ": negative exponent");
        if (degree < 0) degree = mon.degree();
        if (mon.degree() != degree)
            throw Error(Errc::parse_error, where + ": polynomial is not homogeneous");
        terms.push_back({mon, parse_complex(t["coeff"], where)});
    }
    HomPoly p(degree, std::move(terms));
    if (p.is_zero()) throw Error(Errc::parse_error, where + ": polynomial is zero");
    return p;
}

json dump_poly(const HomPoly& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        json term;
        term["exp"] = json::array({t.mon.x, t.mon.y, t.mon.z});
        term["coeff"] = dump_complex(t.coeff);
        terms.push_back(term);
    }
    return terms;
}

} // namespace

const Mat3* SceneFile::find_generator(const std::string& label) const {
    for (const auto& [l, m] : group)
        if (l == label) return &m;
    return nullptr;
}

const HomPoly* SceneFile::find_component(const std::string& label) const {
    for (const auto& [l, p] : curve)
        if (l == label) return &p;
    return nullptr;
}

GroupPresentation SceneFile::group_presentation() const {
    std::vector<std::pair<std::string, ProjTransform>> gens;
    for (const auto& [label, m] : group) gens.emplace_back(label, ProjTransform(m));
    return GroupPresentation::from(std::move(gens));
}

SceneFile parse_scene(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
    if (!doc.is_object()) throw Error(Errc::parse_error, "scene must be a JSON object");

    SceneFile scene;
    if (!doc.contains("group") || !doc["group"].is_object() || doc["group"].empty())
        throw Error(Errc::parse_error, "scene needs a non-empty \"group\" object");
    for (const auto& [label, value] : doc["group"].items()) {
        Mat3 m = parse_matrix(value, "group." + label);
        try {
            (void)ProjTransform(m); // invertibility
        } catch (const Error&) {
            throw Error(Errc::parse_error, "group." + label + ": matrix is not invertible");
        }
        scene.group.emplace_back(label, m);
    }

    if (!doc.contains("curve") || !doc["curve"].is_object() || doc["curve"].empty())
        throw Error(Errc::parse_error, "scene needs a non-empty \"curve\" object");
    for (const auto& [label, value] : doc["curve"].items())
        scene.curve.emplace_back(label, parse_poly(value, "curve." + label));

    if (doc.contains("assertions")) {
        const json& a = doc["assertions"];
        if (!a.is_object()) throw Error(Errc::parse_error, "\"assertions\" must be an object");
        if (a.contains("infinite")) {
            if (!a["infinite"].is_boolean()) throw Error(Errc::parse_error, "assertions.infinite must be boolean");
            scene.infinite = a["infinite"].get<bool>();
        }
        if (a.contains("virtually_cyclic")) {
            if (!a["virtually_cyclic"].is_boolean())
                throw Error(Errc::parse_error, "assertions.virtually_cyclic must be boolean");
            scene.virtually_cyclic = a["virtually_cyclic"].get<bool>();
        }
    }

    auto by_label = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(scene.group.begin(), scene.group.end(), by_label);
    std::sort(scene.curve.begin(), scene.curve.end(), by_label);
    return scene;
}

SceneFile load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse_error, "cannot open scene file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scene(text);
}

std::string serialize_scene(const SceneFile& scene) {
    json doc;
    doc["schema"] = "1";
    json grp = json::object();
    for (const auto& [label, m] : scene.group) grp[label] = dump_matrix(m);
    doc["group"] = grp;
    json crv = json::object();
    for (const auto& [label, p] : scene.curve) crv[label] = dump_poly(p);
    doc["curve"] = crv;
    if (scene.infinite || scene.virtually_cyclic) {
        json a = json::object();
        if (scene.infinite) a["infinite"] = *scene.infinite;
        if (scene.virtually_cyclic) a["virtually_cyclic"] = *scene.virtually_cyclic;
        doc["assertions"] = a;
    }
    return doc.dump(2) + "\n";
}

} // namespace exset
