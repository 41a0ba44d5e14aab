#include "exset/canonical.hpp"

#include <random>

namespace exset {

namespace {

Complex random_unit_disc(std::mt19937_64& r) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(r), u(r)};
}

/// Congruence diagonalization of a complex symmetric matrix: returns W with
/// W^T M W = D diagonal; complete-the-square pivoting with the standard
/// variable-mixing step when the diagonal vanishes.
void congruence_diagonalize(Mat3 m, Mat3& w, Vec3& d) {
    w = Mat3::identity();
    const double scale = std::max(1.0, max_abs(m));
    auto congruence = [&](const Mat3& e) {
        m = transpose(e) * m * e;
        w = w * e;
    };
    for (int i = 0; i < 3; ++i) {
        if (std::abs(m(i, i)) <= 1e-13 * scale) {
            // bring a nonzero entry onto the diagonal
            int swap_j = -1, mix_j = -1;
            double best_diag = 1e-13 * scale, best_off = 1e-13 * scale;
            for (int j = i + 1; j < 3; ++j) {
                if (std::abs(m(j, j)) > best_diag) { best_diag = std::abs(m(j, j)); swap_j = j; }
                if (std::abs(m(i, j)) > best_off) { best_off = std::abs(m(i, j)); mix_j = j; }
            }
            if (swap_j >= 0) {
                Mat3 e = Mat3::identity();
                e(i, i) = e(swap_j, swap_j) = 0.0;
                e(i, swap_j) = e(swap_j, i) = 1.0;
                congruence(e);
            } else if (mix_j >= 0) {
                Mat3 e = Mat3::identity();
                e(mix_j, i) = 1.0; // x_i <- x_i + x_j turns 2 m_ij into a diagonal entry
                congruence(e);
            } else {
                continue; // remaining block is zero
            }
        }
        for (int j = i + 1; j < 3; ++j) {
            if (m(i, j) == 0.0) continue;
            Mat3 e = Mat3::identity();
            e(i, j) = -m(i, j) / m(i, i);
            congruence(e);
        }
    }
    d = {m(0, 0), m(1, 1), m(2, 2)};
}

/// Fixed frame V with V^T Mv V = I for the model conic matrix Mv.
Mat3 veronese_frame() {
    Mat3 v;
    v(0, 0) = 0.5;  v(0, 1) = 0.0; v(0, 2) = Complex(0.0, 0.5);
    v(1, 0) = 0.0;  v(1, 1) = 1.0; v(1, 2) = 0.0;
    v(2, 0) = -0.5; v(2, 1) = 0.0; v(2, 2) = Complex(0.0, 0.5);
    return v;
}

double pullback_residual(const HomPoly& model, const ProjTransform& t, const HomPoly& input) {
    return align_scale(input.normalized(), pullback(model, t.lift()).normalized()).residual;
}

} // namespace

const char* model_kind_name(ModelKind k) {
    return k == ModelKind::VeroneseConic ? "veronese-conic" : "cuspidal-cubic";
}

HomPoly veronese_conic() { return make_poly({{{0, 2, 0}, 1.0}, {{1, 0, 1}, -4.0}}); }

HomPoly cuspidal_cubic_model() { return make_poly({{{1, 2, 0}, 1.0}, {{0, 0, 3}, -1.0}}); }

RationalParametrization cuspidal_cubic_model_parametrization() {
    return {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
}

ProjPoint veronese_embed(const P1Point& p) {
    Complex z = p.coords()[0], w = p.coords()[1];
    return ProjPoint({z * z, 2.0 * z * w, w * w});
}

ProjTransform iota(const MoebiusClass& m) {
    Complex a = m.lift()(0, 0), b = m.lift()(0, 1);
    Complex c = m.lift()(1, 0), d = m.lift()(1, 1);
    Mat3 g;
    g(0, 0) = a * a;       g(0, 1) = a * b;           g(0, 2) = b * b;
    g(1, 0) = 2.0 * a * c; g(1, 1) = a * d + b * c;   g(1, 2) = 2.0 * b * d;
    g(2, 0) = c * c;       g(2, 1) = d * c;           g(2, 2) = d * d;
    return ProjTransform(g);
}

ProjTransform cubic_stabilizer_element(Complex a) {
    if (std::abs(a) == 0.0 || !is_finite(a)) throw Error(Errc::zero_parameter, "stabilizer parameter must be nonzero");
    Complex a2 = a * a, a4 = a2 * a2;
    return ProjTransform(Mat3::diagonal(1.0 / (a4 * a), a4, a));
}

ProjTransform pencil_element(Complex a, Complex b) {
    return ProjTransform(Mat3::from_rows({1.0, a, b}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}));
}

NormalizationResult normalize_conic(const HomPoly& f, double tol) {
    if (f.degree() != 2) throw Error(Errc::invalid_input, "conic normalization requires degree 2");
    const HomPoly fn = f.normalized();
    Mat3 m = conic_matrix(fn);
    double scale = max_abs(m);
    if (std::abs(det(m)) <= tol * scale * scale * scale)
        throw Error(Errc::degenerate, "conic is degenerate");

    Mat3 w;
    Vec3 d;
    congruence_diagonalize(m, w, d);
    // F(x) = sum d_i y_i^2 with y = W^{-1} x; rescale to a sum of squares
    Mat3 s = Mat3::diagonal(std::sqrt(d[0]), std::sqrt(d[1]), std::sqrt(d[2])) * inverse(w);
    ProjTransform t(veronese_frame() * s);

    NormalizationResult out{t, ModelKind::VeroneseConic, pullback_residual(veronese_conic(), t, fn), {}, {}};
    return out;
}

NormalizationResult normalize_cuspidal_cubic(const HomPoly& f, const CurveOptions& opt) {
    if (f.degree() != 3) throw Error(Errc::invalid_input, "cuspidal-cubic normalization requires degree 3");
    const HomPoly fn = f.normalized();

    auto sing = singular_points(fn, opt);
    if (sing.size() != 1 || sing[0].kind != SingKind::Cusp)
        throw Error(Errc::wrong_type, "curve is not a cubic with a single cusp");
    const ProjPoint cusp = sing[0].location;
    const ProjLine cusp_tangent = sing[0].tangent_cone.at(0);

    auto flexes = inflection_points(fn, opt);
    if (flexes.size() != 1)
        throw Error(Errc::wrong_type, "cuspidal cubic must have exactly one inflection point");
    const ProjPoint flex = flexes[0];

    // tangent at the (smooth) inflection point is the gradient there
    Vec3 grad{fn.partial(0).eval(flex.coords()), fn.partial(1).eval(flex.coords()),
              fn.partial(2).eval(flex.coords())};
    const ProjLine flex_tangent(grad);
    const ProjPoint corner = meet(cusp_tangent, flex_tangent, opt.tol);

    // one extra smooth curve point, from a random secant avoiding the frame
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 0x5151ULL);
    std::optional<ProjPoint> extra;
    for (int attempt = 0; attempt < 8 && !extra; ++attempt) {
        Vec3 dual{random_unit_disc(rng), random_unit_disc(rng), random_unit_disc(rng)};
        if (max_abs(dual) < 0.3) continue;
        ProjLine l(dual);
        if (l.contains(cusp, 1e-4) || l.contains(flex, 1e-4) || l.contains(corner, 1e-4)) continue;
        for (const auto& [p, mult] : line_curve_intersection(fn, l, opt).points) {
            if (mult != 1) continue;
            if (p.same_as(cusp, 1e-6) || p.same_as(flex, 1e-6) || p.same_as(corner, 1e-6)) continue;
            extra = p;
            break;
        }
    }
    if (!extra) throw Error(Errc::frame_degenerate, "no usable extra curve point found");

    // frame transform: cusp -> e1, inflection -> e2, corner -> e3, extra -> (1,1,1)
    Mat3 a = Mat3::from_cols(cusp.coords(), flex.coords(), corner.coords());
    double ascale = std::max(1.0, max_abs(a));
    if (std::abs(det(a)) <= 1e-10 * ascale * ascale * ascale)
        throw Error(Errc::frame_degenerate, "distinguished points are not in general position");
    Vec3 weights = inverse(a) * extra->coords();
    for (auto wgt : weights)
        if (std::abs(wgt) <= 1e-10)
            throw Error(Errc::frame_degenerate, "extra point is collinear with two frame points");
    Mat3 b = Mat3::from_cols(weights[0] * cusp.coords(), weights[1] * flex.coords(), weights[2] * corner.coords());
    ProjTransform t(adjugate(b)); // inverse up to scale

    NormalizationResult out{t, ModelKind::CuspidalCubic, pullback_residual(cuspidal_cubic_model(), t, fn),
                            cusp, flex};
    return out;
}

bool stabilizer_constraint_check(const ProjTransform& g, double tol) {
    const Mat3& m = g.lift();
    double offdiag = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != c) offdiag = std::max(offdiag, std::abs(m(r, c)));
    if (offdiag > tol * std::max(1.0, max_abs(m)))
        throw Error(Errc::not_diagonal, "stabilizer constraint applies to diagonal transforms only");

    Complex g11 = m(0, 0), g22 = m(1, 1), g33 = m(2, 2);
    Complex g33_2 = g33 * g33, g33_4 = g33_2 * g33_2;
    // both relations are invariant under the cube-root-of-unity lift ambiguity
    return std::abs(g22 - g33_4) <= tol * std::max(1.0, std::abs(g33_4)) &&
           std::abs(g11 * g33_4 * g33 - 1.0) <= tol;
}

} // namespace exset
