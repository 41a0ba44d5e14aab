#include "exset/curves.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace exset {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

Complex random_unit_disc(std::mt19937_64& r) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(r), u(r)};
}

Mat3 random_preconditioner(std::mt19937_64& r) {
    for (;;) {
        Mat3 m;
        for (auto& z : m.a) z = random_unit_disc(r);
        double scale = max_abs(m);
        if (scale < 0.3) continue;
        if (std::abs(det(m)) >= 0.15 * scale * scale * scale) return m;
    }
}

double coeff_l1(const HomPoly& f) {
    double s = 0.0;
    for (const auto& t : f.terms()) s += std::abs(t.coeff);
    return s;
}

/// Coefficients of z^k in f, each a binary form in (x, y) indexed by the power
/// of y.
std::vector<BinaryForm> z_coefficients(const HomPoly& f) {
    const int n = f.degree();
    std::vector<BinaryForm> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(n - k) + 1, 0.0);
    for (const auto& t : f.terms()) c[static_cast<std::size_t>(t.mon.z)][static_cast<std::size_t>(t.mon.y)] += t.coeff;
    return c;
}

Complex eval_ascending(const std::vector<Complex>& coeffs, Complex t) {
    Complex acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
}

Complex eval_bf_affine(const BinaryForm& b, Complex t) { return eval_ascending(b, t); }

/// Resultant of f and g with respect to z, evaluated along x = 1 at the given
/// parameter values (Sylvester determinants).
std::vector<Complex> resultant_samples(const std::vector<BinaryForm>& fa, const std::vector<BinaryForm>& fb,
                                       const std::vector<Complex>& nodes) {
    const int dp = static_cast<int>(fa.size()) - 1;
    const int dq = static_cast<int>(fb.size()) - 1;
    const int k = dp + dq;
    std::vector<Complex> out;
    out.reserve(nodes.size());
    for (Complex t : nodes) {
        std::vector<Complex> a(static_cast<std::size_t>(dp) + 1), b(static_cast<std::size_t>(dq) + 1);
        for (int i = 0; i <= dp; ++i) a[static_cast<std::size_t>(i)] = eval_bf_affine(fa[static_cast<std::size_t>(i)], t);
        for (int i = 0; i <= dq; ++i) b[static_cast<std::size_t>(i)] = eval_bf_affine(fb[static_cast<std::size_t>(i)], t);
        DenseMatrix s(static_cast<std::size_t>(k), std::vector<Complex>(static_cast<std::size_t>(k), 0.0));
        for (int r = 0; r < dq; ++r)
            for (int m = 0; m <= dp; ++m) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + m)] = a[static_cast<std::size_t>(dp - m)];
        for (int r = 0; r < dp; ++r)
            for (int m = 0; m <= dq; ++m) s[static_cast<std::size_t>(dq + r)][static_cast<std::size_t>(r + m)] = b[static_cast<std::size_t>(dq - m)];
        out.push_back(det_dense(std::move(s)));
    }
    return out;
}

struct ScoredPoint {
    ProjPoint point;
    double score;   // worst relative residual over both curves
    bool transverse; // Newton on the pair converged (simple common zero)
};

struct PreparedFrame {
    Mat3 t3;
    HomPoly fp{0, {}}, gp{0, {}};
    std::vector<Complex> coeffs; // interpolated resultant along x = 1
    double quality = 0.0;        // leading-coefficient magnitude; small values
                                 // mean noise-amplified roots
};

/// Draw a random preconditioner and interpolate the z-resultant in it.
std::optional<PreparedFrame> prepare_frame(const HomPoly& f, const HomPoly& g, std::mt19937_64& rng,
                                           bool& shared_factor_signal) {
    PreparedFrame frame;
    frame.t3 = random_preconditioner(rng);
    frame.fp = pullback(f, frame.t3).normalized();
    frame.gp = pullback(g, frame.t3).normalized();
    const int dp = frame.fp.degree(), dq = frame.gp.degree();

    // full z-degree is needed for the Sylvester block structure
    if (std::abs(frame.fp.coeff({0, 0, dp})) < 1e-3 || std::abs(frame.gp.coeff({0, 0, dq})) < 1e-3)
        return std::nullopt;

    auto fa = z_coefficients(frame.fp), fb = z_coefficients(frame.gp);
    const int rdeg = dp * dq;
    const int K = rdeg + 1;
    std::vector<Complex> nodes(static_cast<std::size_t>(K));
    const double phase0 = 0.31;
    for (int k = 0; k < K; ++k) nodes[static_cast<std::size_t>(k)] = std::polar(1.0, phase0 + kTwoPi * k / K);
    std::vector<Complex> values = resultant_samples(fa, fb, nodes);

    double vmax = 0.0;
    for (auto v : values) vmax = std::max(vmax, std::abs(v));
    if (vmax <= 1e-10) {
        shared_factor_signal = true;
        return std::nullopt;
    }

    // inverse DFT with the phase offset undone
    frame.coeffs.assign(static_cast<std::size_t>(K), 0.0);
    for (int m = 0; m < K; ++m) {
        Complex acc = 0.0;
        for (int k = 0; k < K; ++k) acc += values[static_cast<std::size_t>(k)] * std::polar(1.0, -kTwoPi * k * m / K);
        frame.coeffs[static_cast<std::size_t>(m)] = acc / static_cast<double>(K) * std::polar(1.0, -phase0 * m);
    }
    frame.quality = std::abs(frame.coeffs.back());
    return frame;
}

/// Extract verified common-zero candidates from one prepared frame.
void harvest_frame(const PreparedFrame& frame, double verify_tol, std::vector<ScoredPoint>& out) {
    const HomPoly& fp = frame.fp;
    const HomPoly& gp = frame.gp;
    auto fa = z_coefficients(fp), fb = z_coefficients(gp);

    // partials for the 2x2 Newton polish in (t, z) on the x = 1 chart
    const HomPoly fy = fp.partial(1), fz = fp.partial(2);
    const HomPoly gy = gp.partial(1), gz = gp.partial(2);
    const double l1f = coeff_l1(fp), l1g = coeff_l1(gp);

    for (const RootCluster& tc : adaptive_root_clusters(frame.coeffs, 1e-9)) {
        const Complex t0 = tc.value;
        std::vector<RootCluster> zcand;
        auto add_z_clusters = [&](const std::vector<BinaryForm>& zc) {
            std::vector<Complex> uni(zc.size());
            for (std::size_t i = 0; i < zc.size(); ++i) uni[i] = eval_bf_affine(zc[i], t0);
            for (const RootCluster& c : adaptive_root_clusters(uni, 1e-9)) zcand.push_back(c);
        };
        add_z_clusters(fa);
        add_z_clusters(fb);

        // Newton sharpens simple common zeros; at degenerate ones it stalls on
        // the singular Jacobian and the cluster centroid (already first-order
        // accurate) is kept instead
        auto try_polish = [&](Complex t0_, Complex z0_) -> std::optional<std::pair<Complex, Complex>> {
            Complex t = t0_, z = z0_;
            for (int it = 0; it < 30; ++it) {
                Vec3 v{1.0, t, z};
                Complex rf = fp.eval(v), rg = gp.eval(v);
                Complex jtt = fy.eval(v), jtz = fz.eval(v);
                Complex jgt = gy.eval(v), jgz = gz.eval(v);
                Complex jdet = jtt * jgz - jtz * jgt;
                if (std::abs(jdet) < 1e-14) return std::nullopt;
                Complex dt = (rf * jgz - rg * jtz) / jdet;
                Complex dz = (jtt * rg - jgt * rf) / jdet;
                t -= dt;
                z -= dz;
                if (std::abs(t) > 1e8 || std::abs(z) > 1e8) return std::nullopt;
                if (std::abs(t - t0_) + std::abs(z - z0_) > 1e-2 * (1.0 + std::abs(t0_) + std::abs(z0_)))
                    return std::nullopt; // drifted away from the cluster
                if (std::abs(dt) + std::abs(dz) < 1e-12 * (1.0 + std::abs(t) + std::abs(z)))
                    return std::make_pair(t, z);
            }
            return std::nullopt;
        };

        for (const RootCluster& zc : zcand) {
            Complex t = t0, z = zc.value;
            bool transverse = false;
            if (auto sharp = try_polish(t0, zc.value)) {
                t = sharp->first;
                z = sharp->second;
                transverse = true;
            }
            Vec3 vp = canonicalized(Vec3{1.0, t, z});
            double score = std::max(std::abs(fp.eval(vp)) / l1f, std::abs(gp.eval(vp)) / l1g);
            if (score > verify_tol) continue;
            out.push_back({ProjPoint(frame.t3 * vp), score, transverse});
        }
    }
}

struct LocalQuadratic {
    int i, j;          // chart directions transversal to the point
    Complex a, b, c;   // tangent-cone quadratic a u^2 + 2 b uv + c v^2
    double scale;
};

LocalQuadratic tangent_cone_quadratic(const HomPoly& f, const ProjPoint& p) {
    const Vec3& v = p.coords();
    int k = argmax_abs(v);
    int i = (k + 1) % 3, j = (k + 2) % 3;
    if (i > j) std::swap(i, j);
    LocalQuadratic q;
    q.i = i;
    q.j = j;
    q.a = f.partial(i).partial(i).eval(v);
    q.b = f.partial(i).partial(j).eval(v);
    q.c = f.partial(j).partial(j).eval(v);
    q.scale = std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c)});
    return q;
}

ProjLine tangent_line_from_direction(const ProjPoint& p, int i, int j, Complex a, Complex b) {
    Vec3 dir{};
    dir[static_cast<std::size_t>(i)] = a;
    dir[static_cast<std::size_t>(j)] = b;
    return ProjLine(cross(p.coords(), dir));
}

SingularPoint type_singular_point(const HomPoly& f, const ProjPoint& p) {
    LocalQuadratic q = tangent_cone_quadratic(f, p);
    SingularPoint out{p, SingKind::Other, {}};
    const double fscale = std::max(1.0, coeff_l1(f));
    if (q.scale <= 1e-6 * fscale) return out; // multiplicity >= 3

    Complex disc = q.b * q.b - q.a * q.c;
    if (std::abs(disc) > 1e-6 * q.scale * q.scale) {
        out.kind = SingKind::Node;
        Complex root = std::sqrt(disc);
        if (std::abs(q.a) >= std::abs(q.c)) {
            out.tangent_cone.push_back(tangent_line_from_direction(p, q.i, q.j, -q.b + root, q.a));
            out.tangent_cone.push_back(tangent_line_from_direction(p, q.i, q.j, -q.b - root, q.a));
        } else {
            out.tangent_cone.push_back(tangent_line_from_direction(p, q.i, q.j, q.c, -q.b + root));
            out.tangent_cone.push_back(tangent_line_from_direction(p, q.i, q.j, q.c, -q.b - root));
        }
        return out;
    }

    // repeated tangent direction; a simple cusp needs a nonzero cubic term along it
    Complex a, b;
    if (std::abs(q.a) >= std::abs(q.c)) { a = -q.b; b = q.a; }
    else { a = q.c; b = -q.b; }
    double dn = std::max(std::abs(a), std::abs(b));
    a /= dn;
    b /= dn;

    Complex cubic = 0.0;
    if (f.degree() >= 3) {
        const Vec3& v = p.coords();
        for (int r = 0; r <= 3; ++r) {
            HomPoly d = f;
            for (int s = 0; s < r; ++s) d = d.partial(q.i);
            for (int s = 0; s < 3 - r; ++s) d = d.partial(q.j);
            double binom = (r == 0 || r == 3) ? 1.0 : 3.0;
            Complex apow = 1.0, bpow = 1.0;
            for (int s = 0; s < r; ++s) apow *= a;
            for (int s = 0; s < 3 - r; ++s) bpow *= b;
            cubic += binom * apow * bpow * d.eval(v);
        }
    }
    if (std::abs(cubic) > 1e-6 * fscale) {
        out.kind = SingKind::Cusp;
        out.tangent_cone.push_back(tangent_line_from_direction(p, q.i, q.j, a, b));
    }
    return out;
}

/// Damped Newton iteration on the gradient system from a nearby start. The
/// Jacobian is the Hessian, rank-1 at a cusp, so convergence degrades to
/// linear there; the step acceptance keeps it from diverging.
ProjPoint refine_singular_candidate(const std::array<HomPoly, 3>& parts,
                                    const std::array<std::array<HomPoly, 3>, 3>& hess, const ProjPoint& start) {
    Vec3 p = start.coords();
    int k = argmax_abs(p);
    int ci = (k + 1) % 3, cj = (k + 2) % 3;

    auto resid = [&](const Vec3& v) {
        double r = 0.0;
        for (const auto& d : parts)
            if (!d.is_zero()) r = std::max(r, std::abs(d.eval(v)));
        return r;
    };

    double best = resid(p);
    for (int iter = 0; iter < 140; ++iter) {
        // best-conditioned pair of gradient equations in the chart directions
        int ba = 0, bb = 1;
        Complex bj00 = 0, bj01 = 0, bj10 = 0, bj11 = 0;
        double bdet = -1.0;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                Complex j00 = hess[static_cast<std::size_t>(a)][static_cast<std::size_t>(ci)].eval(p);
                Complex j01 = hess[static_cast<std::size_t>(a)][static_cast<std::size_t>(cj)].eval(p);
                Complex j10 = hess[static_cast<std::size_t>(b)][static_cast<std::size_t>(ci)].eval(p);
                Complex j11 = hess[static_cast<std::size_t>(b)][static_cast<std::size_t>(cj)].eval(p);
                double dd = std::abs(j00 * j11 - j01 * j10);
                if (dd > bdet) { bdet = dd; ba = a; bb = b; bj00 = j00; bj01 = j01; bj10 = j10; bj11 = j11; }
            }
        if (bdet <= 1e-300) break;
        Complex ra = parts[static_cast<std::size_t>(ba)].eval(p);
        Complex rb = parts[static_cast<std::size_t>(bb)].eval(p);
        Complex jdet = bj00 * bj11 - bj01 * bj10;
        Complex du = (ra * bj11 - rb * bj01) / jdet;
        Complex dv = (bj00 * rb - bj10 * ra) / jdet;

        bool improved = false;
        double damp = 1.0;
        for (int h = 0; h < 5 && !improved; ++h, damp *= 0.5) {
            Vec3 q = p;
            q[static_cast<std::size_t>(ci)] -= damp * du;
            q[static_cast<std::size_t>(cj)] -= damp * dv;
            double r = resid(q);
            if (r < best) {
                best = r;
                p = q;
                improved = true;
            }
        }
        if (!improved || best == 0.0) break;
    }

    // Cusp stage: the gradient leaves the tangent direction only quadratically
    // determined. The chart discriminant of the tangent-cone quadratic
    // vanishes linearly along it, so a Gauss-Newton pass over the gradient
    // plus the discriminant restores quadratic convergence.
    const HomPoly& hii = hess[static_cast<std::size_t>(ci)][static_cast<std::size_t>(ci)];
    const HomPoly& hij = hess[static_cast<std::size_t>(ci)][static_cast<std::size_t>(cj)];
    const HomPoly& hjj = hess[static_cast<std::size_t>(cj)][static_cast<std::size_t>(cj)];
    double hscale = std::max({std::abs(hii.eval(p)), std::abs(hij.eval(p)), std::abs(hjj.eval(p)), 1e-12});
    Complex disc0 = hij.eval(p) * hij.eval(p) - hii.eval(p) * hjj.eval(p);
    if (std::abs(disc0) <= 1e-4 * hscale * hscale) {
        HomPoly disc = hij * hij - hii * hjj;
        std::vector<const HomPoly*> eqs;
        std::vector<double> weight;
        for (const auto& d : parts)
            if (!d.is_zero()) { eqs.push_back(&d); weight.push_back(1.0 / std::max(1.0, coeff_l1(d))); }
        if (!disc.is_zero()) { eqs.push_back(&disc); weight.push_back(1.0 / std::max(1.0, coeff_l1(disc))); }
        std::vector<std::array<HomPoly, 2>> jac;
        for (const HomPoly* e : eqs) jac.push_back({e->partial(ci), e->partial(cj)});

        auto metric = [&](const Vec3& v) {
            double m = 0.0;
            for (std::size_t k = 0; k < eqs.size(); ++k) m += std::norm(weight[k] * eqs[k]->eval(v));
            return m;
        };
        double current = metric(p);
        for (int iter = 0; iter < 60; ++iter) {
            // normal equations of the weighted least-squares step
            Complex a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
            for (std::size_t k = 0; k < eqs.size(); ++k) {
                Complex j0 = weight[k] * jac[k][0].eval(p), j1 = weight[k] * jac[k][1].eval(p);
                Complex e = weight[k] * eqs[k]->eval(p);
                a00 += std::conj(j0) * j0;
                a01 += std::conj(j0) * j1;
                a11 += std::conj(j1) * j1;
                b0 += std::conj(j0) * e;
                b1 += std::conj(j1) * e;
            }
            Complex dd = a00 * a11 - a01 * std::conj(a01);
            if (std::abs(dd) < 1e-300) break;
            Complex du = (b0 * a11 - b1 * a01) / dd;
            Complex dv = (a00 * b1 - std::conj(a01) * b0) / dd;
            bool improved2 = false;
            double damp = 1.0;
            for (int h = 0; h < 5 && !improved2; ++h, damp *= 0.5) {
                Vec3 q = p;
                q[static_cast<std::size_t>(ci)] -= damp * du;
                q[static_cast<std::size_t>(cj)] -= damp * dv;
                double m = metric(q);
                if (m < current) {
                    current = m;
                    p = q;
                    improved2 = true;
                }
            }
            if (!improved2 || current == 0.0) break;
        }
    }
    return ProjPoint(p);
}

std::pair<Vec3, Vec3> random_line_span(std::mt19937_64& rng) {
    Vec3 d{random_unit_disc(rng), random_unit_disc(rng), random_unit_disc(rng)};
    while (max_abs(d) < 0.3) d = {random_unit_disc(rng), random_unit_disc(rng), random_unit_disc(rng)};
    return line_span(ProjLine(d));
}

/// Newton polish of a simple root of a binary form along the affine chart.
Complex polish_root(const BinaryForm& b, Complex t) {
    BinaryForm d = bf_derivative_t(b);
    for (int i = 0; i < 4; ++i) {
        Complex num = bf_eval(b, 1.0, t), den = bf_eval(d, 1.0, t);
        if (std::abs(den) < 1e-300) break;
        t -= num / den;
    }
    return t;
}

} // namespace

const char* sing_kind_name(SingKind k) {
    switch (k) {
        case SingKind::Node: return "node";
        case SingKind::Cusp: return "cusp";
        case SingKind::Other: return "other";
    }
    return "?";
}

InvarianceResult invariance_check(const HomPoly& f, const ProjTransform& g, double tol) {
    if (f.is_zero()) throw Error(Errc::invalid_input, "invariance check requires a nonzero polynomial");
    HomPoly pulled = pullback(f, g.lift());
    PolyAlignment a = align_scale(f, pulled);
    return {a.residual <= tol, a.scale, a.residual};
}

void require_squarefree(const HomPoly& f, const CurveOptions& opt) {
    if (f.is_zero()) throw Error(Errc::invalid_input, "zero polynomial");
    if (f.degree() <= 1) return;
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 0x1234567ULL);
    const HomPoly fn = f.normalized();
    std::array<HomPoly, 3> parts = {fn.partial(0), fn.partial(1), fn.partial(2)};

    int flagged_lines = 0;
    for (int line = 0; line < 2; ++line) {
        auto [u1, u2] = random_line_span(rng);
        BinaryForm b = restrict_to_span(fn, u1, u2);
        double bmax = 0.0;
        for (auto c : b) bmax = std::max(bmax, std::abs(c));
        if (bmax == 0.0) { ++flagged_lines; continue; }

        std::vector<Vec3> on_line;
        BinaryRoots roots = binary_form_roots(b, 1e-6);
        for (const auto& rc : roots.finite) on_line.push_back(canonicalized(u1 + rc.value * u2));
        if (roots.infinity_multiplicity > 0) on_line.push_back(canonicalized(u2));

        bool hit = false;
        for (const Vec3& p : on_line) {
            bool all_vanish = true;
            for (const auto& d : parts) {
                if (d.is_zero()) continue;
                if (std::abs(d.eval(p)) > 1e-7 * std::max(1.0, coeff_l1(d))) { all_vanish = false; break; }
            }
            if (all_vanish) { hit = true; break; }
        }
        if (hit) ++flagged_lines;
    }
    if (flagged_lines == 2)
        throw Error(Errc::repeated_factor, "polynomial has a repeated factor");
}

std::vector<ProjPoint> curve_common_points(const HomPoly& f, const HomPoly& g, const CurveOptions& opt,
                                            bool transverse_only) {
    if (f.is_zero() || g.is_zero()) throw Error(Errc::invalid_input, "zero polynomial");
    if (f.degree() > 3 || g.degree() > 3)
        throw Error(Errc::degree_unsupported, "common-zero extraction is implemented for degree <= 3");
    if (f.degree() == 0 || g.degree() == 0) return {};

    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 0xabcdefULL);
    std::vector<PreparedFrame> frames;
    int shared = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        bool shared_signal = false;
        if (auto frame = prepare_frame(f.normalized(), g.normalized(), rng, shared_signal))
            frames.push_back(std::move(*frame));
        if (shared_signal) ++shared;
        if (shared >= 3) throw Error(Errc::degenerate, "curves share a component; common zeros are not finite");
    }
    if (frames.empty()) throw Error(Errc::degenerate, "no usable resultant frame found");

    // harvest the three best frames; weak resultants amplify root noise
    std::sort(frames.begin(), frames.end(),
              [](const PreparedFrame& a, const PreparedFrame& b) { return a.quality > b.quality; });
    std::vector<ScoredPoint> found;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, frames.size()); ++i)
        harvest_frame(frames[i], 1e-8, found);

    // candidates from centroids of different multiplicity structures scatter
    // around a true multiple zero; keep the best-verified representative
    std::sort(found.begin(), found.end(), [](const ScoredPoint& a, const ScoredPoint& b) {
        if (a.score != b.score) return a.score < b.score;
        const Vec3 &u = a.point.coords(), &v = b.point.coords();
        for (int i = 0; i < 3; ++i) {
            if (u[static_cast<std::size_t>(i)].real() != v[static_cast<std::size_t>(i)].real())
                return u[static_cast<std::size_t>(i)].real() < v[static_cast<std::size_t>(i)].real();
            if (u[static_cast<std::size_t>(i)].imag() != v[static_cast<std::size_t>(i)].imag())
                return u[static_cast<std::size_t>(i)].imag() < v[static_cast<std::size_t>(i)].imag();
        }
        return false;
    });
    std::vector<ProjPoint> out;
    for (const auto& sp : found) {
        if (transverse_only && !sp.transverse) continue;
        bool fresh = true;
        for (const auto& q : out)
            if (q.same_as(sp.point, 1e-4)) { fresh = false; break; }
        if (fresh) out.push_back(sp.point);
    }
    return out;
}

std::vector<SingularPoint> singular_points(const HomPoly& f, const CurveOptions& opt) {
    if (f.is_zero()) throw Error(Errc::invalid_input, "zero polynomial");
    const int n = f.degree();
    if (n == 0) throw Error(Errc::invalid_input, "constant polynomial does not define a curve");
    if (n > 3) throw Error(Errc::degree_unsupported, "singularity solving is exact only for degree <= 3");
    require_squarefree(f, opt);
    if (n == 1) return {};

    const HomPoly fn = f.normalized();
    if (n == 2) {
        Mat3 m = conic_matrix(fn);
        double scale = max_abs(m);
        if (std::abs(det(m)) > opt.tol * scale * scale * scale) return {}; // smooth conic
        auto ns = null_space(m, opt.tol * scale);
        if (ns.size() != 1)
            throw Error(Errc::repeated_factor, "degree-2 polynomial is a double line");
        return {type_singular_point(fn, ProjPoint(ns[0]))};
    }

    std::array<HomPoly, 3> parts = {fn.partial(0), fn.partial(1), fn.partial(2)};
    std::vector<ProjPoint> candidates;
    bool any_pair = false;
    for (int i = 0; i < 3 && !any_pair; ++i)
        for (int j = i + 1; j < 3 && !any_pair; ++j) {
            if (parts[static_cast<std::size_t>(i)].is_zero() || parts[static_cast<std::size_t>(j)].is_zero()) continue;
            try {
                candidates = curve_common_points(parts[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(j)], opt);
                any_pair = true;
            } catch (const Error& e) {
                if (e.code() != Errc::degenerate) throw;
            }
        }
    if (!any_pair) throw Error(Errc::repeated_factor, "all pairs of partials share a component");

    std::array<std::array<HomPoly, 3>, 3> hess = {{{parts[0].partial(0), parts[0].partial(1), parts[0].partial(2)},
                                                   {parts[1].partial(0), parts[1].partial(1), parts[1].partial(2)},
                                                   {parts[2].partial(0), parts[2].partial(1), parts[2].partial(2)}}};
    std::vector<SingularPoint> out;
    for (const auto& cand : candidates) {
        ProjPoint p = refine_singular_candidate(parts, hess, cand);
        bool singular = true;
        for (const auto& d : parts) {
            if (d.is_zero()) continue;
            if (std::abs(d.eval(p.coords())) > 1e-7 * std::max(1.0, coeff_l1(d))) { singular = false; break; }
        }
        if (!singular) continue;
        bool fresh = true;
        for (const auto& s : out)
            if (s.location.same_as(p, 1e-6)) { fresh = false; break; }
        if (fresh) out.push_back(type_singular_point(fn, p));
    }
    return out;
}

std::vector<ProjPoint> inflection_points(const HomPoly& f, const CurveOptions& opt) {
    if (f.is_zero()) throw Error(Errc::invalid_input, "zero polynomial");
    const int n = f.degree();
    if (n < 2 || n > 3) throw Error(Errc::degree_unsupported, "inflection solving is exact only for degree 2 and 3");
    require_squarefree(f, opt);

    const HomPoly fn = f.normalized();
    HomPoly h = hessian_determinant(fn);
    if (h.is_zero())
        throw Error(Errc::degenerate, "Hessian vanishes identically; curve has a line component");
    if (n == 2) return {}; // nondegenerate conic: constant nonzero Hessian, no flexes

    // the Hessian meets the curve with high multiplicity at singular points;
    // centroid debris there can look smooth, so cull by distance to the
    // refined singular locations
    std::vector<SingularPoint> sing = singular_points(fn, opt);

    std::array<HomPoly, 3> parts = {fn.partial(0), fn.partial(1), fn.partial(2)};
    std::vector<ProjPoint> out;
    for (const auto& p : curve_common_points(fn, h, opt, /*transverse_only=*/true)) {
        bool near_singular = false;
        for (const auto& s : sing)
            if (s.location.same_as(p, 1e-3)) { near_singular = true; break; }
        if (near_singular) continue;
        double grad = 0.0;
        for (const auto& d : parts)
            if (!d.is_zero()) grad = std::max(grad, std::abs(d.eval(p.coords())));
        if (grad <= 1e-6 * std::max(1.0, coeff_l1(fn))) continue; // singular point, not a flex
        out.push_back(p);
    }
    return out;
}

IntersectionProfile line_curve_intersection(const HomPoly& f, const ProjLine& line, const CurveOptions& opt) {
    if (f.is_zero()) throw Error(Errc::invalid_input, "zero polynomial");
    const int n = f.degree();
    if (n == 0) throw Error(Errc::invalid_input, "constant polynomial does not define a curve");

    const HomPoly fn = f.normalized();
    auto [u1, u2] = line_span(line);
    BinaryForm b = restrict_to_span(fn, u1, u2);

    double bmax = 0.0;
    for (auto c : b) bmax = std::max(bmax, std::abs(c));
    if (bmax <= 1e-10 * coeff_l1(fn) * std::pow(2.0, n))
        throw Error(Errc::line_is_component, "line is a component of the curve");

    BinaryRoots roots = binary_form_roots(b, 1e-6);
    IntersectionProfile out;
    for (const auto& rc : roots.finite) {
        Complex t = rc.multiplicity == 1 ? polish_root(b, rc.value) : rc.value;
        out.points.emplace_back(ProjPoint(u1 + t * u2), rc.multiplicity);
    }
    if (roots.infinity_multiplicity > 0) out.points.emplace_back(ProjPoint(u2), roots.infinity_multiplicity);
    (void)opt;
    return out;
}

int clebsch_genus(int n, int d, int s) {
    if (n < 1 || d < 0 || s < 0) throw Error(Errc::invalid_input, "invalid curve data");
    int g = (n - 1) * (n - 2) / 2 - d - s;
    if (g < 0) throw Error(Errc::negative_genus, "genus formula is negative; curve data inconsistent");
    return g;
}

int pluecker_class(int n, int d, int s) {
    if (n < 2 || d < 0 || s < 0) throw Error(Errc::invalid_input, "class formula requires degree >= 2");
    int c = n * (n - 1) - 2 * d - 3 * s;
    if (c < 0) throw Error(Errc::inconsistent_invariants, "class formula is negative; curve data inconsistent");
    return c;
}

int pluecker_inflections(int n, int d, int s) {
    if (n < 2 || d < 0 || s < 0) throw Error(Errc::invalid_input, "inflection formula requires degree >= 2");
    int i = 3 * n * (n - 2) - 6 * d - 8 * s;
    if (i < 0) throw Error(Errc::inconsistent_invariants, "inflection formula is negative; curve data inconsistent");
    return i;
}

HomPoly dual_conic(const HomPoly& f, double tol) {
    Mat3 m = conic_matrix(f.normalized());
    double scale = max_abs(m);
    if (std::abs(det(m)) <= tol * scale * scale * scale)
        throw Error(Errc::degenerate, "conic is degenerate; no dual conic");
    return conic_poly(adjugate(m)).normalized();
}

HomPoly dual_curve(const HomPoly& f, double tol) {
    if (f.degree() == 2) return dual_conic(f, tol);
    throw Error(Errc::unsupported, "dual of a curve of degree >= 3 needs a rational parametrization");
}

DualParametrization dual_curve(const RationalParametrization& gamma, const CurveOptions& opt) {
    if (gamma.x.size() != gamma.y.size() || gamma.x.size() != gamma.z.size() || gamma.x.size() < 2)
        throw Error(Errc::invalid_input, "parametrization components must share a degree >= 1");

    DualParametrization out;
    BinaryForm dx = bf_derivative_t(gamma.x), dy = bf_derivative_t(gamma.y), dz = bf_derivative_t(gamma.z);
    auto sub = [](BinaryForm a, const BinaryForm& b) {
        a.resize(std::max(a.size(), b.size()), 0.0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        return a;
    };
    out.tangent_map.x = sub(bf_mul(gamma.y, dz), bf_mul(gamma.z, dy));
    out.tangent_map.y = sub(bf_mul(gamma.z, dx), bf_mul(gamma.x, dz));
    out.tangent_map.z = sub(bf_mul(gamma.x, dy), bf_mul(gamma.y, dx));

    // sample tangent lines away from parameter symmetry
    const int K = 16;
    std::vector<Vec3> samples;
    for (int k = 0; k < K; ++k) {
        Complex t = std::polar(1.21, 0.37 + kTwoPi * k / K);
        Vec3 w{bf_eval(out.tangent_map.x, 1.0, t), bf_eval(out.tangent_map.y, 1.0, t),
               bf_eval(out.tangent_map.z, 1.0, t)};
        if (max_abs(w) < 1e-12) continue;
        samples.push_back(canonicalized(w));
    }
    if (samples.size() < 12) throw Error(Errc::degenerate, "tangent map degenerates at too many samples");

    for (int deg = 1; deg <= 3 && !out.implicit; ++deg) {
        std::vector<Monomial> mons;
        for (int i = deg; i >= 0; --i)
            for (int j = deg - i; j >= 0; --j) mons.push_back({i, j, deg - i - j});
        DenseMatrix a(samples.size(), std::vector<Complex>(mons.size()));
        for (std::size_t r = 0; r < samples.size(); ++r)
            for (std::size_t c = 0; c < mons.size(); ++c) {
                Complex v = 1.0;
                for (int s = 0; s < mons[c].x; ++s) v *= samples[r][0];
                for (int s = 0; s < mons[c].y; ++s) v *= samples[r][1];
                for (int s = 0; s < mons[c].z; ++s) v *= samples[r][2];
                a[r][c] = v;
            }
        auto ns = null_space_dense(a, 1e-8);
        if (ns.basis.size() != 1) continue; // no form of this degree, or not unique
        std::vector<Term> terms;
        for (std::size_t c = 0; c < mons.size(); ++c) terms.push_back({mons[c], ns.basis[0][c]});
        HomPoly fit = HomPoly(deg, std::move(terms)).normalized();
        double res = 0.0;
        for (const auto& w : samples) res = std::max(res, std::abs(fit.eval(w)));
        if (res < 1e-7) {
            out.implicit = fit.pruned(1e-9); // null-space fit noise sits far below real coefficients
            out.fit_residual = res;
        }
    }
    (void)opt;
    return out;
}

std::vector<ProjLine> detect_line_components(const HomPoly& f, const CurveOptions& opt) {
    if (f.is_zero()) throw Error(Errc::invalid_input, "zero polynomial");
    const int n = f.degree();
    if (n == 0) return {};
    if (n == 1) return {ProjLine({f.coeff({1, 0, 0}), f.coeff({0, 1, 0}), f.coeff({0, 0, 1})})};

    const HomPoly fn = f.normalized();
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 0x777ULL);

    auto sample_points = [&](std::vector<ProjPoint>& pts) {
        auto [u1, u2] = random_line_span(rng);
        BinaryForm b = restrict_to_span(fn, u1, u2);
        double bmax = 0.0;
        for (auto c : b) bmax = std::max(bmax, std::abs(c));
        if (bmax == 0.0) return;
        BinaryRoots roots = binary_form_roots(b, 1e-6);
        for (const auto& rc : roots.finite) pts.emplace_back(u1 + polish_root(b, rc.value) * u2);
        if (roots.infinity_multiplicity > 0) pts.emplace_back(u2);
    };

    std::vector<ProjPoint> ps, qs;
    sample_points(ps);
    sample_points(qs);

    std::vector<ProjLine> out;
    for (const auto& p : ps)
        for (const auto& q : qs) {
            if (p.same_as(q, 1e-6)) continue;
            ProjLine cand = join(p, q);
            auto [u1, u2] = line_span(cand);
            BinaryForm b = restrict_to_span(fn, u1, u2);
            double bmax = 0.0;
            for (auto c : b) bmax = std::max(bmax, std::abs(c));
            if (bmax > 1e-8 * coeff_l1(fn) * std::pow(2.0, n)) continue;
            bool fresh = true;
            for (const auto& l : out)
                if (l.same_as(cand, 1e-6)) { fresh = false; break; }
            if (fresh) out.push_back(cand);
        }
    return out;
}

} // namespace exset
