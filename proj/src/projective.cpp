#include "exset/projective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <cstdlib>

namespace exset {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(const Vec3& v, const char* what) {
    if (!is_finite(v)) throw Error(Errc::invalid_input, std::string(what) + " has non-finite coordinates");
}

/// Argument mapped into (-pi, pi] (std::arg may return -pi).
double arg_halfopen(Complex z) {
    double a = std::arg(z);
    if (a <= -kPi) a = kPi;
    return a;
}

bool eigen_order(Complex x, Complex y) {
    double mx = std::abs(x), my = std::abs(y);
    if (mx != my) return mx > my;
    return arg_halfopen(x) > arg_halfopen(y);
}

/// Roots of the monic cubic t^3 + a2 t^2 + a1 t + a0 over C (Cardano).
std::array<Complex, 3> cardano_cubic(Complex a2, Complex a1, Complex a0) {
    const Complex shift = a2 / 3.0;
    // depressed: t = s - shift, s^3 + p s + q
    const Complex p = a1 - a2 * a2 / 3.0;
    const Complex q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const Complex w(-0.5, std::sqrt(3.0) / 2.0); // primitive cube root of unity

    std::array<Complex, 3> roots;
    const double scale = std::max({std::abs(p), std::abs(q), 1e-300});
    if (std::abs(p) <= 1e-14 * scale && std::abs(q) <= 1e-14 * scale) {
        roots = {-shift, -shift, -shift};
        return roots;
    }
    Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u3 = -q / 2.0 + disc;
    if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
    Complex u = std::pow(u3, 1.0 / 3.0);
    for (int k = 0; k < 3; ++k) {
        Complex uk = u * std::pow(w, static_cast<double>(k));
        Complex s = (std::abs(uk) > 0.0) ? uk - p / (3.0 * uk) : uk;
        roots[static_cast<std::size_t>(k)] = s - shift;
    }
    return roots;
}

struct CharPoly { // monic: t^3 + a2 t^2 + a1 t + a0
    Complex a2, a1, a0;
    Complex eval(Complex t) const { return ((t + a2) * t + a1) * t + a0; }
    Complex d1(Complex t) const { return (3.0 * t + 2.0 * a2) * t + a1; }
    Complex d2(Complex t) const { return 6.0 * t + 2.0 * a2; }
};

/// Monotone Newton: a step is kept only when it shrinks the target value.
/// Near multiple roots the derivative drops below the coefficient-noise floor
/// and a raw step would kick the root far away.
Complex newton_refine(const CharPoly& p, Complex t, int derivative_order, int steps) {
    auto target = [&](Complex x) {
        switch (derivative_order) {
            case 0: return p.eval(x);
            case 1: return p.d1(x);
            default: return p.d2(x);
        }
    };
    auto dtarget = [&](Complex x) {
        switch (derivative_order) {
            case 0: return p.d1(x);
            case 1: return p.d2(x);
            default: return Complex(6.0);
        }
    };
    double best = std::abs(target(t));
    for (int i = 0; i < steps; ++i) {
        Complex df = dtarget(t);
        if (std::abs(df) < 1e-30) break;
        Complex step = target(t) / df;
        bool improved = false;
        for (int h = 0; h < 3 && !improved; ++h, step *= 0.5) {
            Complex cand = t - step;
            double val = std::abs(target(cand));
            if (val < best) {
                best = val;
                t = cand;
                improved = true;
            }
        }
        if (!improved || best == 0.0) break;
    }
    return t;
}

struct Cluster {
    Complex value;
    int algebraic = 0;
    int geometric = 0;
};

struct EigenInternal {
    std::vector<Cluster> clusters; // sorted by eigen_order of value
    std::array<Complex, 3> sorted;
    bool diagonalizable = false;
};

/// Splintering radius for multiple characteristic roots in double precision is
/// O(eps^(1/3)); clusters are formed at that scale (never below the user
/// tolerance) and each cluster centroid is re-polished with Newton on the
/// matching derivative, which restores full accuracy for the multiple root.
EigenInternal analyze_eigen(const Mat3& a, double tol) {
    const CharPoly p{-trace(a), second_invariant(a), -det(a)};
    auto roots = cardano_cubic(p.a2, p.a1, p.a0);
    for (auto& r : roots) r = newton_refine(p, r, 0, 3);

    // a multiple eigenvalue of an inexactly-held matrix genuinely splinters by
    // (eps * cond)^(1/3); the radius must cover that, far above eps itself
    double scale = 0.0;
    for (auto r : roots) scale = std::max(scale, std::abs(r));
    const double cluster_radius = std::max(tol, 1e-3 * (1.0 + scale));

    // single-linkage clustering of the three roots
    std::array<int, 3> label{0, 1, 2};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]) <= cluster_radius) {
                int from = label[static_cast<std::size_t>(j)], to = label[static_cast<std::size_t>(i)];
                for (auto& l : label)
                    if (l == from) l = to;
            }

    EigenInternal out;
    for (int id = 0; id < 3; ++id) {
        Complex sum = 0.0;
        int count = 0;
        for (int i = 0; i < 3; ++i)
            if (label[static_cast<std::size_t>(i)] == id) { sum += roots[static_cast<std::size_t>(i)]; ++count; }
        if (count == 0) continue;
        Cluster c;
        c.algebraic = count;
        c.value = newton_refine(p, sum / static_cast<double>(count), count - 1, count == 1 ? 2 : 4);
        out.clusters.push_back(c);
    }

    const double rank_threshold = tol * std::max(1.0, max_abs(a));
    bool diag = true;
    for (auto& c : out.clusters) {
        Mat3 shifted = a - Mat3::diagonal(c.value, c.value, c.value);
        c.geometric = 3 - rank_with_tol(shifted, rank_threshold);
        if (getenv("EXSET_DBG"))
            fprintf(stderr, "cluster val=(%.12g,%.12g) alg=%d geom=%d thr=%.3e\n",
                    c.value.real(), c.value.imag(), c.algebraic, c.geometric, rank_threshold);
        if (c.geometric == 0 || c.geometric > c.algebraic)
            throw Error(Errc::ill_conditioned,
                        "eigenvalue clustering is ambiguous at the configured tolerance");
        if (c.geometric < c.algebraic) diag = false;
    }
    out.diagonalizable = diag;

    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const Cluster& x, const Cluster& y) { return eigen_order(x.value, y.value); });
    std::size_t k = 0;
    for (const auto& c : out.clusters)
        for (int i = 0; i < c.algebraic; ++i) out.sorted[k++] = c.value;
    return out;
}

/// Append vectors extending the current independent set, drawn from the null
/// space of `m` at the given threshold.
void extend_basis(std::vector<Vec3>& basis, const Mat3& m, double threshold, int want) {
    for (const auto& v : null_space(m, threshold)) {
        if (static_cast<int>(basis.size()) >= want) return;
        DenseMatrix stacked;
        for (const auto& b : basis) stacked.push_back({b[0], b[1], b[2]});
        stacked.push_back({v[0], v[1], v[2]});
        if (null_space_dense(stacked, 1e-10).rank == static_cast<int>(stacked.size()))
            basis.push_back(canonicalized(v));
    }
}

} // namespace

ProjPoint::ProjPoint(const Vec3& coords) {
    require_finite(coords, "point");
    if (max_abs(coords) == 0.0) throw Error(Errc::invalid_input, "point coordinates are all zero");
    c_ = canonicalized(coords);
}

ProjLine::ProjLine(const Vec3& dual_coords) {
    require_finite(dual_coords, "line");
    if (max_abs(dual_coords) == 0.0) throw Error(Errc::invalid_input, "line coordinates are all zero");
    d_ = canonicalized(dual_coords);
}

P1Point::P1Point(const Vec2& coords) {
    if (!is_finite(coords[0]) || !is_finite(coords[1]))
        throw Error(Errc::invalid_input, "P1 point has non-finite coordinates");
    double m0 = std::abs(coords[0]), m1 = std::abs(coords[1]);
    if (m0 == 0.0 && m1 == 0.0) throw Error(Errc::invalid_input, "P1 point coordinates are all zero");
    Complex s = (m0 >= m1) ? coords[0] : coords[1];
    c_ = {coords[0] / s, coords[1] / s};
}

MoebiusClass::MoebiusClass(const Mat2& m) {
    for (auto z : m.a)
        if (!is_finite(z)) throw Error(Errc::invalid_input, "Moebius matrix has non-finite entries");
    Complex d = det(m);
    double scale = 0.0;
    for (auto z : m.a) scale = std::max(scale, std::abs(z));
    if (std::abs(d) <= 1e-12 * scale * scale)
        throw Error(Errc::degenerate, "Moebius matrix is singular");
    Complex s = std::sqrt(d);
    m_ = m;
    for (auto& z : m_.a) z /= s;
}

P1Point MoebiusClass::apply(const P1Point& p) const {
    const auto& c = p.coords();
    return P1Point({m_(0, 0) * c[0] + m_(0, 1) * c[1], m_(1, 0) * c[0] + m_(1, 1) * c[1]});
}

ProjTransform::ProjTransform(const Mat3& m) {
    if (!is_finite(m)) throw Error(Errc::invalid_input, "transform has non-finite entries");
    Complex d = det(m);
    double scale = max_abs(m);
    if (scale == 0.0 || std::abs(d) <= 1e-12 * scale * scale * scale)
        throw Error(Errc::degenerate, "transform matrix is singular");
    Complex alpha = std::pow(d, 1.0 / 3.0); // principal branch
    m_ = (1.0 / alpha) * m;
}

ProjTransform ProjTransform::inverse() const { return ProjTransform(adjugate(m_)); }

PseudoProjMap::PseudoProjMap(const Mat3& m, double tol) {
    if (!is_finite(m)) throw Error(Errc::invalid_input, "pseudo-projective map has non-finite entries");
    if (max_abs(m) == 0.0) throw Error(Errc::invalid_input, "pseudo-projective map is the zero matrix");
    m_ = canonicalized(m);
    rank_ = rank_with_tol(m_, tol * std::max(1.0, max_abs(m_)));
}

const char* element_kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::Elliptic: return "elliptic";
        case ElementKind::Parabolic: return "parabolic";
        case ElementKind::Loxodromic: return "loxodromic";
    }
    return "?";
}

ProjLine join(const ProjPoint& p, const ProjPoint& q, double tol) {
    Vec3 d = cross(p.coords(), q.coords());
    if (max_abs(d) <= tol * norm2(p.coords()) * norm2(q.coords()))
        throw Error(Errc::equal_points, "join requires distinct points");
    return ProjLine(d);
}

ProjPoint meet(const ProjLine& l, const ProjLine& m, double tol) {
    Vec3 p = cross(l.dual(), m.dual());
    if (max_abs(p) <= tol * norm2(l.dual()) * norm2(m.dual()))
        throw Error(Errc::equal_points, "meet requires distinct lines");
    return ProjPoint(p);
}

ProjPoint apply(const ProjTransform& g, const ProjPoint& p) { return ProjPoint(g.lift() * p.coords()); }

ProjLine apply(const ProjTransform& g, const ProjLine& l) {
    // dual action: l' = g^{-T} l, computed with the adjugate (same class)
    return ProjLine(transpose(adjugate(g.lift())) * l.dual());
}

EigenData eigen_analysis(const ProjTransform& g, double tol) {
    const Mat3& a = g.lift();
    EigenInternal e = analyze_eigen(a, tol);

    EigenData out;
    out.eigenvalues = e.sorted;
    out.diagonalizable = e.diagonalizable;

    std::vector<Vec3> basis;
    for (const auto& c : e.clusters) {
        int want = static_cast<int>(basis.size()) + c.algebraic;
        Mat3 shifted = a - Mat3::diagonal(c.value, c.value, c.value);
        Mat3 power = shifted;
        for (int k = 0; k < 3 && static_cast<int>(basis.size()) < want; ++k) {
            // null(shifted^(k+1)) picks up the Jordan chain beyond the eigenvectors
            extend_basis(basis, power, tol * std::max(1.0, max_abs(power)), want);
            power = power * shifted;
        }
    }
    for (const auto& v : basis) out.basis.emplace_back(v);
    return out;
}

ElementClass classify_element(const ProjTransform& g, double tol) {
    EigenData e = eigen_analysis(g, tol);
    bool unitary = true;
    for (auto l : e.eigenvalues)
        if (std::abs(std::abs(l) - 1.0) >= tol) unitary = false;
    ElementKind kind;
    if (!unitary) kind = ElementKind::Loxodromic;
    else if (e.diagonalizable) kind = ElementKind::Elliptic;
    else kind = ElementKind::Parabolic;
    return {kind, std::move(e)};
}

PseudoProjMap power_limit(const ProjTransform& g, double tol) {
    const Mat3& a = g.lift();
    EigenInternal e = analyze_eigen(a, tol);
    const auto& cl = e.clusters;

    auto spectral_projector = [&](Complex mu) { // adj(mu I - a), scale-free projector for simple mu
        return adjugate(Mat3::diagonal(mu, mu, mu) - a);
    };

    Mat3 limit;
    if (!e.diagonalizable) {
        // the unique defective cluster
        std::size_t jd = 0;
        for (std::size_t i = 0; i < cl.size(); ++i)
            if (cl[i].geometric < cl[i].algebraic) jd = i;
        const Cluster& jordan = cl[jd];

        double other_max = 0.0;
        for (std::size_t i = 0; i < cl.size(); ++i)
            if (i != jd) other_max = std::max(other_max, std::abs(cl[i].value));

        if (std::abs(jordan.value) >= other_max - tol) {
            // polynomial growth of the Jordan block dominates
            Mat3 nil = a - Mat3::diagonal(jordan.value, jordan.value, jordan.value);
            if (jordan.algebraic == 3) {
                limit = (jordan.geometric == 1) ? nil * nil : nil;
            } else {
                Complex mu = cl[jd == 0 ? 1 : 0].value;
                Complex gap = mu - jordan.value;
                Mat3 pmu = (1.0 / (gap * gap)) * spectral_projector(mu);
                limit = nil * (Mat3::identity() - pmu);
            }
        } else {
            limit = spectral_projector(cl[jd == 0 ? 1 : 0].value); // strictly dominant simple eigenvalue
        }
    } else {
        const Cluster& top = cl.front();
        for (std::size_t i = 1; i < cl.size(); ++i)
            if (std::abs(cl[i].value) >= std::abs(top.value) - tol)
                throw Error(Errc::non_convergent,
                            "distinct eigenvalues share the dominant modulus; power phases never stabilize");
        if (top.algebraic == 3) {
            limit = Mat3::identity();
        } else if (top.algebraic == 1) {
            limit = spectral_projector(top.value);
        } else {
            Complex mu = cl[1].value; // the subdominant simple eigenvalue
            Complex gap = mu - top.value;
            limit = Mat3::identity() - (1.0 / (gap * gap)) * spectral_projector(mu);
        }
    }

    if (max_abs(limit) <= 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, max_abs(a)))
        throw Error(Errc::ill_conditioned, "power limit collapsed numerically");
    return PseudoProjMap(limit, tol);
}

KernelLocus kernel(const PseudoProjMap& p, double tol) {
    KernelLocus out;
    if (p.rank() == 3) return out;
    const Mat3& m = p.rep();
    if (p.rank() == 2) {
        // 1-dim null space: cross product of the two most independent rows
        Vec3 best{};
        double best_norm = -1.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                Vec3 c = cross(m.row(i), m.row(j));
                if (max_abs(c) > best_norm) { best_norm = max_abs(c); best = c; }
            }
        out.kind = KernelLocus::Kind::Point;
        out.point = ProjPoint(best);
        return out;
    }
    if (p.rank() == 1) {
        // rank 1: m = u v^T, null space is the plane v.x = 0; v is the largest row
        Vec3 v = m.row(0);
        for (int r = 1; r < 3; ++r)
            if (max_abs(m.row(r)) > max_abs(v)) v = m.row(r);
        out.kind = KernelLocus::Kind::Line;
        out.line = ProjLine(v);
        return out;
    }
    (void)tol;
    throw Error(Errc::invalid_input, "pseudo-projective map of rank 0");
}

std::pair<Vec3, Vec3> line_span(const ProjLine& l) {
    const Vec3& d = l.dual();
    int k = argmax_abs(d);
    int i = (k + 1) % 3, j = (k + 2) % 3;
    if (i > j) std::swap(i, j);
    Vec3 u1{}, u2{};
    u1[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(k)];
    u1[static_cast<std::size_t>(k)] = -d[static_cast<std::size_t>(i)];
    u2[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(k)];
    u2[static_cast<std::size_t>(k)] = -d[static_cast<std::size_t>(j)];
    return {u1, u2};
}

MoebiusClass projection_morphism(const ProjTransform& g, const ProjPoint& center, const ProjLine& screen,
                                 double tol) {
    if (!apply(g, center).same_as(center, tol))
        throw Error(Errc::not_fixed, "projection center is not fixed by the transform");
    if (screen.contains(center, tol))
        throw Error(Errc::point_on_line, "projection center lies on the screen line");

    auto [u1, u2] = line_span(screen);
    const Vec3& p = center.coords();
    const Vec3& d = screen.dual();

    // x on screen -> (p x (g x)) x d, linear in x and preserving the span
    auto push = [&](const Vec3& x) { return cross(cross(p, g.lift() * x), d); };
    Vec3 w1 = push(u1), w2 = push(u2);

    // coordinates in the (u1, u2) basis via the best-conditioned 2x2 subsystem
    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double dd = std::abs(u1[static_cast<std::size_t>(i)] * u2[static_cast<std::size_t>(j)] -
                                 u1[static_cast<std::size_t>(j)] * u2[static_cast<std::size_t>(i)]);
            if (dd > best) { best = dd; bi = i; bj = j; }
        }
    auto coords = [&](const Vec3& w) -> Vec2 {
        Complex a11 = u1[static_cast<std::size_t>(bi)], a12 = u2[static_cast<std::size_t>(bi)];
        Complex a21 = u1[static_cast<std::size_t>(bj)], a22 = u2[static_cast<std::size_t>(bj)];
        Complex dd = a11 * a22 - a12 * a21;
        Complex b1 = w[static_cast<std::size_t>(bi)], b2 = w[static_cast<std::size_t>(bj)];
        return {(b1 * a22 - b2 * a12) / dd, (a11 * b2 - a21 * b1) / dd};
    };

    Vec2 c1 = coords(w1), c2 = coords(w2);
    return MoebiusClass(Mat2{{c1[0], c2[0], c1[1], c2[1]}});
}

} // namespace exset
