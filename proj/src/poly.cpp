#include "exset/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace exset {

namespace {

using TermMap = std::map<Monomial, Complex>;

void add_term(TermMap& m, const Monomial& mon, Complex c) {
    auto it = m.find(mon);
    if (it == m.end()) m.emplace(mon, c);
    else {
        it->second += c;
        if (it->second == 0.0) m.erase(it);
    }
}

HomPoly from_map(int degree, const TermMap& m) {
    std::vector<Term> terms;
    terms.reserve(m.size());
    for (const auto& [mon, c] : m) terms.push_back({mon, c});
    return HomPoly(degree, std::move(terms));
}

Complex ipow(Complex base, int e) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

HomPoly::HomPoly(int degree, std::vector<Term> terms) : degree_(degree) {
    if (degree < 0) throw Error(Errc::invalid_input, "negative polynomial degree");
    TermMap merged;
    for (const auto& t : terms) {
        if (!is_finite(t.coeff)) throw Error(Errc::invalid_input, "polynomial coefficient is not finite");
        if (t.mon.x < 0 || t.mon.y < 0 || t.mon.z < 0 || t.mon.degree() != degree)
            throw Error(Errc::invalid_input, "term degree does not match the polynomial degree");
        if (t.coeff != 0.0) add_term(merged, t.mon, t.coeff);
    }
    terms_.reserve(merged.size());
    for (const auto& [mon, c] : merged) terms_.push_back({mon, c});
}

Complex HomPoly::coeff(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mon == m) return t.coeff;
    return 0.0;
}

Complex HomPoly::eval(const Vec3& v) const {
    Complex acc = 0.0;
    for (const auto& t : terms_) acc += t.coeff * ipow(v[0], t.mon.x) * ipow(v[1], t.mon.y) * ipow(v[2], t.mon.z);
    return acc;
}

double HomPoly::max_coeff_abs() const {
    double best = 0.0;
    for (const auto& t : terms_) best = std::max(best, std::abs(t.coeff));
    return best;
}

HomPoly HomPoly::partial(int var) const {
    if (degree_ == 0) return HomPoly(0, {});
    TermMap out;
    for (const auto& t : terms_) {
        int e = t.mon[var];
        if (e == 0) continue;
        Monomial m = t.mon;
        (var == 0 ? m.x : var == 1 ? m.y : m.z) -= 1;
        add_term(out, m, static_cast<double>(e) * t.coeff);
    }
    return from_map(degree_ - 1, out);
}

HomPoly HomPoly::normalized() const {
    if (terms_.empty()) return *this;
    std::size_t k = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (std::abs(terms_[i].coeff) > best) { best = std::abs(terms_[i].coeff); k = i; }
    return (1.0 / terms_[k].coeff) * (*this);
}

HomPoly HomPoly::pruned(double rel_tol) const {
    double cut = rel_tol * max_coeff_abs();
    std::vector<Term> keep;
    for (const auto& t : terms_)
        if (std::abs(t.coeff) > cut) keep.push_back(t);
    return HomPoly(degree_, std::move(keep));
}

bool HomPoly::proportional_to(const HomPoly& other, double tol) const {
    if (degree_ != other.degree_) return false;
    return align_scale(*this, other).residual <= tol;
}

HomPoly operator+(const HomPoly& a, const HomPoly& b) {
    if (a.degree_ != b.degree_) throw Error(Errc::invalid_input, "degree mismatch in polynomial sum");
    TermMap out;
    for (const auto& t : a.terms_) add_term(out, t.mon, t.coeff);
    for (const auto& t : b.terms_) add_term(out, t.mon, t.coeff);
    return from_map(a.degree_, out);
}

HomPoly operator-(const HomPoly& a, const HomPoly& b) { return a + (-1.0) * b; }

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    TermMap out;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_)
            add_term(out, {s.mon.x + t.mon.x, s.mon.y + t.mon.y, s.mon.z + t.mon.z}, s.coeff * t.coeff);
    return from_map(a.degree_ + b.degree_, out);
}

HomPoly operator*(Complex c, const HomPoly& a) {
    TermMap out;
    if (c != 0.0)
        for (const auto& t : a.terms_) out.emplace(t.mon, c * t.coeff);
    return from_map(a.degree_, out);
}

std::string HomPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    auto var = [](int v) { return v == 0 ? 'x' : (v == 1 ? 'y' : 'z'); };
    bool first = true;
    // display with x-first dominance
    std::vector<Term> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
        return std::tuple(-a.mon.x, -a.mon.y, -a.mon.z) < std::tuple(-b.mon.x, -b.mon.y, -b.mon.z);
    });
    for (const auto& t : sorted) {
        Complex c = t.coeff;
        if (!first) os << " + ";
        first = false;
        if (c.imag() == 0.0) os << c.real();
        else os << "(" << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i)";
        for (int v = 0; v < 3; ++v) {
            int e = t.mon[v];
            if (e == 0) continue;
            os << "*" << var(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

HomPoly make_poly(std::initializer_list<std::pair<Monomial, Complex>> terms) {
    int deg = 0;
    for (const auto& [m, c] : terms) deg = std::max(deg, m.degree());
    std::vector<Term> t;
    for (const auto& [m, c] : terms) t.push_back({m, c});
    return HomPoly(deg, std::move(t));
}

HomPoly pullback(const HomPoly& f, const Mat3& g) {
    // linear forms replacing each variable: row r of g
    std::array<HomPoly, 3> forms = {
        HomPoly(1, {{{1, 0, 0}, g(0, 0)}, {{0, 1, 0}, g(0, 1)}, {{0, 0, 1}, g(0, 2)}}),
        HomPoly(1, {{{1, 0, 0}, g(1, 0)}, {{0, 1, 0}, g(1, 1)}, {{0, 0, 1}, g(1, 2)}}),
        HomPoly(1, {{{1, 0, 0}, g(2, 0)}, {{0, 1, 0}, g(2, 1)}, {{0, 0, 1}, g(2, 2)}}),
    };
    // cache powers up to the needed exponent
    std::array<std::vector<HomPoly>, 3> powers;
    for (int v = 0; v < 3; ++v) powers[static_cast<std::size_t>(v)].push_back(HomPoly(0, {{{0, 0, 0}, 1.0}}));
    auto power = [&](int v, int e) -> const HomPoly& {
        auto& cache = powers[static_cast<std::size_t>(v)];
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * forms[static_cast<std::size_t>(v)]);
        return cache[static_cast<std::size_t>(e)];
    };

    HomPoly acc(f.degree(), {});
    for (const auto& t : f.terms()) {
        HomPoly term = t.coeff * power(0, t.mon.x);
        term = term * power(1, t.mon.y);
        term = term * power(2, t.mon.z);
        acc = acc + term;
    }
    return acc;
}

PolyAlignment align_scale(const HomPoly& f, const HomPoly& g) {
    // Hermitian least squares over the union of supports
    std::map<Monomial, std::pair<Complex, Complex>> joint;
    for (const auto& t : f.terms()) joint[t.mon].first = t.coeff;
    for (const auto& t : g.terms()) joint[t.mon].second = t.coeff;
    Complex ff = 0.0, fg = 0.0;
    double gg = 0.0;
    for (const auto& [m, fgpair] : joint) {
        ff += std::conj(fgpair.first) * fgpair.first;
        fg += std::conj(fgpair.first) * fgpair.second;
        gg += std::norm(fgpair.second);
    }
    if (gg == 0.0) return {0.0, 0.0};
    if (std::abs(ff) == 0.0) return {0.0, 1.0};
    Complex lambda = fg / ff;
    double err = 0.0;
    for (const auto& [m, fgpair] : joint) err += std::norm(fgpair.second - lambda * fgpair.first);
    return {lambda, std::sqrt(err / gg)};
}

Mat3 conic_matrix(const HomPoly& f) {
    if (f.degree() != 2) throw Error(Errc::invalid_input, "conic matrix requires a degree-2 polynomial");
    Mat3 m;
    m(0, 0) = f.coeff({2, 0, 0});
    m(1, 1) = f.coeff({0, 2, 0});
    m(2, 2) = f.coeff({0, 0, 2});
    m(0, 1) = m(1, 0) = 0.5 * f.coeff({1, 1, 0});
    m(0, 2) = m(2, 0) = 0.5 * f.coeff({1, 0, 1});
    m(1, 2) = m(2, 1) = 0.5 * f.coeff({0, 1, 1});
    return m;
}

HomPoly conic_poly(const Mat3& m, int) {
    return HomPoly(2, {{{2, 0, 0}, m(0, 0)},
                       {{0, 2, 0}, m(1, 1)},
                       {{0, 0, 2}, m(2, 2)},
                       {{1, 1, 0}, m(0, 1) + m(1, 0)},
                       {{1, 0, 1}, m(0, 2) + m(2, 0)},
                       {{0, 1, 1}, m(1, 2) + m(2, 1)}});
}

HomPoly hessian_determinant(const HomPoly& f) {
    if (f.degree() < 2) throw Error(Errc::invalid_input, "Hessian requires degree >= 2");
    std::array<std::array<HomPoly, 3>, 3> h = {{{f.partial(0).partial(0), f.partial(0).partial(1), f.partial(0).partial(2)},
                                                {f.partial(1).partial(0), f.partial(1).partial(1), f.partial(1).partial(2)},
                                                {f.partial(2).partial(0), f.partial(2).partial(1), f.partial(2).partial(2)}}};
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return h[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c0)] * h[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)] -
               h[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c1)] * h[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c0)];
    };
    return h[0][0] * minor2(1, 2, 1, 2) - h[0][1] * minor2(1, 2, 0, 2) + h[0][2] * minor2(1, 2, 0, 1);
}

BinaryForm bf_mul(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

BinaryForm bf_pow(const BinaryForm& a, int e) {
    BinaryForm r{1.0};
    for (int i = 0; i < e; ++i) r = bf_mul(r, a);
    return r;
}

Complex bf_eval(const BinaryForm& f, Complex s, Complex t) {
    const int d = static_cast<int>(f.size()) - 1;
    Complex acc = 0.0;
    for (int k = 0; k <= d; ++k) acc += f[static_cast<std::size_t>(k)] * ipow(s, d - k) * ipow(t, k);
    return acc;
}

BinaryForm bf_derivative_t(const BinaryForm& f) {
    if (f.size() <= 1) return BinaryForm{0.0};
    BinaryForm r(f.size() - 1, 0.0);
    for (std::size_t k = 1; k < f.size(); ++k) r[k - 1] = static_cast<double>(k) * f[k];
    return r;
}

BinaryForm restrict_to_span(const HomPoly& f, const Vec3& u1, const Vec3& u2) {
    const int n = f.degree();
    BinaryForm acc(static_cast<std::size_t>(n) + 1, 0.0);
    for (const auto& t : f.terms()) {
        BinaryForm prod{t.coeff};
        for (int v = 0; v < 3; ++v) {
            int e = t.mon[v];
            if (e == 0) continue;
            prod = bf_mul(prod, bf_pow(BinaryForm{u1[static_cast<std::size_t>(v)], u2[static_cast<std::size_t>(v)]}, e));
        }
        prod.resize(static_cast<std::size_t>(n) + 1, 0.0);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += prod[k];
    }
    return acc;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && coeffs[static_cast<std::size_t>(deg)] == 0.0) --deg;
    if (deg <= 0) return {};
    if (deg == 1) return {-coeffs[0] / coeffs[1]};

    const Complex lead = coeffs[static_cast<std::size_t>(deg)];
    double bound = 0.0;
    for (int k = 0; k < deg; ++k) bound = std::max(bound, std::abs(coeffs[static_cast<std::size_t>(k)] / lead));
    const double radius = 1.0 + bound;

    std::vector<Complex> z(static_cast<std::size_t>(deg));
    const Complex seed(0.4, 0.9); // standard non-symmetric starting spiral
    Complex w = 1.0;
    for (auto& zi : z) { w *= seed; zi = radius * w; }

    auto eval = [&](Complex t) {
        Complex acc = 0.0;
        for (int k = deg; k >= 0; --k) acc = acc * t + coeffs[static_cast<std::size_t>(k)];
        return acc;
    };

    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            Complex denom = lead;
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            if (std::abs(denom) < 1e-300) continue;
            Complex delta = eval(z[static_cast<std::size_t>(i)]) / denom;
            z[static_cast<std::size_t>(i)] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14 * radius) break;
    }
    return z;
}

namespace {
Complex eval_ascending(const std::vector<Complex>& coeffs, Complex t) {
    Complex acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
}
} // namespace

/// Roots of a univariate polynomial clustered multiplicity-aware: the cluster
/// radius per root is estimated from its Newton correction |p/p'|, which is of
/// the order of the splinter radius at a multiple root and ~eps at a simple
/// one. Cluster centroids of splintered multiple roots are first-order
/// accurate, unlike the individual roots.
std::vector<RootCluster> adaptive_root_clusters(const std::vector<Complex>& coeffs, double min_radius) {
    std::vector<Complex> roots = poly_roots(coeffs);
    const std::size_t n = roots.size();
    if (n == 0) return {};

    std::vector<Complex> dcoeffs(coeffs.size() > 1 ? coeffs.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < coeffs.size(); ++k) dcoeffs[k - 1] = static_cast<double>(k) * coeffs[k];

    // the roots are near-exact roots of the *held* coefficients, so their
    // uncertainty w.r.t. the underlying exact polynomial is the coefficient
    // noise amplified by 1/|p'|; at a splintered multiple root this reproduces
    // the splinter radius
    const double noise_rel = 1e-12;
    std::vector<double> corr(n);
    for (std::size_t i = 0; i < n; ++i) {
        double basis = 0.0, zpow = 1.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) { basis += std::abs(coeffs[k]) * zpow; zpow *= std::abs(roots[i]); }
        Complex p = eval_ascending(coeffs, roots[i]);
        Complex dp = eval_ascending(dcoeffs, roots[i]);
        double err = (std::abs(dp) > 1e-300) ? (noise_rel * basis + std::abs(p)) / std::abs(dp)
                                             : 0.05 * (1.0 + std::abs(roots[i]));
        corr[i] = std::min(err, 0.05 * (1.0 + std::abs(roots[i])));
    }

    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double radius = 6.0 * (corr[i] + corr[j]) + 1e-9 * (1.0 + std::abs(roots[i]));
            // never chain across a sizable fraction of the root scale; an
            // under-merged multiple root only splits into centroids that the
            // caller verifies anyway, while an over-merge can swallow a
            // genuinely separate root
            radius = std::max(min_radius, std::min(radius, 0.02 * (1.0 + std::abs(roots[i]))));
            if (std::abs(roots[i] - roots[j]) <= radius) {
                std::size_t from = label[j], to = label[i];
                if (from == to) continue;
                for (auto& l : label)
                    if (l == from) l = to;
            }
        }
    std::vector<RootCluster> outc;
    for (std::size_t id = 0; id < n; ++id) {
        Complex sum = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] == id) { sum += roots[i]; ++count; }
        if (count) outc.push_back({sum / static_cast<double>(count), count});
    }
    return outc;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double radius) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= radius) {
                std::size_t from = label[j], to = label[i];
                if (from == to) continue;
                for (auto& l : label)
                    if (l == from) l = to;
            }
    std::vector<RootCluster> out;
    for (std::size_t id = 0; id < n; ++id) {
        Complex sum = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (label[i] == id) { sum += roots[i]; ++count; }
        if (count) out.push_back({sum / static_cast<double>(count), count});
    }
    return out;
}

BinaryRoots binary_form_roots(const BinaryForm& f, double cluster_radius, double zero_tol) {
    const int n = static_cast<int>(f.size()) - 1;
    double scale = 0.0;
    for (auto c : f) scale = std::max(scale, std::abs(c));
    if (scale == 0.0 || n < 0) throw Error(Errc::line_is_component, "restriction vanishes identically");

    int deg = n;
    while (deg > 0 && std::abs(f[static_cast<std::size_t>(deg)]) <= zero_tol * scale) --deg;
    if (deg == 0 && std::abs(f[0]) <= zero_tol * scale)
        throw Error(Errc::line_is_component, "restriction vanishes identically");

    BinaryRoots out;
    out.infinity_multiplicity = n - deg;
    std::vector<Complex> trimmed(f.begin(), f.begin() + deg + 1);
    out.finite = adaptive_root_clusters(trimmed, cluster_radius);
    return out;
}

} // namespace exset
