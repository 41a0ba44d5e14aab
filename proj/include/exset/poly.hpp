#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "exset/linalg.hpp"

namespace exset {

struct Monomial {
    int x = 0, y = 0, z = 0;

    int degree() const { return x + y + z; }
    int operator[](int var) const { return var == 0 ? x : (var == 1 ? y : z); }
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct Term {
    Monomial mon;
    Complex coeff;
};

/// Homogeneous polynomial in x, y, z with complex coefficients. Terms are kept
/// sorted by monomial; exact-zero coefficients are dropped. The zero
/// polynomial (no terms) can arise from arithmetic; curve-level entry points
/// reject it.
class HomPoly {
public:
    HomPoly(int degree, std::vector<Term> terms);

    int degree() const { return degree_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Complex coeff(const Monomial& m) const;
    Complex eval(const Vec3& v) const;
    double max_coeff_abs() const;

    HomPoly partial(int var) const;

    /// Largest-modulus coefficient scaled to 1 (ties: first in term order).
    HomPoly normalized() const;

    /// Drop terms whose coefficients are below rel_tol times the largest one.
    HomPoly pruned(double rel_tol) const;

    bool proportional_to(const HomPoly& other, double tol = kDefaultTol) const;

    friend HomPoly operator+(const HomPoly& a, const HomPoly& b);
    friend HomPoly operator-(const HomPoly& a, const HomPoly& b);
    friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
    friend HomPoly operator*(Complex c, const HomPoly& a);

    std::string to_string() const;

private:
    int degree_;
    std::vector<Term> terms_;
};

/// Shorthand for building a polynomial from (i, j, k, coefficient) tuples.
HomPoly make_poly(std::initializer_list<std::pair<Monomial, Complex>> terms);

/// F(g . X) expanded as a polynomial of the same degree; realizes the action
/// of transforms on curves by substitution.
HomPoly pullback(const HomPoly& f, const Mat3& g);

/// Residual and aligned scale between g and lambda * f over the union of
/// supports; lambda minimizes the coefficient distance.
struct PolyAlignment {
    Complex scale;
    double residual; // relative to |g|
};
PolyAlignment align_scale(const HomPoly& f, const HomPoly& g);

/// 3x3 symmetric coefficient matrix of a degree-2 polynomial (x^T M x = F).
Mat3 conic_matrix(const HomPoly& f);
HomPoly conic_poly(const Mat3& m, int var_base = 0);

/// Determinant of the Hessian matrix of second partials, degree 3(n-2).
HomPoly hessian_determinant(const HomPoly& f);

// --- binary forms and univariate roots --------------------------------------

/// Homogeneous binary form in (s, t); index k holds the coefficient of
/// s^(d-k) t^k where d = size - 1.
using BinaryForm = std::vector<Complex>;

BinaryForm bf_mul(const BinaryForm& a, const BinaryForm& b);
BinaryForm bf_pow(const BinaryForm& a, int e);
Complex bf_eval(const BinaryForm& f, Complex s, Complex t);
BinaryForm bf_derivative_t(const BinaryForm& f);

/// Restriction of F to the line {s u1 + t u2}; a binary form of degree n.
BinaryForm restrict_to_span(const HomPoly& f, const Vec3& u1, const Vec3& u2);

/// All complex roots of a univariate polynomial (coefficients by ascending
/// power), via Durand-Kerner with deterministic starting points. The leading
/// coefficient is the caller's business; trailing/leading trimming is not
/// performed here.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

struct RootCluster {
    Complex value;
    int multiplicity;
};
/// Single-linkage clustering with the given radius; representatives are
/// cluster means.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double radius);

/// Multiplicity-aware clustering of the roots of a univariate polynomial: the
/// per-root radius is the coefficient-noise error estimate (which reproduces
/// the splinter radius at multiple roots), floored at min_radius.
std::vector<RootCluster> adaptive_root_clusters(const std::vector<Complex>& coeffs, double min_radius = 1e-9);

struct BinaryRoots {
    std::vector<RootCluster> finite; // roots [1 : t]
    int infinity_multiplicity = 0;   // multiplicity of [0 : 1]
};
/// Projective roots of a binary form with multiplicities; degree drop at the
/// leading coefficient becomes multiplicity at [0:1]. Throws LineIsComponent
/// when the form is numerically zero.
BinaryRoots binary_form_roots(const BinaryForm& f, double cluster_radius = 1e-6, double zero_tol = 1e-12);

} // namespace exset
