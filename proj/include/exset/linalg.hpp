#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "exset/errors.hpp"

namespace exset {

using Complex = std::complex<double>;

/// Single tolerance used by default for all rank / equality / unitarity
/// decisions. Overridable per call.
inline constexpr double kDefaultTol = 1e-9;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

using Vec3 = std::array<Complex, 3>;
using Vec2 = std::array<Complex, 2>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(Complex c, const Vec3& v) { return {c * v[0], c * v[1], c * v[2]}; }

/// Bilinear pairing (no conjugation); this is the incidence pairing between
/// points and lines and the one cross products are orthogonal under.
inline Complex bdot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Hermitian inner product, used for norms and scale alignment.
inline Complex hdot(const Vec3& a, const Vec3& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

inline double norm2(const Vec3& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline int argmax_abs(const Vec3& v) {
    int k = 0;
    double best = std::abs(v[0]);
    for (int i = 1; i < 3; ++i)
        if (std::abs(v[i]) > best) { best = std::abs(v[i]); k = i; }
    return k;
}

struct Mat3 {
    std::array<Complex, 9> a{};

    Complex& operator()(int r, int c) { return a[static_cast<std::size_t>(3 * r + c)]; }
    const Complex& operator()(int r, int c) const { return a[static_cast<std::size_t>(3 * r + c)]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
    static Mat3 zero() { return Mat3{}; }
    static Mat3 diagonal(Complex d0, Complex d1, Complex d2) {
        Mat3 m;
        m(0, 0) = d0; m(1, 1) = d1; m(2, 2) = d2;
        return m;
    }
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        Mat3 m;
        for (int c = 0; c < 3; ++c) { m(0, c) = r0[c]; m(1, c) = r1[c]; m(2, c) = r2[c]; }
        return m;
    }
    static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 m;
        for (int r = 0; r < 3; ++r) { m(r, 0) = c0[r]; m(r, 1) = c1[r]; m(r, 2) = c2[r]; }
        return m;
    }

    Vec3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }
    Vec3 col(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
};

inline Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}
inline Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}
inline Mat3 operator*(Complex c, const Mat3& x) {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.a[i] = c * x.a[i];
    return r;
}
inline Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}
inline Vec3 operator*(const Mat3& m, const Vec3& v) {
    return {bdot(m.row(0), v), bdot(m.row(1), v), bdot(m.row(2), v)};
}

inline Mat3 transpose(const Mat3& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
    return r;
}

inline Complex trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

inline Complex det(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
         - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
         + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Sum of principal 2x2 minors (second elementary symmetric function of the
/// eigenvalues).
inline Complex second_invariant(const Mat3& m) {
    return (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
         + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0))
         + (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

inline Mat3 adjugate(const Mat3& m) {
    Mat3 r;
    r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return r;
}

inline Mat3 inverse(const Mat3& m) {
    Complex d = det(m);
    if (std::abs(d) == 0.0) throw Error(Errc::degenerate, "matrix is singular");
    return (1.0 / d) * adjugate(m);
}

inline double max_abs(const Mat3& m) {
    double best = 0.0;
    for (const auto& z : m.a) best = std::max(best, std::abs(z));
    return best;
}
inline double max_abs(const Vec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

inline bool is_finite(const Mat3& m) {
    for (const auto& z : m.a)
        if (!is_finite(z)) return false;
    return true;
}
inline bool is_finite(const Vec3& v) { return is_finite(v[0]) && is_finite(v[1]) && is_finite(v[2]); }

/// Scale so that the first entry of largest modulus becomes exactly 1.
Vec3 canonicalized(const Vec3& v);
Mat3 canonicalized(const Mat3& m);

/// Relative distance between v and the best scalar multiple of u
/// (0 when u and v are proportional). Returns 1 for u == 0, v != 0.
double proportionality_residual(const Complex* u, const Complex* v, std::size_t n);
inline double proportionality_residual(const Vec3& u, const Vec3& v) {
    return proportionality_residual(u.data(), v.data(), 3);
}
inline double proportionality_residual(const Mat3& u, const Mat3& v) {
    return proportionality_residual(u.a.data(), v.a.data(), 9);
}

struct Mat2 {
    std::array<Complex, 4> a{}; // row major: a b / c d

    Complex& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }
    static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    r(0, 0) = x(0, 0) * y(0, 0) + x(0, 1) * y(1, 0);
    r(0, 1) = x(0, 0) * y(0, 1) + x(0, 1) * y(1, 1);
    r(1, 0) = x(1, 0) * y(0, 0) + x(1, 1) * y(1, 0);
    r(1, 1) = x(1, 0) * y(0, 1) + x(1, 1) * y(1, 1);
    return r;
}
inline Complex det(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// --- small dense routines (row-major vector-of-rows) -----------------------

using DenseMatrix = std::vector<std::vector<Complex>>;

Complex det_dense(DenseMatrix m);

/// Solve a square system by Gaussian elimination with partial pivoting.
std::vector<Complex> solve_dense(DenseMatrix a, std::vector<Complex> b);

struct NullSpaceResult {
    int rank = 0;
    std::vector<std::vector<Complex>> basis; // one vector per free column
};

/// Numerical rank and null-space basis via full-pivot elimination; pivots with
/// modulus <= threshold count as zero.
NullSpaceResult null_space_dense(DenseMatrix a, double threshold);

int rank_with_tol(const Mat3& m, double threshold);
std::vector<Vec3> null_space(const Mat3& m, double threshold);

} // namespace exset
