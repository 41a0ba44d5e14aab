#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exset/linalg.hpp"

namespace exset {

/// Point of the projective plane, stored as the canonical homogeneous
/// representative (entry of largest modulus scaled to 1).
class ProjPoint {
public:
    explicit ProjPoint(const Vec3& coords);

    const Vec3& coords() const { return c_; }
    bool same_as(const ProjPoint& other, double tol = kDefaultTol) const {
        return proportionality_residual(c_, other.c_) <= tol;
    }

private:
    Vec3 c_;
};

/// Line of the projective plane, stored by canonical dual coordinates.
class ProjLine {
public:
    explicit ProjLine(const Vec3& dual_coords);

    const Vec3& dual() const { return d_; }
    bool contains(const ProjPoint& p, double tol = kDefaultTol) const {
        return std::abs(bdot(d_, p.coords())) <= tol * (norm2(d_) * norm2(p.coords()));
    }
    bool same_as(const ProjLine& other, double tol = kDefaultTol) const {
        return proportionality_residual(d_, other.d_) <= tol;
    }

private:
    Vec3 d_;
};

/// Point of the projective line, canonical representative.
class P1Point {
public:
    explicit P1Point(const Vec2& coords);

    const Vec2& coords() const { return c_; }
    bool same_as(const P1Point& other, double tol = kDefaultTol) const {
        return proportionality_residual(c_.data(), other.c_.data(), 2) <= tol;
    }

private:
    Vec2 c_;
};

/// Class of an invertible 2x2 complex matrix up to scale, stored as the
/// determinant-1 lift (principal square root branch).
class MoebiusClass {
public:
    explicit MoebiusClass(const Mat2& m);

    const Mat2& lift() const { return m_; }
    MoebiusClass compose(const MoebiusClass& other) const { return MoebiusClass(m_ * other.m_); }
    P1Point apply(const P1Point& p) const;
    bool same_as(const MoebiusClass& other, double tol = kDefaultTol) const {
        return proportionality_residual(m_.a.data(), other.m_.a.data(), 4) <= tol;
    }

    static MoebiusClass identity() { return MoebiusClass(Mat2::identity()); }

private:
    Mat2 m_;
};

/// Element of PSL(3,C): stored as the determinant-1 lift obtained from the
/// principal cube root; the threefold ambiguity is absorbed by up-to-scale
/// equality.
class ProjTransform {
public:
    explicit ProjTransform(const Mat3& m);

    const Mat3& lift() const { return m_; }
    ProjTransform inverse() const;
    ProjTransform compose(const ProjTransform& other) const { return ProjTransform(m_ * other.m_); }
    bool same_as(const ProjTransform& other, double tol = kDefaultTol) const {
        return proportionality_residual(m_, other.m_) <= tol;
    }

    static ProjTransform identity() { return ProjTransform(Mat3::identity()); }

private:
    Mat3 m_;
};

/// Nonzero 3x3 matrix up to scale, possibly rank deficient. Stored with the
/// largest-modulus entry scaled to 1.
class PseudoProjMap {
public:
    explicit PseudoProjMap(const Mat3& m, double tol = kDefaultTol);

    const Mat3& rep() const { return m_; }
    int rank() const { return rank_; }
    bool same_as(const PseudoProjMap& other, double tol = kDefaultTol) const {
        return proportionality_residual(m_, other.m_) <= tol;
    }

private:
    Mat3 m_;
    int rank_;
};

struct EigenData {
    std::array<Complex, 3> eigenvalues; // det-1 lift, sorted: modulus desc, then argument desc in (-pi, pi]
    bool diagonalizable = false;
    std::vector<ProjPoint> basis; // eigenvectors, padded by generalized eigenvectors when defective
};

enum class ElementKind { Elliptic, Parabolic, Loxodromic };

const char* element_kind_name(ElementKind k);

struct ElementClass {
    ElementKind kind;
    EigenData eigen;
};

struct KernelLocus {
    enum class Kind { Empty, Point, Line } kind = Kind::Empty;
    std::optional<ProjPoint> point;
    std::optional<ProjLine> line;
};

ProjLine join(const ProjPoint& p, const ProjPoint& q, double tol = kDefaultTol);
ProjPoint meet(const ProjLine& l, const ProjLine& m, double tol = kDefaultTol);

ProjPoint apply(const ProjTransform& g, const ProjPoint& p);
/// Image of a line under the point map g (inverse-transpose action on duals).
ProjLine apply(const ProjTransform& g, const ProjLine& l);

/// Characteristic-polynomial roots of the det-1 lift (Cardano), cluster-aware
/// Newton refinement, diagonalizability via rank with tolerance.
EigenData eigen_analysis(const ProjTransform& g, double tol = kDefaultTol);

ElementClass classify_element(const ProjTransform& g, double tol = kDefaultTol);

/// Analytic limit of the power sequence g^n in pseudo-projective space.
/// Throws NonConvergent when distinct eigenvalues share the dominant modulus
/// on a diagonalizable element (limit phases never stabilize).
PseudoProjMap power_limit(const ProjTransform& g, double tol = kDefaultTol);

KernelLocus kernel(const PseudoProjMap& p, double tol = kDefaultTol);

/// Fractional-linear action induced on the line `screen` by central projection
/// from the g-fixed point `center`, in coordinates adapted to the screen.
MoebiusClass projection_morphism(const ProjTransform& g, const ProjPoint& center, const ProjLine& screen,
                                 double tol = kDefaultTol);

/// Basis of the screen line used by projection_morphism: two points spanning
/// it, chosen deterministically from the dual coordinates.
std::pair<Vec3, Vec3> line_span(const ProjLine& l);

} // namespace exset
