#include "exset/linalg.hpp"

#include <algorithm>

namespace exset {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_input: return "InvalidInput";
        case Errc::equal_points: return "EqualPoints";
        case Errc::ill_conditioned: return "IllConditioned";
        case Errc::non_convergent: return "NonConvergent";
        case Errc::not_fixed: return "NotFixed";
        case Errc::point_on_line: return "PointOnLine";
        case Errc::repeated_factor: return "RepeatedFactor";
        case Errc::degree_unsupported: return "DegreeUnsupported";
        case Errc::line_is_component: return "LineIsComponent";
        case Errc::negative_genus: return "NegativeGenus";
        case Errc::inconsistent_invariants: return "Inconsistent";
        case Errc::degenerate: return "Degenerate";
        case Errc::unsupported: return "Unsupported";
        case Errc::zero_parameter: return "ZeroParameter";
        case Errc::not_diagonal: return "NotDiagonal";
        case Errc::wrong_type: return "WrongType";
        case Errc::frame_degenerate: return "FrameDegenerate";
        case Errc::not_invariant: return "NotInvariant";
        case Errc::reducible: return "Reducible";
        case Errc::duplicate_line: return "DuplicateLine";
        case Errc::parse_error: return "ParseError";
        case Errc::missing_label: return "MissingLabel";
    }
    return "Error";
}

Vec3 canonicalized(const Vec3& v) {
    int k = argmax_abs(v);
    if (std::abs(v[k]) == 0.0) throw Error(Errc::invalid_input, "zero vector has no canonical representative");
    Complex s = v[k];
    return {v[0] / s, v[1] / s, v[2] / s};
}

Mat3 canonicalized(const Mat3& m) {
    std::size_t k = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < 9; ++i)
        if (std::abs(m.a[i]) > best) { best = std::abs(m.a[i]); k = i; }
    if (best == 0.0) throw Error(Errc::invalid_input, "zero matrix has no canonical representative");
    return (1.0 / m.a[k]) * m;
}

double proportionality_residual(const Complex* u, const Complex* v, std::size_t n) {
    Complex uu = 0.0, uv = 0.0;
    double vv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        uu += std::conj(u[i]) * u[i];
        uv += std::conj(u[i]) * v[i];
        vv += std::norm(v[i]);
    }
    if (vv == 0.0) return 0.0;
    if (std::abs(uu) == 0.0) return 1.0;
    Complex lambda = uv / uu;
    double err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) err2 += std::norm(v[i] - lambda * u[i]);
    return std::sqrt(err2 / vv);
}

Complex det_dense(DenseMatrix m) {
    const std::size_t n = m.size();
    Complex d = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) == 0.0) return 0.0;
        if (piv != col) { std::swap(m[piv], m[col]); d = -d; }
        d *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Complex f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return d;
}

std::vector<Complex> solve_dense(DenseMatrix a, std::vector<Complex> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw Error(Errc::invalid_input, "solve_dense: dimension mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) == 0.0) throw Error(Errc::degenerate, "solve_dense: singular system");
        if (piv != col) { std::swap(a[piv], a[col]); std::swap(b[piv], b[col]); }
        for (std::size_t r = col + 1; r < n; ++r) {
            Complex f = a[r][col] / a[col][col];
            b[r] -= f * b[col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

NullSpaceResult null_space_dense(DenseMatrix a, double threshold) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> colperm(cols);
    for (std::size_t i = 0; i < cols; ++i) colperm[i] = i;

    std::size_t rank = 0;
    for (; rank < std::min(rows, cols); ++rank) {
        std::size_t pr = rank, pc = rank;
        double best = 0.0;
        for (std::size_t r = rank; r < rows; ++r)
            for (std::size_t c = rank; c < cols; ++c)
                if (std::abs(a[r][c]) > best) { best = std::abs(a[r][c]); pr = r; pc = c; }
        if (best <= threshold) break;
        std::swap(a[pr], a[rank]);
        if (pc != rank) {
            for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][pc], a[r][rank]);
            std::swap(colperm[pc], colperm[rank]);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Complex f = a[r][rank] / a[rank][rank];
            if (f == 0.0) continue;
            for (std::size_t c = rank; c < cols; ++c) a[r][c] -= f * a[rank][c];
        }
    }

    NullSpaceResult out;
    out.rank = static_cast<int>(rank);
    for (std::size_t free = rank; free < cols; ++free) {
        std::vector<Complex> v(cols, 0.0);
        v[colperm[free]] = 1.0;
        for (std::size_t p = 0; p < rank; ++p) v[colperm[p]] = -a[p][free] / a[p][p];
        out.basis.push_back(std::move(v));
    }
    return out;
}

static DenseMatrix to_dense(const Mat3& m) {
    DenseMatrix d(3, std::vector<Complex>(3));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    return d;
}

int rank_with_tol(const Mat3& m, double threshold) {
    return null_space_dense(to_dense(m), threshold).rank;
}

std::vector<Vec3> null_space(const Mat3& m, double threshold) {
    auto ns = null_space_dense(to_dense(m), threshold);
    std::vector<Vec3> out;
    for (const auto& v : ns.basis) out.push_back(Vec3{v[0], v[1], v[2]});
    return out;
}

} // namespace exset
