#pragma once

#include <random>

#include "exset/linalg.hpp"
#include "exset/projective.hpp"

namespace exset::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Complex random_unit_disc(std::mt19937_64& r) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(r), u(r)};
}

inline Complex random_phase(std::mt19937_64& r) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979323846);
    double t = u(r);
    return {std::cos(t), std::sin(t)};
}

inline Vec3 random_vec3(std::mt19937_64& r) {
    Vec3 v{random_unit_disc(r), random_unit_disc(r), random_unit_disc(r)};
    while (max_abs(v) < 0.2) v = {random_unit_disc(r), random_unit_disc(r), random_unit_disc(r)};
    return v;
}

/// Random invertible matrix with a mild condition bound, to keep conjugation
/// noise far below test tolerances.
inline Mat3 random_invertible(std::mt19937_64& r, double min_det = 0.15) {
    for (;;) {
        Mat3 m;
        for (auto& z : m.a) z = random_unit_disc(r);
        double scale = max_abs(m);
        if (scale < 0.3) continue;
        if (std::abs(det(m)) >= min_det * scale * scale * scale) return m;
    }
}

inline ProjTransform random_transform(std::mt19937_64& r) { return ProjTransform(random_invertible(r)); }

inline MoebiusClass random_moebius(std::mt19937_64& r) {
    for (;;) {
        Mat2 m{{random_unit_disc(r), random_unit_disc(r), random_unit_disc(r), random_unit_disc(r)}};
        double scale = 0.0;
        for (auto z : m.a) scale = std::max(scale, std::abs(z));
        if (scale < 0.3) continue;
        if (std::abs(det(m)) >= 0.15 * scale * scale) return MoebiusClass(m);
    }
}

} // namespace exset::testing
