#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

namespace lrl {

/// Row-major 2x2 real matrix.
struct Mat2 {
    double a00 = 0.0, a01 = 0.0;
    double a10 = 0.0, a11 = 0.0;

    constexpr double trace() const noexcept { return a00 + a11; }
    constexpr double det() const noexcept { return a00 * a11 - a01 * a10; }

    friend constexpr Mat2 operator*(const Mat2& l, const Mat2& r) noexcept
    {
        return {l.a00 * r.a00 + l.a01 * r.a10, l.a00 * r.a01 + l.a01 * r.a11,
                l.a10 * r.a00 + l.a11 * r.a10, l.a10 * r.a01 + l.a11 * r.a11};
    }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

inline constexpr Mat2 identity2() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

/// Roots of  lambda^2 - t lambda + d = 0.  For real roots the larger one is
/// computed first and the smaller recovered from d / lambda to avoid
/// cancellation.
inline std::pair<std::complex<double>, std::complex<double>> quadratic_eigenvalues(double t, double d)
{
    const double half = 0.5 * t;
    const double disc = half * half - d;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        const double big = half >= 0.0 ? half + root : half - root;
        const double small = big != 0.0 ? d / big : 0.0;
        if (std::abs(big) >= std::abs(small))
            return {big, small};
        return {small, big};
    }
    const double im = std::sqrt(-disc);
    return {{half, im}, {half, -im}};
}

inline std::pair<std::complex<double>, std::complex<double>> eigenvalues(const Mat2& m)
{
    return quadratic_eigenvalues(m.trace(), m.det());
}

/// Unit eigenvector for a real eigenvalue `lambda` of `m`.
inline std::array<double, 2> eigenvector(const Mat2& m, double lambda)
{
    // Rows of (m - lambda I) are orthogonal to the eigenvector; use the longer.
    const double r0x = m.a00 - lambda, r0y = m.a01;
    const double r1x = m.a10, r1y = m.a11 - lambda;
    const double n0 = std::hypot(r0x, r0y), n1 = std::hypot(r1x, r1y);
    double vx, vy;
    if (n0 == 0.0 && n1 == 0.0) {
        vx = 1.0;
        vy = 0.0;
    } else if (n0 >= n1) {
        vx = -r0y;
        vy = r0x;
    } else {
        vx = -r1y;
        vy = r1x;
    }
    const double n = std::hypot(vx, vy);
    return {vx / n, vy / n};
}

} // namespace lrl
