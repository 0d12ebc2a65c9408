#pragma once

#include <array>
#include <complex>
#include <cmath>

namespace sirsat {

// Relative tolerance used for all "is this quantity zero" decisions.  A value
// x assembled from terms of combined magnitude `scale` is treated as zero when
// |x| < kZeroBand * scale.
inline constexpr double kZeroBand = 1e-11;

inline bool within_band(double x, double scale) {
    return std::abs(x) < kZeroBand * scale;
}

// Sign with the zero band applied: -1, 0, +1.
inline int banded_sign(double x, double scale) {
    if (within_band(x, scale)) return 0;
    return x > 0 ? 1 : -1;
}

struct QuadRoots {
    double lo = 0.0;      // smaller root when real
    double hi = 0.0;      // larger root when real
    bool real = false;
    double discriminant = 0.0;
};

// Roots of a*x^2 + b*x + c with the cancellation-safe formula:
// q = -(b + sign(b) sqrt(disc))/2, roots q/a and c/q.
QuadRoots solve_quadratic(double a, double b, double c);

// Roots of the monic characteristic polynomial x^2 + W*x + U.
std::array<std::complex<double>, 2> char_roots(double w, double u);

struct Matrix2 {
    double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

    double trace() const { return m00 + m11; }
    double det() const { return m00 * m11 - m01 * m10; }
};

// Eigenvalues of a 2x2 matrix.  The discriminant is formed as
// (m00-m11)^2 + 4*m01*m10, which avoids the trace/det cancellation and is
// exact for triangular matrices.
std::array<std::complex<double>, 2> eigenvalues(const Matrix2& m);

inline double max_real_part(const std::array<std::complex<double>, 2>& ev) {
    return std::max(ev[0].real(), ev[1].real());
}

}  // namespace sirsat
