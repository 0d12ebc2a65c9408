#include "sirsat/numeric.hpp"

namespace sirsat {

QuadRoots solve_quadratic(double a, double b, double c) {
    QuadRoots out;
    out.discriminant = b * b - 4.0 * a * c;
    if (out.discriminant < 0.0) return out;
    out.real = true;
    const double sq = std::sqrt(out.discriminant);
    if (b == 0.0) {
        const double r = sq / (2.0 * a);
        out.lo = -r;
        out.hi = r;
    } else {
        const double qq = -0.5 * (b + std::copysign(sq, b));
        const double r1 = qq / a;
        const double r2 = c / qq;
        out.lo = std::min(r1, r2);
        out.hi = std::max(r1, r2);
    }
    return out;
}

std::array<std::complex<double>, 2> char_roots(double w, double u) {
    const double disc = w * w - 4.0 * u;
    if (disc >= 0.0) {
        const QuadRoots r = solve_quadratic(1.0, w, u);
        return {std::complex<double>(r.lo, 0.0), std::complex<double>(r.hi, 0.0)};
    }
    const double re = -0.5 * w;
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(re, -im), std::complex<double>(re, im)};
}

std::array<std::complex<double>, 2> eigenvalues(const Matrix2& m) {
    // (m00-m11)^2 + 4 m01 m10 equals trace^2 - 4 det without the cancellation.
    const double half_sum = 0.5 * (m.m00 + m.m11);
    const double half_diff = 0.5 * (m.m00 - m.m11);
    const double disc = half_diff * half_diff + m.m01 * m.m10;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        return {std::complex<double>(half_sum - sq, 0.0),
                std::complex<double>(half_sum + sq, 0.0)};
    }
    const double im = std::sqrt(-disc);
    return {std::complex<double>(half_sum, -im), std::complex<double>(half_sum, im)};
}

}  // namespace sirsat
