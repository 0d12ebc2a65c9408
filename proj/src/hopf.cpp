#include "sirsat/hopf.hpp"

#include <cmath>
#include <sstream>

namespace sirsat {

namespace {

constexpr double kResidualBand = 1e-9;

struct E2Point {
    State e2;
    QuadraticCoeffs qc;
};

// E2 of the swept parameter set, or nullopt when it ceases to exist.
std::optional<E2Point> e2_at(const Params& p) {
    const QuadraticCoeffs qc = quadratic_coeffs(p);
    if (qc.discriminant < 0.0) return std::nullopt;
    const EndemicRoots roots = endemic_roots(qc);
    if (roots.i2 <= 0.0) return std::nullopt;
    return E2Point{State{s_of_i(p, roots.i2), roots.i2}, qc};
}

}  // namespace

const char* cycle_prediction_name(CyclePrediction c) {
    switch (c) {
        case CyclePrediction::StableOrbit: return "stable_orbit";
        case CyclePrediction::UnstableOrbit: return "unstable_orbit";
        case CyclePrediction::Inconclusive: return "inconclusive";
    }
    return "?";
}

ShiftedSystem shifted_system(const Params& p, const State& e2) {
    const double b = p.b, m = p.m, g = p.gamma, b2 = p.beta2;
    const double pd = p.p * p.delta;
    const double b1 = p.beta, a1 = p.alpha, a2 = p.alpha2;
    const double S2 = e2.S, I2 = e2.I;

    ShiftedSystem s;
    s.S2 = S2;
    s.I2 = I2;
    s.a11 = -b - b1 * I2 - b * a1 * I2;
    s.a12 = -2.0 * b * m * a1 * I2 + b * m * a1 - b * a1 * S2 + 2.0 * pd * a1 * I2 + pd -
            b * m - b1 * S2;
    s.c1 = -b * a1 - b1;
    s.c2 = (pd - b * m) * a1;
    s.a21 = b1 * I2 * (1.0 + a2 * I2);
    s.a22 = -2.0 * pd * a1 * I2 + 2.0 * b1 * a2 * S2 * I2 - 3.0 * pd * a1 * a2 * I2 * I2 -
            2.0 * g * a1 * I2 - 2.0 * g * a2 * I2 - 2.0 * pd * a2 * I2 - 2.0 * b2 * a1 * I2 -
            3.0 * g * a1 * a2 * I2 * I2 - g - pd - b2 + b1 * S2;
    s.c3 = 2.0 * b1 * a2 * I2 + b1;
    // x y^2 coefficient of the y' numerator (pinned by the Taylor oracle in
    // the tests).
    s.c4 = b1 * a2;
    s.c5 = -3.0 * pd * a1 * a2 * I2 - 3.0 * g * a1 * a2 * I2 - pd * a1 + b1 * a2 * S2 -
           g * a1 - g * a2 - pd * a2 - b2 * a1;
    s.c6 = -(pd + g) * a1 * a2;

    s.c7 = -(b1 * S2 * I2 - b * m * a1 * I2 + b * S2 - pd * I2 - pd * a1 * I2 * I2 +
             b * a1 * S2 * I2 + b * m * I2 - b * m + b * m * a1 * I2 * I2);
    const double c7_scale = b1 * S2 * I2 + b * m * a1 * I2 + b * S2 + pd * I2 +
                            pd * a1 * I2 * I2 + b * a1 * S2 * I2 + b * m * I2 + b * m +
                            b * m * a1 * I2 * I2;
    const double c8_bracket = pd * a1 * I2 + pd + pd * a2 * I2 + g * a2 * I2 -
                              b1 * a2 * S2 * I2 + g * a1 * I2 + b2 * a1 * I2 + g +
                              g * a1 * a2 * I2 * I2 - b1 * S2 + b2 + pd * a1 * a2 * I2 * I2;
    s.c8 = -I2 * c8_bracket;
    const double c8_scale = I2 * (pd * a1 * I2 + pd + pd * a2 * I2 + g * a2 * I2 +
                                  b1 * a2 * S2 * I2 + g * a1 * I2 + b2 * a1 * I2 + g +
                                  g * a1 * a2 * I2 * I2 + b1 * S2 + b2 +
                                  pd * a1 * a2 * I2 * I2);

    if (std::abs(s.c7) > kResidualBand * c7_scale || std::abs(s.c8) > kResidualBand * c8_scale) {
        std::ostringstream os;
        os << "shifted_system: (S2, I2) = (" << S2 << ", " << I2
           << ") is not an equilibrium (c7 = " << s.c7 << ", c8 = " << s.c8 << ")";
        throw EquilibriumResidualTooLarge(os.str());
    }
    return s;
}

Matrix2 ShiftedSystem::linear_part(const Params& p) const {
    const double u1 = 1.0 + p.alpha * I2;
    const double u2 = 1.0 + p.alpha2 * I2;
    Matrix2 m;
    m.m00 = a11 / u1;
    m.m01 = a12 / u1;
    m.m10 = a21 / (u1 * u2);
    m.m11 = a22 / (u1 * u2);
    return m;
}

State ShiftedSystem::eval(const Params& p, double x, double y) const {
    const double d1 = 1.0 + p.alpha * y + p.alpha * I2;
    const double d2 = 1.0 + p.alpha2 * y + p.alpha2 * I2;
    State out;
    out.S = (a11 * x + a12 * y + c1 * x * y + c2 * y * y) / d1;
    out.I = (a21 * x + a22 * y + c3 * x * y + c4 * x * y * y + c5 * y * y + c6 * y * y * y) /
            (d1 * d2);
    return out;
}

NormalForm normal_form(const Params& p, const State& e2) {
    NormalForm nf;
    nf.sys = shifted_system(p, e2);
    const double U = jacobian(p, e2).det();
    if (U <= 0.0) {
        std::ostringstream os;
        os << "normal_form requires det DF > 0 at E2, got " << U;
        throw NotAtHopfPoint(os.str());
    }
    nf.Lambda = std::sqrt(U);
    return nf;
}

double NormalForm::H1(const Params& p, double u, double v) const {
    const double a1 = p.alpha, I2 = sys.I2;
    const double u1 = 1.0 + a1 * I2;
    const double x = u;
    const double y = (Lambda * u1 * v - sys.a11 * u) / sys.a12;
    const double d1 = 1.0 + a1 * y + a1 * I2;
    // G1 = nonlinear remainder of the x' equation in shifted coordinates.
    return ((u1 * sys.c1 - sys.a11 * a1) * x * y + (sys.c2 * u1 - a1 * sys.a12) * y * y) /
           (d1 * u1);
}

double NormalForm::H2(const Params& p, double u, double v) const {
    const double a1 = p.alpha, a2 = p.alpha2, I2 = sys.I2;
    const double u1 = 1.0 + a1 * I2, u2 = 1.0 + a2 * I2;
    const double x = u;
    const double y = (Lambda * u1 * v - sys.a11 * u) / sys.a12;
    const double d1 = 1.0 + a1 * y + a1 * I2;
    const double d2 = 1.0 + a2 * y + a2 * I2;
    const double mix = a2 + a1 + 2.0 * a1 * a2 * I2;
    const double G1 = ((u1 * sys.c1 - sys.a11 * a1) * x * y +
                       (sys.c2 * u1 - a1 * sys.a12) * y * y) / (d1 * u1);
    const double G2 = ((sys.c3 * u1 * u2 - sys.a21 * mix) * x * y +
                       (sys.c4 * u1 * u2 - sys.a21 * a1 * a2) * x * y * y +
                       (sys.c5 * u1 * u2 - sys.a22 * mix) * y * y +
                       (sys.c6 * u1 * u2 - sys.a22 * a1 * a2) * y * y * y) /
                      (d1 * d2 * u1 * u2);
    return (sys.a11 * G1 + sys.a12 * G2) / (Lambda * u1);
}

double NormalForm::H1_closed_form(const Params& p, double u, double v) const {
    const double a1 = p.alpha, I2 = sys.I2;
    const double a11 = sys.a11, a12 = sys.a12, c1 = sys.c1, c2 = sys.c2;
    const double L = Lambda;
    const double num = ((-a12 * c1 + a11 * c2) * u +
                        (-L * c2 * a1 * I2 + L * a12 * a1 - L * c2) * v) *
                       ((L + L * a1 * I2) * v - a11 * u);
    const double den = a12 * ((a1 * L + L * a1 * a1 * I2) * v + a12 - a1 * a11 * u +
                              a12 * a1 * I2);
    return -num / den;
}

namespace {

struct ClosedFormA {
    double A1, A2, A3, A4, A5;
};

// A1..A5 of the closed-form H2 variant; audit-only.
ClosedFormA closed_form_a_coeffs(const Params& p, const ShiftedSystem& sys, double L) {
    const double a1 = p.alpha, a2 = p.alpha2, I2 = sys.I2;
    const double a11 = sys.a11, a12 = sys.a12, a21 = sys.a21, a22 = sys.a22;
    const double c1 = sys.c1, c2 = sys.c2, c3 = sys.c3, c4 = sys.c4, c5 = sys.c5,
                 c6 = sys.c6;
    ClosedFormA a;
    a.A1 = L * L * (1.0 + a1 * I2) * (1.0 + a1 * I2) *
           (-a12 * c6 * a2 * I2 * I2 * a1 - a11 * c2 * a1 * I2 * I2 * a2 * a2 -
            a11 * c2 * a1 * I2 * a2 - a12 * c6 * a1 * I2 + a11 * a12 * a1 * a2 * a2 * I2 +
            a11 * a12 * a1 * a2 + a12 * a22 * a1 * a2 - a11 * c2 * a2 * a2 * I2 -
            a12 * c6 * a2 * I2 - a11 * c2 * a2 - a12 * c6);
    a.A2 = -L * (1.0 + a1 * I2) *
           (a11 * a12 * c1 * a2 * a2 * a1 * I2 * I2 + a12 * a12 * c4 * a2 * I2 * I2 * a1 -
            2.0 * a12 * a11 * c6 * a2 * I2 * I2 * a1 -
            2.0 * c2 * a1 * I2 * I2 * a2 * a2 * a11 * a11 +
            a12 * a1 * a2 * a2 * a11 * a11 * I2 - 2.0 * a12 * a11 * c6 * a1 * I2 -
            2.0 * c2 * a1 * I2 * a2 * a11 * a11 + a12 * a12 * c4 * a1 * I2 +
            a11 * a12 * c1 * a2 * a1 * I2 + a11 * a12 * c1 * a2 * a2 * I2 +
            a12 * a12 * c4 * a2 * I2 - 2.0 * a12 * a11 * c6 * a2 * I2 -
            2.0 * a11 * a11 * c2 * a2 * a2 * I2 + a12 * a12 * c4 -
            2.0 * a11 * a11 * c2 * a2 - 2.0 * a12 * a11 * c6 + a11 * a12 * c1 * a2 +
            a12 * a1 * a2 * a11 * a11 - a12 * a12 * a1 * a21 * a2 +
            2.0 * a12 * a11 * a22 * a1 * a2);
    a.A3 = L * (1.0 + a1 * I2) * a12 *
           (-a12 * c5 * a1 * I2 * I2 * a2 + a12 * a11 * a1 * a2 * a2 * I2 * I2 +
            2.0 * a12 * a22 * a1 * a2 * I2 + 2.0 * a12 * a11 * a1 * a2 * I2 -
            a12 * c5 * a1 * I2 + a12 * a22 * a1 + a11 * a12 * a1 - a12 * c5 * a2 * I2 +
            a12 * a22 * a2 - 2.0 * a11 * c2 * a1 * I2 * I2 * a2 - a11 * c2 * a1 * I2 -
            a11 * c2 - a11 * c2 * a2 * a2 * I2 * I2 - 2.0 * a11 * c2 * a2 * I2);
    a.A4 = -a11 * (-a12 * a12 * c4 * a2 * I2 - a11 * a12 * c1 * a2 * a1 * I2 +
                   c2 * a1 * I2 * a2 * a11 * a11 - a12 * a12 * c4 * a2 * I2 * I2 * a1 -
                   a12 * a12 * c4 * a1 * I2 - a12 * a12 * c4 + a12 * a12 * a1 * a21 * a2 -
                   a12 * a11 * a22 * a1 * a2 - a11 * a12 * c1 * a2 * a2 * a1 * I2 * I2 +
                   a12 * a11 * c6 + a11 * a11 * c2 * a2 * a2 * I2 +
                   a12 * a11 * c6 * a2 * I2 * I2 * a1 + a11 * a11 * c2 * a2 -
                   a11 * a12 * c1 * a2 + a12 * a11 * c6 * a2 * I2 +
                   a12 * a11 * c6 * a1 * I2 + c2 * a1 * I2 * I2 * a2 * a2 * a11 * a11 -
                   a11 * a12 * c1 * a2 * a2 * I2);
    a.A5 = a12 * (2.0 * a11 * a11 * c2 * a2 * I2 + a11 * a11 * c2 * a1 * I2 +
                  a12 * a12 * a1 * a21 + a11 * a11 * c2 * a2 * a2 * I2 * I2 -
                  a12 * a11 * a22 * a2 - a12 * a11 * a22 * a1 - a12 * a12 * c3 * a2 * I2 -
                  a12 * a12 * c3 * a1 * I2 + a11 * a12 * c5 + a12 * a12 * a2 * a21 -
                  a12 * a11 * c1 + 2.0 * a12 * a12 * a1 * a21 * a2 * I2 -
                  a12 * a11 * c1 * a2 * a2 * I2 * I2 - a12 * a11 * c1 * a1 * I2 -
                  2.0 * a12 * a11 * c1 * a2 * I2 + a11 * a12 * c5 * a2 * I2 +
                  a11 * a12 * c5 * a1 * I2 - a12 * a12 * c3 * a1 * I2 * I2 * a2 -
                  a12 * a12 * c3 + a11 * a12 * c5 * a1 * I2 * I2 * a2 -
                  2.0 * a12 * a11 * a22 * a1 * a2 * I2 -
                  2.0 * a12 * a11 * c1 * a1 * I2 * I2 * a2 -
                  a12 * a11 * c1 * a1 * I2 * I2 * I2 * a2 * a2 +
                  2.0 * a11 * a11 * c2 * a1 * I2 * I2 * a2 +
                  a11 * a11 * c2 * a1 * I2 * I2 * I2 * a2 * a2 + a11 * a11 * c2);
    return a;
}

}  // namespace

double NormalForm::H2_closed_form(const Params& p, double u, double v) const {
    const double a1 = p.alpha, a2 = p.alpha2, I2 = sys.I2;
    const double a11 = sys.a11, a12 = sys.a12;
    const double L = Lambda;
    const ClosedFormA A = closed_form_a_coeffs(p, sys, L);
    const double h = L * (1.0 + a1 * I2) * (1.0 + a1 * I2) * a12 *
                     ((a1 * L + L * a1 * a1 * I2) * v + a12 - a1 * a11 * u + a12 * a1 * I2) *
                     ((a2 * L + a2 * L * a1 * I2) * v + a12 - a2 * a11 * u + a2 * I2 * a12) *
                     (1.0 + a2 * I2);
    return -((L * (1.0 + a1 * I2) * v - a11 * u) *
             (A.A1 * v * v + A.A2 * u * v + A.A3 * v + A.A4 * u * u + A.A5 * u)) / h;
}

LyapunovResult lyapunov_coefficient(const Params& p, const State& e2) {
    const QuadraticCoeffs qc = quadratic_coeffs(p);
    const SIndicator si = s_indicator(p, qc);
    if (!within_band(si.s, si.scale)) {
        std::ostringstream os;
        os << "lyapunov_coefficient: s = " << si.s << " outside the zero band (scale "
           << si.scale << ")";
        throw NotAtHopfPoint(os.str());
    }
    const NormalForm nf = normal_form(p, e2);  // checks U > 0

    auto h1 = [&](double u, double v) { return nf.H1(p, u, v); };
    auto h2 = [&](double u, double v) { return nf.H2(p, u, v); };
    const double c_h = lyapunov_combination(h1, h2, nf.Lambda, 1e-3);
    const double c_h2 = lyapunov_combination(h1, h2, nf.Lambda, 5e-4);
    const double c_h4 = lyapunov_combination(h1, h2, nf.Lambda, 2.5e-4);
    // Richardson on the O(h^2) differences.
    const double r1 = (4.0 * c_h2 - c_h) / 3.0;
    const double r2 = (4.0 * c_h4 - c_h2) / 3.0;

    LyapunovResult out;
    out.a2_bar = r2;
    out.error_estimate = std::abs(r2 - r1);
    const double ref = std::max({std::abs(r2), std::abs(r1), 1e-10});
    if (out.error_estimate > 1e-4 * ref) {
        std::ostringstream os;
        os << "lyapunov_coefficient: extrapolations disagree (" << r1 << " vs " << r2 << ")";
        throw DerivativeIllConditioned(os.str());
    }
    return out;
}

double lyapunov_closed_form(const Params& p, const State& e2, double v,
                                    bool plus_last_term) {
    const NormalForm nf = normal_form(p, e2);
    const ShiftedSystem& sys = nf.sys;
    const double a1 = p.alpha, a2 = p.alpha2, I2 = sys.I2;
    const double a11 = sys.a11, a12 = sys.a12;
    const double c1 = sys.c1, c2 = sys.c2;
    const double L = nf.Lambda;
    const ClosedFormA A = closed_form_a_coeffs(p, sys, L);

    const double t1 =
        3.0 *
        ((-c1 * L * v * a1 * a1 * I2 + L * v * a11 * a1 * a1 - a12 * c1 * a1 * I2 +
          a11 * c2 * a1 * I2 - c1 * L * v * a1 - a12 * c1 + a11 * c2) *
         a12 * a11 * a11 * a1) /
        (8.0 * std::pow(a12 + a1 * L * v, 4) * std::pow(1.0 + a1 * I2, 3));
    const double t2 = -((-3.0 * a11 * c2 - 3.0 * a11 * c2 * a1 * I2 + 2.0 * a12 * a11 * a1 +
                         a12 * c1 + a12 * c1 * a1 * I2) *
                        a1 * L * L) /
                      (8.0 * (1.0 + a1 * I2) * std::pow(a12, 3));
    const double t3 =
        -(2.0 * a11 * A.A5 * a1 * L + 6.0 * a11 * A.A5 * a1 * L * a2 * I2 +
          2.0 * a11 * A.A5 * a1 * a1 * L * I2 + 4.0 * a11 * A.A5 * a1 * a1 * L * I2 * I2 * a2 +
          2.0 * a11 * A.A5 * a2 * L - a11 * a11 * A.A3 * a1 -
          2.0 * a11 * a11 * A.A3 * a1 * a2 * I2 - a11 * a11 * A.A3 * a2 - a11 * A.A2 * a12 -
          a11 * A.A2 * a12 * a2 * I2 - a11 * A.A2 * a12 * a1 * I2 -
          a11 * A.A2 * a12 * a1 * I2 * I2 * a2 + A.A4 * L * a12 + A.A4 * L * a12 * a2 * I2 +
          2.0 * A.A4 * L * a12 * a1 * I2 + 2.0 * A.A4 * L * a12 * a1 * I2 * I2 * a2 +
          A.A4 * L * a12 * a1 * a1 * I2 * I2 + A.A4 * L * a12 * a1 * a1 * I2 * I2 * I2 * a2) /
        (8.0 * L * std::pow(1.0 + a1 * I2, 4) * std::pow(a12, 4) *
         std::pow(1.0 + a2 * I2, 3));
    const double t4 = (3.0 / 8.0) *
                      (-A.A1 * a12 - A.A1 * a12 * a2 * I2 + A.A3 * a1 * L +
                       2.0 * A.A3 * a1 * L * a2 * I2 + A.A3 * a2 * L) /
                      (std::pow(1.0 + a1 * I2, 2) * std::pow(a12, 4) *
                       std::pow(1.0 + a2 * I2, 3));
    const double inner =
        -2.0 * L *
            (-2.0 * a11 * c2 - 2.0 * a11 * c2 * a1 * I2 + a12 * a11 * a1 + a12 * c1 +
             a12 * c1 * a1 * I2) /
            (std::pow(a12, 4) * std::pow(1.0 + a1 * I2, 2)) -
        2.0 * (A.A5 * L + A.A5 * L * a1 * I2 - a11 * A.A3) *
            (-a11 * A.A5 + A.A3 * L + A.A3 * L * a1 * I2) /
            (L * L * std::pow(1.0 + a1 * I2, 6) * std::pow(a12, 6) *
             std::pow(1.0 + a2 * I2, 4)) -
        4.0 * (-a12 * c1 + a11 * c2) * a11 * a11 * A.A5 /
            (std::pow(a12, 5) * std::pow(1.0 + a1 * I2, 4) * L *
             std::pow(1.0 + a2 * I2, 2)) +
        (plus_last_term ? 1.0 : -1.0) * 4.0 * (-c2 * a1 * I2 + a12 * a1 - c2) * L * L *
            A.A3 / (std::pow(a12, 5) * std::pow(1.0 + a1 * I2, 2) *
                    std::pow(1.0 + a2 * I2, 2));
    const double t5 = -inner / (16.0 * L);
    return t1 + t2 + t3 + t4 + t5;
}

TransversalityResult transversality(const Params& p, const State& e2) {
    const QuadraticCoeffs qc = quadratic_coeffs(p);
    const double A = qc.A;
    const double I2 = e2.I;
    const double u1 = 1.0 + p.alpha * I2;
    const double u2 = 1.0 + p.alpha2 * I2;

    TransversalityResult out;
    out.closed_form_magnitude = 1.0 / (4.0 * A * A * A * u1 * u2 * u2);
    // Re(lambda) = -W/2 and W = s/(2 A^3 (1+alpha I2)(1+alpha2 I2)^2).
    out.d_re_dlambda_ds = -out.closed_form_magnitude;

    // Finite-difference cross-check along a beta2 perturbation.
    const double h = std::max(p.beta2, 1e-3) * 1e-5;
    auto probe = [&](double b2) -> std::pair<double, double> {
        const Params q = p.with(ParamId::beta2, b2);
        const auto pt = e2_at(q);
        if (!pt) throw LostEquilibrium("transversality: E2 lost during perturbation");
        const double re = max_real_part(eigenvalues_at(q, pt->e2));
        const SIndicator si = s_indicator(q, pt->qc);
        return {re, si.s};
    };
    const auto [re_hi, s_hi] = probe(p.beta2 + h);
    const auto [re_lo, s_lo] = probe(p.beta2 - h);
    if (s_hi == s_lo) throw TransversalityFailed("transversality: s did not move");
    out.fd_check = (re_hi - re_lo) / (s_hi - s_lo);

    if (out.fd_check >= 0.0) {
        throw TransversalityFailed("transversality: finite-difference sign disagrees");
    }
    if (std::abs(out.fd_check - out.d_re_dlambda_ds) > 1e-3 * out.closed_form_magnitude) {
        std::ostringstream os;
        os << "transversality: finite difference " << out.fd_check
           << " does not match formula " << out.d_re_dlambda_ds;
        throw TransversalityFailed(os.str());
    }
    return out;
}

std::optional<HopfReport> locate_hopf(const Params& p, ParamId param, double lo, double hi) {
    auto s_at = [&](double x) -> double {
        const Params q = p.with(param, x);
        const auto pt = e2_at(q);
        if (!pt) {
            std::ostringstream os;
            os << "locate_hopf: E2 lost at " << param_name(param) << " = " << x;
            throw LostEquilibrium(os.str());
        }
        return s_indicator(q, pt->qc).s;
    };

    double a = lo, b = hi;
    double fa = s_at(a), fb = s_at(b);
    if (fa == 0.0) b = a;
    else if (fb == 0.0) a = b;
    else if ((fa > 0.0) == (fb > 0.0)) return std::nullopt;

    // Bisection with a secant proposal each iteration.
    for (int it = 0; it < 200 && a != b; ++it) {
        double mid = 0.5 * (a + b);
        if (fb != fa) {
            const double sec = b - fb * (b - a) / (fb - fa);
            if (sec > std::min(a, b) && sec < std::max(a, b)) mid = sec;
        }
        const double fm = s_at(mid);
        if (fm == 0.0) {
            a = b = mid;
            break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        if (std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                   (std::abs(a) + std::abs(b))) {
            break;
        }
    }

    const double root = 0.5 * (a + b);
    const Params q = p.with(param, root);
    const auto pt = e2_at(q);
    if (!pt) throw LostEquilibrium("locate_hopf: E2 lost at the refined root");

    HopfReport rep;
    rep.parameter = param;
    rep.parameter_value = root;
    rep.e2 = pt->e2;
    const CharPolyQuantities cp = char_poly(q, pt->e2);
    rep.U = cp.U;
    if (rep.U <= 0.0) return std::nullopt;  // s = 0 with U <= 0 is not a Hopf point
    rep.Lambda = std::sqrt(rep.U);
    rep.s = s_indicator(q, pt->qc).s;
    rep.lyapunov = lyapunov_coefficient(q, pt->e2);
    rep.trans = transversality(q, pt->e2);
    if (std::abs(rep.lyapunov.a2_bar) <= 10.0 * rep.lyapunov.error_estimate) {
        rep.predicted_cycle = CyclePrediction::Inconclusive;
    } else {
        rep.predicted_cycle = rep.lyapunov.a2_bar < 0.0 ? CyclePrediction::StableOrbit
                                                        : CyclePrediction::UnstableOrbit;
    }
    return rep;
}

}  // namespace sirsat
