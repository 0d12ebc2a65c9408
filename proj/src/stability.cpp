#include "sirsat/stability.hpp"

#include <cmath>
#include <sstream>

namespace sirsat {

namespace {

double r0_scale(double r) { return 1.0 + std::abs(r); }

}  // namespace

const char* dfe_local_name(DfeLocal c) {
    switch (c) {
        case DfeLocal::Stable: return "stable";
        case DfeLocal::Unstable: return "unstable";
        case DfeLocal::SaddleAtR0EqualOne: return "saddle_at_r0_eq_1";
        case DfeLocal::Degenerate: return "degenerate";
    }
    return "?";
}

const char* endemic_class_name(EndemicClass c) {
    switch (c) {
        case EndemicClass::Saddle: return "saddle";
        case EndemicClass::Stable: return "stable";
        case EndemicClass::Unstable: return "unstable";
        case EndemicClass::HopfCandidate: return "hopf_candidate";
        case EndemicClass::Degenerate: return "degenerate";
    }
    return "?";
}

CharPolyQuantities char_poly(const Params& p, const State& s) {
    const double den = 1.0 + p.alpha * s.I;
    const double dent = 1.0 + p.alpha2 * s.I;
    CharPolyQuantities q;
    q.C_I = p.beta * s.I / den;
    q.C_S = p.beta * s.S / (den * den);
    q.D_I = p.beta2 / (dent * dent);
    q.W = q.C_I + p.b - q.C_S + p.p * p.delta + p.gamma + q.D_I;
    q.U = q.C_I * p.gamma + q.C_I * q.D_I - p.b * q.C_S + p.b * p.p * p.delta +
          p.b * p.gamma + p.b * q.D_I + q.C_I * p.b * p.m;
    return q;
}

std::array<std::complex<double>, 2> eigenvalues_at(const Params& p, const State& s) {
    return eigenvalues(jacobian(p, s));
}

DfeVerdict classify_dfe(const Params& p) {
    DfeVerdict v;
    const double r = r0(p);
    const int sr = banded_sign(r - 1.0, r0_scale(r));

    if (sr == 0) {
        // Non-hyperbolic: the center-manifold flow coefficient decides.
        const Thresholds t = thresholds(p);
        if (banded_sign(t.r0_star - 1.0, r0_scale(t.r0_star)) <= 0) {
            v.local = DfeLocal::Degenerate;  // r0 = r0_star = 1, beta2 = 0 corner
        } else {
            const CenterManifoldData cm = center_manifold(p);
            v.local = within_band(cm.H, cm.H_scale) ? DfeLocal::Degenerate
                                                    : DfeLocal::SaddleAtR0EqualOne;
        }
        return v;
    }

    v.local = sr < 0 ? DfeLocal::Stable : DfeLocal::Unstable;
    if (sr > 0) return v;

    // Global-stability certificate: any of the four no-endemic conditions.
    const Thresholds t = thresholds(p);
    if (banded_sign(t.r0_star - 1.0, r0_scale(t.r0_star)) <= 0) {
        v.global_certificate = true;
    } else if (t.region == Region::A1 || t.region == Region::A2) {
        v.global_certificate = true;
    } else if (within_band(t.r0 - t.P1, r0_scale(t.r0) + std::abs(t.P1))) {
        v.global_certificate = true;
    } else {
        const double cap = t.radicand_negative ? t.P1 : std::max(t.R0_plus, t.P1);
        v.global_certificate = t.r0 < cap;
    }
    return v;
}

SaddleIndicator saddle_indicator(const Params& p, const QuadraticCoeffs& c) {
    SaddleIndicator si;
    si.a1 = p.alpha2 * c.A;
    si.b1 = 2.0 * c.A;
    si.c1 = c.B - p.alpha2 * c.C;
    const QuadRoots r = solve_quadratic(si.a1, si.b1, si.c1);
    si.roots_real = r.real;
    if (r.real) {
        si.i_star = r.hi;
        si.i_star_star = r.lo;
    } else {
        si.i_star = std::numeric_limits<double>::quiet_NaN();
        si.i_star_star = std::numeric_limits<double>::quiet_NaN();
    }
    return si;
}

SIndicator s_indicator(const Params& p, const QuadraticCoeffs& c) {
    if (c.discriminant < 0.0) {
        throw NoSuchEquilibrium("s_indicator: discriminant < 0, E2 does not exist");
    }
    SIndicator si;
    const double A = c.A, B = c.B, C = c.C, a2 = p.alpha2;
    si.r = p.alpha * (p.p * p.delta + p.b + p.gamma) + p.beta;
    const double r = si.r;
    // m1, m2 from the division-algorithm identity
    // G(I) = (A I^2 + B I + C) P(I) + (m1 I + m2)/A^2.
    si.m1 = (r + p.beta2 * p.alpha - p.beta2 * a2 + 2.0 * p.b * a2) * A * A -
            a2 * a2 * r * A * C - A * B * a2 * (p.b * a2 + 2.0 * r) + a2 * a2 * r * B * B;
    si.m2 = p.b * A * A - A * C * a2 * (p.b * a2 + 2.0 * r) + a2 * a2 * r * B * C;
    const double root_term = -B + std::sqrt(c.discriminant);
    si.s = si.m1 * root_term + 2.0 * A * si.m2;
    si.scale = std::abs(si.m1 * root_term) + std::abs(2.0 * A * si.m2);
    return si;
}

EndemicClass classify_endemic(const Params& p, WhichEndemic which) {
    const EquilibriumReport rep = equilibrium_report(p);
    const State* eq = nullptr;
    if (which == WhichEndemic::E1) {
        if (!rep.e1) throw NoSuchEquilibrium("classify_endemic: E1 does not exist");
        eq = &*rep.e1;
    } else {
        if (!rep.e2) throw NoSuchEquilibrium("classify_endemic: E2 does not exist");
        eq = &*rep.e2;
    }
    if (rep.existence_case == ExistenceCase::Tangent) {
        // I1 = I2 fuses at I*, so U = 0: linearization is degenerate.
        return EndemicClass::Degenerate;
    }
    if (which == WhichEndemic::E1) return EndemicClass::Saddle;

    const QuadraticCoeffs qc = quadratic_coeffs(p);
    const SaddleIndicator si = saddle_indicator(p, qc);
    const double I2 = eq->I;
    const double F2 = si.eval(I2);
    const double F2_scale = si.a1 * I2 * I2 + si.b1 * I2 + std::abs(si.c1);
    const int sF = banded_sign(F2, F2_scale);
    if (sF < 0) return EndemicClass::Unstable;  // I2 < I*, U < 0
    if (sF == 0) return EndemicClass::Degenerate;

    const SIndicator s = s_indicator(p, qc);
    const int ss = banded_sign(s.s, s.scale);
    if (ss == 0) return EndemicClass::HopfCandidate;
    return ss > 0 ? EndemicClass::Stable : EndemicClass::Unstable;
}

namespace {

// Transform slope of the u = S_hat + k v change of variables.
double cm_k(const Params& p) { return (p.gamma + p.beta2 + p.b * p.m) / p.b; }

}  // namespace

double center_manifold_f(const Params& p, double v, double u) {
    const double sh = u - cm_k(p) * v;
    return p.beta * (sh + p.m) * v / (1.0 + p.alpha * v) - p.pdg() * v -
           p.beta2 * v / (1.0 + p.alpha2 * v);
}

double center_manifold_g(const Params& p, double v, double u) {
    const double k = cm_k(p);
    const double sh = u - k * v;
    return (k - 1.0) * p.beta * (sh + p.m) * v / (1.0 + p.alpha * v) + p.b * k * v -
           p.b * p.m * v + p.p * p.delta * v - k * p.pdg() * v -
           k * p.beta2 * v / (1.0 + p.alpha2 * v);
}

double annihilator(const Params& p, double a0, double a1, double v) {
    const double phi = (a0 + a1 * v) * v * v;
    const double dphi = (2.0 * a0 + 3.0 * a1 * v) * v;
    return dphi * center_manifold_f(p, v, phi) + p.b * phi - center_manifold_g(p, v, phi);
}

CenterManifoldData center_manifold(const Params& p) {
    const double r = r0(p);
    if (banded_sign(r - 1.0, r0_scale(r)) != 0) {
        std::ostringstream os;
        os << "center_manifold requires r0 = 1, got r0 = " << r;
        throw NotAtThreshold(os.str());
    }
    const double k = cm_k(p);
    CenterManifoldData cm;
    // Quadratic flow coefficient: v' = H v^2 + O(v^3).
    cm.H = -p.beta * (k + p.m * p.alpha) + p.beta2 * p.alpha2;
    cm.H_scale = p.beta * (k + p.m * p.alpha) + p.beta2 * p.alpha2;
    // Invariance-equation solution for u = a0 v^2 + a1 v^3 + O(v^4).
    cm.a0 = (-(k - 1.0) * p.beta * (k + p.m * p.alpha) + k * p.beta2 * p.alpha2) / p.b;
    cm.a1 = ((k - 1.0) * p.beta * (p.m * p.alpha * p.alpha + k * p.alpha) -
             k * p.beta2 * p.alpha2 * p.alpha2 + (k - 1.0) * p.beta * cm.a0 -
             2.0 * cm.a0 * cm.H) / p.b;
    return cm;
}

double center_manifold_a1_audit(const Params& p) {
    const double b = p.b, be = p.beta, al = p.alpha, a2 = p.alpha2, m = p.m;
    const double pd = p.p * p.delta, g = p.gamma;
    const CenterManifoldData cm = center_manifold(p);
    const double a0 = cm.a0;
    // Differs from the invariance-equation a1 by
    // alpha2*beta^2*m^2*(alpha2-1)/b^2; kept only for the audit test.
    return (al * be * be * be * m * m - a0 * be * b * b - 2.0 * b * pd * al * be * m -
            be * be * b * m * m * a2 - b * pd * pd * a2 * a2 + m * b * b * g * a2 * a2 -
            b * b * m * m * be * a2 * a2 - b * b * al * be * m - b * b * al * al * be * m -
            al * be * be * b * m + b * al * al * be * be * m * m +
            b * b * m * m * al * al * be + al * be * pd * pd + 3.0 * a0 * be * b * b * m +
            3.0 * a0 * b * be * be * m + 2.0 * a0 * b * b * g * a2 +
            2.0 * a0 * b * b * pd * a2 - 2.0 * a0 * be * b * b * m * a2 -
            3.0 * a0 * b * be * pd + 2.0 * a0 * b * b * al * be * m -
            2.0 * al * be * be * m * pd + al * be * b * pd + b * b * m * pd * a2 * a2 +
            b * g * a2 * a2 * be * m - b * g * pd * a2 * a2 + 2.0 * be * b * m * a2 * a2 * pd -
            b * pd * al * al * be * m + b * b * m * m * al * be +
            2.0 * b * al * be * be * m * m) / (b * b * b);
}

}  // namespace sirsat
