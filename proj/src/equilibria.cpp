#include "sirsat/equilibria.hpp"

#include <cmath>

namespace sirsat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Scale of r0 comparisons against 1.
double r0_scale(double r) { return 1.0 + std::abs(r); }

}  // namespace

const char* region_name(Region r) {
    switch (r) {
        case Region::A1: return "A1";
        case Region::A2: return "A2";
        case Region::A3: return "A3";
        case Region::NotApplicable: return "not_applicable";
    }
    return "?";
}

const char* existence_case_name(ExistenceCase c) {
    switch (c) {
        case ExistenceCase::UniqueR0GreaterOne: return "r0_gt_1_unique";
        case ExistenceCase::UniqueAtThreshold: return "r0_eq_1_unique";
        case ExistenceCase::TwoEndemic: return "two_endemic";
        case ExistenceCase::Tangent: return "tangent";
        case ExistenceCase::None: return "none";
    }
    return "?";
}

const char* bifurcation_type_name(BifurcationType t) {
    switch (t) {
        case BifurcationType::Forward: return "forward";
        case BifurcationType::Backward: return "backward";
        case BifurcationType::NotApplicable: return "not_applicable";
    }
    return "?";
}

QuadraticCoeffs quadratic_coeffs(const Params& p) {
    const double L = p.pdg();    // p*delta + gamma
    const double K = p.pdg2();   // p*delta + gamma + beta2
    const double bm = p.b * p.m;

    QuadraticCoeffs c;
    c.A = p.alpha2 * (p.beta * (p.gamma + bm) + p.alpha * p.b * L);

    const double tB1 = p.beta * (p.gamma + p.beta2 + bm * (1.0 - p.alpha2));
    const double tB2 = p.b * p.alpha * K;
    const double tB3 = p.b * p.alpha2 * L;
    c.B = tB1 + tB2 + tB3;
    c.scale_B = p.beta * (p.gamma + p.beta2 + bm * (1.0 + p.alpha2)) + tB2 + tB3;

    c.C = p.b * (K - p.beta * p.m);
    c.scale_C = p.b * (K + p.beta * p.m);

    c.discriminant = c.B * c.B - 4.0 * c.A * c.C;
    c.scale_discriminant = c.B * c.B + 4.0 * c.A * std::abs(c.C);
    return c;
}

EndemicRoots endemic_roots(const QuadraticCoeffs& c) {
    EndemicRoots out;
    const QuadRoots r = solve_quadratic(c.A, c.B, c.C);
    out.real = r.real;
    if (r.real) {
        out.i1 = r.lo;
        out.i2 = r.hi;
    }
    return out;
}

double s_of_i(const Params& p, double I) {
    return (1.0 + p.alpha * I) / p.beta * (p.pdg() + p.beta2 / (1.0 + p.alpha2 * I));
}

Thresholds thresholds(const Params& p) {
    Thresholds t;
    t.r0 = r0(p);
    t.r0_star = r0_star(p);
    t.P1 = kNaN;
    t.R0_plus = kNaN;
    t.R0_minus = kNaN;
    t.alpha2_0 = kNaN;
    t.g_of_alpha2 = kNaN;

    const double L = p.pdg();
    const double K = p.pdg2();
    const double bm = p.b * p.m;

    // P1 is defined for every parameter set.
    const double e_term = p.beta * (p.gamma + p.beta2 + bm - bm * p.alpha2) +
                          p.beta * p.m * p.b * p.alpha + p.b * p.alpha2 * L;
    t.P1 = 1.0 + e_term / (p.b * p.alpha * K);

    // R0+- from the discriminant-in-r0 quadratic.
    const double rho1 = -p.beta * (p.alpha * (bm * p.alpha + p.beta2 + p.gamma + bm -
                                              bm * p.alpha2) -
                                   p.alpha2 * (p.gamma + bm));
    const double rho2 = p.alpha2 * (p.beta * (p.gamma + bm) + p.alpha * p.b * L);
    if (rho1 < 0.0) {
        t.radicand_negative = true;
    } else {
        const double den = p.b * p.alpha * p.alpha * K;
        const double s1 = std::sqrt(rho1), s2 = std::sqrt(rho2);
        t.R0_minus = 1.0 - (s1 + s2) * (s1 + s2) / den;
        t.R0_plus = 1.0 - (s1 - s2) * (s1 - s2) / den;
    }

    // alpha2^0 and g(alpha2) involve division by b(p delta + gamma - beta m),
    // negative exactly when r0_star > 1.
    if (banded_sign(t.r0_star - 1.0, r0_scale(t.r0_star)) <= 0) {
        t.region = Region::NotApplicable;
        return t;
    }
    const double denom = p.b * (L - p.beta * p.m);  // < 0 here
    t.alpha2_0 = -p.beta * (p.m * p.b * p.alpha + p.gamma + bm) / denom;
    const double g_num1 = p.b * p.alpha2 * (L - p.beta * p.m);
    const double g_num2 = p.beta * (p.gamma + bm + p.m * p.b * p.alpha);
    t.g_of_alpha2 = -(g_num1 + g_num2) / p.beta;
    const double g_scale = (std::abs(g_num1) + g_num2) / p.beta;

    // Boundary conventions: alpha2 = alpha2^0 belongs to A1, beta2 = g to A2.
    if (p.alpha2 <= t.alpha2_0 ||
        within_band(p.alpha2 - t.alpha2_0, p.alpha2 + std::abs(t.alpha2_0))) {
        t.region = Region::A1;
    } else if (p.beta2 >= t.g_of_alpha2 ||
               within_band(p.beta2 - t.g_of_alpha2, p.beta2 + g_scale)) {
        t.region = Region::A2;
    } else {
        // beta2 = 0 is the limit point of A3 when g > 0; classified with A3 so
        // sweep endpoints at zero treatment keep the backward-region tag.
        t.region = Region::A3;
    }

    if (t.region == Region::A3) {
        t.r0_above_P1 = t.r0 > t.P1 && !within_band(t.r0 - t.P1, r0_scale(t.r0) + std::abs(t.P1));
        t.r0_above_R0_plus = !t.radicand_negative && t.r0 > t.R0_plus &&
                             !within_band(t.r0 - t.R0_plus, r0_scale(t.r0) + std::abs(t.R0_plus));
    }
    return t;
}

A3Subregion a3_subregion(const Params& p) {
    const Thresholds t = thresholds(p);
    if (t.region != Region::A3) {
        throw InvalidRegion(std::string("a3_subregion requires region A3, got ") +
                            region_name(t.region));
    }
    return A3Subregion{t.r0_above_R0_plus, t.r0_above_P1};
}

EquilibriumReport equilibrium_report(const Params& p) {
    EquilibriumReport rep;
    rep.dfe = dfe(p);

    const QuadraticCoeffs qc = quadratic_coeffs(p);
    const int sC = banded_sign(qc.C, qc.scale_C);  // sign(1 - r0)

    if (sC < 0) {
        // r0 > 1: C < 0 forces exactly one positive root.
        const EndemicRoots roots = endemic_roots(qc);
        rep.e2 = State{s_of_i(p, roots.i2), roots.i2};
        rep.existence_case = ExistenceCase::UniqueR0GreaterOne;
        return rep;
    }

    const Thresholds thr = thresholds(p);

    if (sC == 0) {
        // r0 = 1: roots {0, -B/A}, positive only in A3 where B < 0.
        const double I = -qc.B / qc.A;
        if (thr.region == Region::A3 && I > 0.0) {
            rep.e2 = State{s_of_i(p, I), I};
            rep.existence_case = ExistenceCase::UniqueAtThreshold;
        }
        return rep;
    }

    // r0 < 1: endemic equilibria require region A3 with B < 0 and real roots.
    if (thr.region != Region::A3) return rep;
    const int sB = banded_sign(qc.B, qc.scale_B);
    if (sB >= 0) return rep;
    const int sD = banded_sign(qc.discriminant, qc.scale_discriminant);
    if (sD < 0) return rep;

    if (sD == 0) {
        const double I = -qc.B / (2.0 * qc.A);
        const State e = {s_of_i(p, I), I};
        rep.e1 = e;
        rep.e2 = e;
        rep.existence_case = ExistenceCase::Tangent;
        return rep;
    }

    const EndemicRoots roots = endemic_roots(qc);
    if (roots.i1 <= 0.0) return rep;
    rep.e1 = State{s_of_i(p, roots.i1), roots.i1};
    rep.e2 = State{s_of_i(p, roots.i2), roots.i2};
    rep.existence_case = ExistenceCase::TwoEndemic;
    return rep;
}

BifurcationType bifurcation_type(const Params& p) {
    const double rs = r0_star(p);
    if (banded_sign(rs - 1.0, r0_scale(rs)) <= 0) return BifurcationType::NotApplicable;
    // beta2 at which r0 = 1 with everything else fixed.
    const double beta2_star = p.beta * p.m - p.pdg();
    const Thresholds t = thresholds(p.with(ParamId::beta2, beta2_star));
    return t.region == Region::A3 ? BifurcationType::Backward : BifurcationType::Forward;
}

}  // namespace sirsat
