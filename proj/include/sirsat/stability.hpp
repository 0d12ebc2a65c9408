#pragma once

#include <array>
#include <complex>

#include "sirsat/equilibria.hpp"
#include "sirsat/model.hpp"

namespace sirsat {

// Building blocks of the characteristic polynomial lambda^2 + W*lambda + U.
struct CharPolyQuantities {
    double C_I = 0.0;  // beta*I/(1+alpha*I)
    double C_S = 0.0;  // beta*S/(1+alpha*I)^2
    double D_I = 0.0;  // beta2/(1+alpha2*I)^2
    double W = 0.0;    // -trace of the Jacobian
    double U = 0.0;    // det of the Jacobian
};

CharPolyQuantities char_poly(const Params& p, const State& s);

// Eigenvalues of the Jacobian at a state (closed-form 2x2 solve).
std::array<std::complex<double>, 2> eigenvalues_at(const Params& p, const State& s);

enum class DfeLocal { Stable, Unstable, SaddleAtR0EqualOne, Degenerate };
const char* dfe_local_name(DfeLocal c);

struct DfeVerdict {
    DfeLocal local = DfeLocal::Stable;
    bool global_certificate = false;  // one of the four no-endemic certificates holds
};

DfeVerdict classify_dfe(const Params& p);

// Coefficients and roots of F(I) = a1*I^2 + b1*I + c1, whose sign at an
// endemic root equals the sign of U there.
struct SaddleIndicator {
    double a1 = 0.0;  // alpha2 * A
    double b1 = 0.0;  // 2 * A
    double c1 = 0.0;  // B - alpha2 * C
    double i_star = 0.0;       // larger root (NaN when F has no real roots)
    double i_star_star = 0.0;  // smaller root (NaN when F has no real roots)
    bool roots_real = false;

    double eval(double I) const { return (a1 * I + b1) * I + c1; }
};

SaddleIndicator saddle_indicator(const Params& p, const QuadraticCoeffs& c);

class NoSuchEquilibrium : public std::domain_error {
public:
    explicit NoSuchEquilibrium(const std::string& what) : std::domain_error(what) {}
};

// The s surrogate for sign(W at E2): s = m1*(-B + sqrt(D)) + 2*A*m2.
struct SIndicator {
    double r = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double s = 0.0;
    double scale = 0.0;  // magnitude of the terms summed into s, for the band
};

// Requires discriminant >= 0 (E2 real); throws NoSuchEquilibrium otherwise.
SIndicator s_indicator(const Params& p, const QuadraticCoeffs& c);

enum class EndemicClass { Saddle, Stable, Unstable, HopfCandidate, Degenerate };
const char* endemic_class_name(EndemicClass c);

enum class WhichEndemic { E1, E2 };

EndemicClass classify_endemic(const Params& p, WhichEndemic which);

class NotAtThreshold : public std::domain_error {
public:
    explicit NotAtThreshold(const std::string& what) : std::domain_error(what) {}
};

// Quadratic flow coefficient H and the center-manifold expansion
// u = a0 v^2 + a1 v^3 + O(v^4) at r0 = 1.
struct CenterManifoldData {
    double H = 0.0;
    double a0 = 0.0;
    double a1 = 0.0;
    double H_scale = 0.0;  // term-sum magnitude for the H zero band
};

// Requires r0 = 1 within the zero band; throws NotAtThreshold otherwise.
CenterManifoldData center_manifold(const Params& p);

// The transformed system at r0 = 1: v' = f(v,u), u' = -b u + g(v,u), where
// v is the center direction (v = I) and u = S - m + k v, k = (gamma+beta2+bm)/b.
// Exposed for the annihilator audit.
double center_manifold_f(const Params& p, double v, double u);
double center_manifold_g(const Params& p, double v, double u);

// Annihilator N(phi) = phi'(v) f(v,phi) + b phi - g(v,phi) with
// phi = a0 v^2 + a1 v^3.  O(v^4) exactly when (a0, a1) solve the invariance
// equation.
double annihilator(const Params& p, double a0, double a1, double v);

// Audit variant of a1: differs from the invariance-equation solution by
// alpha2*beta^2*m^2*(alpha2-1)/b^2 and degrades the annihilator decay from
// fourth to third order; nothing downstream consumes it.
double center_manifold_a1_audit(const Params& p);

}  // namespace sirsat
