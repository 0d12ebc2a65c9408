#pragma once

#include <optional>
#include <string>

#include "sirsat/model.hpp"

namespace sirsat {

// Coefficients of the endemic-equilibrium quadratic A*I^2 + B*I + C = 0.
struct QuadraticCoeffs {
    double A = 0.0;  // always > 0
    double B = 0.0;
    double C = 0.0;  // sign(C) = sign(1 - r0)
    double discriminant = 0.0;

    // Magnitude scales of the term sums, for zero-band decisions.
    double scale_B = 0.0;
    double scale_C = 0.0;
    double scale_discriminant = 0.0;
};

QuadraticCoeffs quadratic_coeffs(const Params& p);

struct EndemicRoots {
    double i1 = 0.0;  // (-B - sqrt(D))/(2A), smaller root
    double i2 = 0.0;  // (-B + sqrt(D))/(2A), larger root
    bool real = false;
};

EndemicRoots endemic_roots(const QuadraticCoeffs& c);

// Endemic S coordinate for a given positive I.
double s_of_i(const Params& p, double I);

enum class Region { A1, A2, A3, NotApplicable };
const char* region_name(Region r);

struct Thresholds {
    double r0 = 0.0;
    double r0_star = 0.0;
    double P1 = 0.0;
    double R0_plus = 0.0;    // NaN when not defined
    double R0_minus = 0.0;   // NaN when not defined
    double alpha2_0 = 0.0;   // NaN when r0_star <= 1
    double g_of_alpha2 = 0.0;
    Region region = Region::NotApplicable;
    bool radicand_negative = false;  // inner radicand of R0+- was negative
    // A3 subregion flags (meaningful only when region == A3):
    bool r0_above_R0_plus = false;   // r0 > R0+  (A3^2; complement is A3^1)
    bool r0_above_P1 = false;        // r0 > P1   (A3^4; complement is A3^3)
};

Thresholds thresholds(const Params& p);

struct A3Subregion {
    bool above_R0_plus = false;
    bool above_P1 = false;
};

class InvalidRegion : public std::domain_error {
public:
    explicit InvalidRegion(const std::string& what) : std::domain_error(what) {}
};

// Subregion flags of the two-endemic existence analysis; requires region A3.
A3Subregion a3_subregion(const Params& p);

enum class ExistenceCase {
    UniqueR0GreaterOne,  // r0 > 1, unique E2
    UniqueAtThreshold,   // r0 = 1 in A3, unique E2 = -B/A
    TwoEndemic,          // A3, max{P1, R0+} < r0 < 1
    Tangent,             // r0 = R0+ > P1, E1 = E2
    None,
};
const char* existence_case_name(ExistenceCase c);

struct EquilibriumReport {
    State dfe;
    std::optional<State> e1;
    std::optional<State> e2;
    ExistenceCase existence_case = ExistenceCase::None;
};

EquilibriumReport equilibrium_report(const Params& p);

enum class BifurcationType { Forward, Backward, NotApplicable };
const char* bifurcation_type_name(BifurcationType t);

// Type of the bifurcation at r0 = 1 with beta2 as bifurcation parameter,
// evaluated at beta2* = beta*m - p*delta - gamma.
BifurcationType bifurcation_type(const Params& p);

}  // namespace sirsat
