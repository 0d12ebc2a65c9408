#pragma once

#include <stdexcept>
#include <string>

#include "sirsat/numeric.hpp"

namespace sirsat {

class InvalidParams : public std::invalid_argument {
public:
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

// Sweepable model parameter, used by sweeps and the Hopf search.
enum class ParamId { b, delta, gamma, q, m_prime, beta, alpha, beta2, alpha2 };

const char* param_name(ParamId id);
bool parse_param_id(const std::string& name, ParamId& out);

// The nine model constants plus the derived complements p = 1-q, m = 1-m'.
//
// All rates are strictly positive except beta2, which may be zero (null
// treatment appears as a sweep endpoint and makes r0 coincide with r0_star).
struct Params {
    double b;        // birth/death rate of susceptible + recovered
    double delta;    // birth/death rate of infected
    double gamma;    // natural recovery rate
    double q;        // vertical transmission fraction
    double m_prime;  // vaccinated-newborn fraction
    double beta;     // infection rate
    double alpha;    // incidence saturation
    double beta2;    // treatment rate
    double alpha2;   // treatment saturation
    double p;        // 1 - q
    double m;        // 1 - m'

    Params(double b_, double delta_, double gamma_, double q_, double m_prime_,
           double beta_, double alpha_, double beta2_, double alpha2_);

    // Copy with one parameter replaced (revalidates).
    Params with(ParamId id, double value) const;
    double get(ParamId id) const;

    double pdg() const { return p * delta + gamma; }              // p*delta + gamma
    double pdg2() const { return p * delta + gamma + beta2; }     // p*delta + gamma + beta2
};

struct State {
    double S = 0.0;
    double I = 0.0;
};

// True iff (S, I) lies in the invariant region D = {S,I >= 0, S+I <= 1},
// up to `tol` slack on each inequality.
bool in_domain(const State& s, double tol = 0.0);

// beta*S*I/(1 + alpha*I)
double incidence(const Params& p, const State& s);

// beta2*I/(1 + alpha2*I)
double treatment(const Params& p, double I);

// Right-hand side of the planar system.
State vector_field(const Params& p, const State& s);

// Jacobian of the vector field.
Matrix2 jacobian(const Params& p, const State& s);

// Reproduction numbers with and without treatment.
double r0(const Params& p);
double r0_star(const Params& p);

// R = 1 - S - I
double recovered_fraction(const State& s);

// Disease-free equilibrium (m, 0).
State dfe(const Params& p);

}  // namespace sirsat
