#include "sirsat/model.hpp"

#include <cmath>
#include <sstream>

namespace sirsat {

namespace {

void require(bool cond, const char* name, double value, const char* constraint) {
    if (!cond) {
        std::ostringstream os;
        os << "invalid parameter " << name << " = " << value << " (must be " << constraint << ")";
        throw InvalidParams(os.str());
    }
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }
bool nonneg(double x) { return x >= 0.0 && std::isfinite(x); }

}  // namespace

const char* param_name(ParamId id) {
    switch (id) {
        case ParamId::b: return "b";
        case ParamId::delta: return "delta";
        case ParamId::gamma: return "gamma";
        case ParamId::q: return "q";
        case ParamId::m_prime: return "m_prime";
        case ParamId::beta: return "beta";
        case ParamId::alpha: return "alpha";
        case ParamId::beta2: return "beta2";
        case ParamId::alpha2: return "alpha2";
    }
    return "?";
}

bool parse_param_id(const std::string& name, ParamId& out) {
    static const ParamId all[] = {ParamId::b,     ParamId::delta,  ParamId::gamma,
                                  ParamId::q,     ParamId::m_prime, ParamId::beta,
                                  ParamId::alpha, ParamId::beta2,  ParamId::alpha2};
    for (ParamId id : all) {
        if (name == param_name(id)) {
            out = id;
            return true;
        }
    }
    return false;
}

Params::Params(double b_, double delta_, double gamma_, double q_, double m_prime_,
               double beta_, double alpha_, double beta2_, double alpha2_)
    : b(b_), delta(delta_), gamma(gamma_), q(q_), m_prime(m_prime_), beta(beta_),
      alpha(alpha_), beta2(beta2_), alpha2(alpha2_), p(1.0 - q_), m(1.0 - m_prime_) {
    require(positive(b), "b", b, "> 0");
    require(positive(delta), "delta", delta, "> 0");
    require(positive(gamma), "gamma", gamma, "> 0");
    require(positive(beta), "beta", beta, "> 0");
    require(positive(alpha), "alpha", alpha, "> 0");
    // beta2 = 0 (null treatment) is admitted so sweeps can start at zero and
    // r0 can be compared against r0_star directly.
    require(nonneg(beta2), "beta2", beta2, ">= 0");
    require(positive(alpha2), "alpha2", alpha2, "> 0");
    require(nonneg(q) && q <= 1.0, "q", q, "in [0, 1]");
    require(nonneg(m_prime) && m_prime <= 1.0, "m_prime", m_prime, "in [0, 1]");
}

Params Params::with(ParamId id, double value) const {
    Params out = *this;
    switch (id) {
        case ParamId::b: out.b = value; break;
        case ParamId::delta: out.delta = value; break;
        case ParamId::gamma: out.gamma = value; break;
        case ParamId::q: out.q = value; break;
        case ParamId::m_prime: out.m_prime = value; break;
        case ParamId::beta: out.beta = value; break;
        case ParamId::alpha: out.alpha = value; break;
        case ParamId::beta2: out.beta2 = value; break;
        case ParamId::alpha2: out.alpha2 = value; break;
    }
    return Params(out.b, out.delta, out.gamma, out.q, out.m_prime, out.beta, out.alpha,
                  out.beta2, out.alpha2);
}

double Params::get(ParamId id) const {
    switch (id) {
        case ParamId::b: return b;
        case ParamId::delta: return delta;
        case ParamId::gamma: return gamma;
        case ParamId::q: return q;
        case ParamId::m_prime: return m_prime;
        case ParamId::beta: return beta;
        case ParamId::alpha: return alpha;
        case ParamId::beta2: return beta2;
        case ParamId::alpha2: return alpha2;
    }
    return 0.0;
}

bool in_domain(const State& s, double tol) {
    return s.S >= -tol && s.I >= -tol && s.S + s.I <= 1.0 + tol;
}

double incidence(const Params& p, const State& s) {
    return p.beta * s.S * s.I / (1.0 + p.alpha * s.I);
}

double treatment(const Params& p, double I) {
    return p.beta2 * I / (1.0 + p.alpha2 * I);
}

State vector_field(const Params& p, const State& s) {
    const double inc = incidence(p, s);
    State out;
    out.S = -inc - p.b * s.S + p.b * p.m * (1.0 - s.I) + p.p * p.delta * s.I;
    out.I = inc - p.p * p.delta * s.I - p.gamma * s.I - treatment(p, s.I);
    return out;
}

Matrix2 jacobian(const Params& p, const State& s) {
    const double den = 1.0 + p.alpha * s.I;
    const double den2 = den * den;
    const double dent = 1.0 + p.alpha2 * s.I;
    Matrix2 j;
    j.m00 = -p.beta * s.I / den - p.b;
    j.m01 = -p.beta * s.S / den2 - p.b * p.m + p.p * p.delta;
    j.m10 = p.beta * s.I / den;
    j.m11 = p.beta * s.S / den2 - p.p * p.delta - p.gamma - p.beta2 / (dent * dent);
    return j;
}

double r0(const Params& p) { return p.beta * p.m / p.pdg2(); }

double r0_star(const Params& p) { return p.beta * p.m / p.pdg(); }

double recovered_fraction(const State& s) { return 1.0 - s.S - s.I; }

State dfe(const Params& p) { return State{p.m, 0.0}; }

}  // namespace sirsat
