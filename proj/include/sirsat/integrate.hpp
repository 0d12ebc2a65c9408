#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sirsat/model.hpp"

namespace sirsat {

class InitOutsideDomain : public std::invalid_argument {
public:
    explicit InitOutsideDomain(const std::string& what) : std::invalid_argument(what) {}
};

class StepSizeUnderflow : public std::runtime_error {
public:
    explicit StepSizeUnderflow(const std::string& what) : std::runtime_error(what) {}
};

enum class Termination { TimeLimit, ConvergedToPoint, CycleDetected, LeftDomainTolerance };
const char* termination_name(Termination t);

struct Sample {
    double t = 0.0;
    State y;
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double min_step = 0.0;
    double max_step = 0.0;
};

struct Trajectory {
    std::vector<Sample> samples;  // strictly increasing in t
    StepStats stats;
    Termination termination = Termination::TimeLimit;

    const Sample& back() const { return samples.back(); }
};

struct IntegrateOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    // Vector-field sup-norm below which the trajectory is declared converged
    // to a point.  Small enough that the end state is within 1e-4 of the
    // equilibrium even along slow eigendirections.
    double convergence_fnorm = 1e-11;
    // Slack on the invariant-region bounds before LeftDomainTolerance.
    double domain_tol = 1e-6;
    // Floor on the step size (0 = machine floor); exceeded -> StepSizeUnderflow.
    double min_step = 0.0;
    // Output thinning: keep every accepted step when 0, else approximately
    // this many samples spread over [0, t_end].
    std::size_t max_samples = 0;
};

// Dormand-Prince 5(4) with PI step-size control.  Rejects inits outside D.
Trajectory integrate(const Params& p, const State& init, double t_end,
                     const IntegrateOptions& opt = {});

struct InvariantCheck {
    bool ok = true;
    double worst_violation = 0.0;  // max over samples of the bound excess
};

// Invariant-region bounds S >= -tol, I >= -tol, S+I <= 1+tol over all samples.
InvariantCheck verify_invariant_region(const Trajectory& tr, double tol = 1e-6);

struct CycleEstimate {
    double period = 0.0;
    double amplitude_I = 0.0;
    State mean_point;
    bool converged = false;  // returns agreed within the detection tolerances
};

struct CycleOptions {
    double settle_time = 5000.0;
    double observe_time = 2000.0;
    // Poincare section I level; NaN = I of E2 when it exists, else the median
    // I of the settled trajectory.
    double section_I = std::numeric_limits<double>::quiet_NaN();
    double s_agree_tol = 1e-5;       // successive returns agree in S
    double period_rel_tol = 1e-4;    // and in return time (relative)
    double amplitude_floor = 1e-6;
    IntegrateOptions integ = {1e-10, 1e-12};
};

// Integrates past the transient, then collects upward crossings of the
// Poincare section; a cycle is reported when >= 4 consecutive returns agree.
std::optional<CycleEstimate> detect_cycle(const Params& p, const State& init,
                                          const CycleOptions& opt = {});

}  // namespace sirsat
