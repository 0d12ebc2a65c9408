#include "sirsat/integrate.hpp"

#include "sirsat/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sirsat {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// stage abscissae omitted: the vector field is autonomous

// PI step-size controller constants (Hairer's DOPRI5 defaults).
constexpr double kSafe = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;

struct Deriv {
    double S, I;
};

Deriv rhs(const Params& p, const State& y) {
    const State f = vector_field(p, y);
    return {f.S, f.I};
}

double sup_norm(const Deriv& d) { return std::max(std::abs(d.S), std::abs(d.I)); }

// One accepted step of the stepper, with endpoint derivatives for the cubic
// Hermite dense output.
struct StepRecord {
    double t0, t1;
    State y0, y1;
    Deriv f0, f1;

    State interpolate(double t) const {
        const double h = t1 - t0;
        const double s = (t - t0) / h;
        const double s2 = s * s;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s2 * (3 - 2 * s);
        const double h11 = s2 * (s - 1);
        State out;
        out.S = h00 * y0.S + h10 * h * f0.S + h01 * y1.S + h11 * h * f1.S;
        out.I = h00 * y0.I + h10 * h * f0.I + h01 * y1.I + h11 * h * f1.I;
        return out;
    }
};

double initial_step(const State& y0, const Deriv& f0, double rtol, double atol,
                    double t_end) {
    const double sy_s = atol + rtol * std::abs(y0.S);
    const double sy_i = atol + rtol * std::abs(y0.I);
    const double dnf = std::hypot(f0.S / sy_s, f0.I / sy_i);
    const double dny = std::hypot(y0.S / sy_s, y0.I / sy_i);
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    return std::min(h, t_end);
}

// Drives the stepper from (0, init) to t_end, calling on_step after every
// accepted step; on_step may return false to stop early.
template <typename OnStep>
Termination run_dopri5(const Params& p, const State& init, double t_end,
                       const IntegrateOptions& opt, StepStats& stats, OnStep&& on_step) {
    State y = init;
    Deriv f = rhs(p, y);
    double t = 0.0;
    double h = initial_step(y, f, opt.rtol, opt.atol, t_end);
    double facold = 1e-4;

    if (sup_norm(f) < opt.convergence_fnorm) return Termination::ConvergedToPoint;

    while (t < t_end) {
        h = std::min(h, t_end - t);
        const double floor_h =
            std::max(opt.min_step, 16.0 * std::numeric_limits<double>::epsilon() *
                                       std::max(1.0, std::abs(t)));
        if (h < floor_h && t + h < t_end) {
            std::ostringstream os;
            os << "step size underflow at t = " << t << " (h = " << h << ")";
            throw StepSizeUnderflow(os.str());
        }

        const Deriv k1 = f;
        auto at = [&](double cs, double ds) { return State{y.S + h * cs, y.I + h * ds}; };
        const Deriv k2 = rhs(p, at(a21 * k1.S, a21 * k1.I));
        const Deriv k3 = rhs(p, at(a31 * k1.S + a32 * k2.S, a31 * k1.I + a32 * k2.I));
        const Deriv k4 = rhs(p, at(a41 * k1.S + a42 * k2.S + a43 * k3.S,
                                   a41 * k1.I + a42 * k2.I + a43 * k3.I));
        const Deriv k5 = rhs(p, at(a51 * k1.S + a52 * k2.S + a53 * k3.S + a54 * k4.S,
                                   a51 * k1.I + a52 * k2.I + a53 * k3.I + a54 * k4.I));
        const Deriv k6 =
            rhs(p, at(a61 * k1.S + a62 * k2.S + a63 * k3.S + a64 * k4.S + a65 * k5.S,
                      a61 * k1.I + a62 * k2.I + a63 * k3.I + a64 * k4.I + a65 * k5.I));
        const State ynew = at(b1 * k1.S + b3 * k3.S + b4 * k4.S + b5 * k5.S + b6 * k6.S,
                              b1 * k1.I + b3 * k3.I + b4 * k4.I + b5 * k5.I + b6 * k6.I);
        const Deriv k7 = rhs(p, ynew);

        const double err_s =
            h * (e1 * k1.S + e3 * k3.S + e4 * k4.S + e5 * k5.S + e6 * k6.S + e7 * k7.S);
        const double err_i =
            h * (e1 * k1.I + e3 * k3.I + e4 * k4.I + e5 * k5.I + e6 * k6.I + e7 * k7.I);
        const double sk_s = opt.atol + opt.rtol * std::max(std::abs(y.S), std::abs(ynew.S));
        const double sk_i = opt.atol + opt.rtol * std::max(std::abs(y.I), std::abs(ynew.I));
        const double err = std::sqrt(0.5 * ((err_s / sk_s) * (err_s / sk_s) +
                                            (err_i / sk_i) * (err_i / sk_i)));

        const double fac11 = std::pow(std::max(err, 1e-32), kExpo);
        if (err <= 1.0) {
            // accepted
            const StepRecord rec{t, t + h, y, ynew, k1, k7};
            t += h;
            y = ynew;
            f = k7;  // FSAL
            ++stats.accepted;
            stats.min_step = stats.accepted == 1 ? h : std::min(stats.min_step, h);
            stats.max_step = std::max(stats.max_step, h);

            if (!on_step(rec)) return Termination::TimeLimit;  // caller decided
            if (!in_domain(y, opt.domain_tol)) return Termination::LeftDomainTolerance;
            if (sup_norm(f) < opt.convergence_fnorm) return Termination::ConvergedToPoint;

            const double fac = std::clamp(kSafe / (fac11 / std::pow(facold, kBeta)),
                                          kFacMin, kFacMax);
            facold = std::max(err, 1e-4);
            h *= fac;
        } else {
            ++stats.rejected;
            h *= std::max(kFacMin, kSafe / fac11);
        }
    }
    return Termination::TimeLimit;
}

}  // namespace

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::TimeLimit: return "time_limit";
        case Termination::ConvergedToPoint: return "converged_to_point";
        case Termination::CycleDetected: return "cycle_detected";
        case Termination::LeftDomainTolerance: return "left_domain_tolerance";
    }
    return "?";
}

Trajectory integrate(const Params& p, const State& init, double t_end,
                     const IntegrateOptions& opt) {
    if (!in_domain(init)) {
        std::ostringstream os;
        os << "initial state (" << init.S << ", " << init.I << ") outside D";
        throw InitOutsideDomain(os.str());
    }
    if (t_end <= 0.0) throw std::invalid_argument("integrate: t_end must be > 0");
    if (opt.rtol <= 0.0 || opt.rtol > 1e-2 || opt.atol <= 0.0 || opt.atol > 1e-2) {
        throw std::invalid_argument("integrate: rtol and atol must lie in (0, 1e-2]");
    }

    Trajectory tr;
    tr.samples.push_back({0.0, init});
    const double keep_dt =
        opt.max_samples > 1 ? t_end / static_cast<double>(opt.max_samples - 1) : 0.0;

    State last = init;
    double last_t = 0.0;
    tr.termination = run_dopri5(p, init, t_end, opt, tr.stats, [&](const StepRecord& rec) {
        last = rec.y1;
        last_t = rec.t1;
        if (keep_dt == 0.0 || rec.t1 - tr.samples.back().t >= keep_dt || rec.t1 == t_end) {
            tr.samples.push_back({rec.t1, rec.y1});
        }
        return true;
    });
    if (tr.samples.back().t < last_t) tr.samples.push_back({last_t, last});
    return tr;
}

InvariantCheck verify_invariant_region(const Trajectory& tr, double tol) {
    InvariantCheck chk;
    for (const Sample& s : tr.samples) {
        const double v = std::max({-s.y.S, -s.y.I, s.y.S + s.y.I - 1.0});
        if (v > tol) chk.ok = false;
        chk.worst_violation = std::max(chk.worst_violation, std::max(v, 0.0));
    }
    return chk;
}

std::optional<CycleEstimate> detect_cycle(const Params& p, const State& init,
                                          const CycleOptions& opt) {
    if (!in_domain(init)) throw InitOutsideDomain("detect_cycle: init outside D");

    // Settle past the transient.
    Trajectory settle = integrate(p, init, opt.settle_time, opt.integ);
    if (settle.termination != Termination::TimeLimit) return std::nullopt;
    const State start = settle.back().y;

    double section = opt.section_I;
    if (!std::isfinite(section)) {
        const EquilibriumReport rep = equilibrium_report(p);
        if (rep.e2) {
            section = rep.e2->I;
        } else {
            std::vector<double> is;
            is.reserve(settle.samples.size());
            for (const Sample& s : settle.samples) is.push_back(s.y.I);
            std::nth_element(is.begin(), is.begin() + is.size() / 2, is.end());
            section = is[is.size() / 2];
        }
    }

    // Per-return-interval record: crossing time/S plus extrema and
    // time-averages of the loop that ended at this crossing.
    struct Interval {
        double t_cross, S_cross;
        double i_min, i_max;
        double s_int, i_int, w_int;  // trapezoid accumulators
    };
    std::vector<Interval> laps;
    Interval cur{0.0, 0.0, start.I, start.I, 0.0, 0.0, 0.0};

    StepStats stats;
    run_dopri5(p, start, opt.observe_time, opt.integ, stats, [&](const StepRecord& rec) {
        cur.i_min = std::min(cur.i_min, rec.y1.I);
        cur.i_max = std::max(cur.i_max, rec.y1.I);
        const double w = rec.t1 - rec.t0;
        cur.s_int += w * 0.5 * (rec.y0.S + rec.y1.S);
        cur.i_int += w * 0.5 * (rec.y0.I + rec.y1.I);
        cur.w_int += w;
        const double g0 = rec.y0.I - section;
        const double g1 = rec.y1.I - section;
        if (g0 < 0.0 && g1 >= 0.0) {
            // upward crossing inside the step; refine on the Hermite cubic
            double lo = rec.t0, hi = rec.t1;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (rec.interpolate(mid).I - section < 0.0 ? lo : hi) = mid;
            }
            const double tc = 0.5 * (lo + hi);
            cur.t_cross = tc;
            cur.S_cross = rec.interpolate(tc).S;
            laps.push_back(cur);
            cur = Interval{0.0, 0.0, rec.y1.I, rec.y1.I, 0.0, 0.0, 0.0};
        }
        return true;
    });

    if (laps.size() < 5) return std::nullopt;

    // Need >= 4 consecutive returns agreeing in S and in return time.
    const std::size_t n = laps.size();
    double s_lo = laps[n - 4].S_cross, s_hi = s_lo;
    double t_lo = 0.0, t_hi = 0.0, period_sum = 0.0;
    for (std::size_t i = n - 4; i < n; ++i) {
        s_lo = std::min(s_lo, laps[i].S_cross);
        s_hi = std::max(s_hi, laps[i].S_cross);
        const double dt = laps[i].t_cross - laps[i - 1].t_cross;
        if (i == n - 4) t_lo = t_hi = dt;
        t_lo = std::min(t_lo, dt);
        t_hi = std::max(t_hi, dt);
        period_sum += dt;
    }
    const double period = period_sum / 4.0;
    if (s_hi - s_lo > opt.s_agree_tol) return std::nullopt;
    if ((t_hi - t_lo) > opt.period_rel_tol * period) return std::nullopt;

    // A slowly decaying spiral can satisfy the return-agreement tolerances;
    // a genuine cycle also keeps its amplitude steady across the window.
    const double amp_first = laps[1].i_max - laps[1].i_min;
    const double amp_last = laps[n - 1].i_max - laps[n - 1].i_min;
    if (amp_first <= 0.0 || std::abs(amp_last / amp_first - 1.0) > 0.02) {
        return std::nullopt;
    }

    const Interval& last = laps.back();
    CycleEstimate est;
    est.period = period;
    est.converged = true;
    est.amplitude_I = last.i_max - last.i_min;
    if (last.w_int > 0.0) est.mean_point = State{last.s_int / last.w_int, last.i_int / last.w_int};
    if (est.amplitude_I < opt.amplitude_floor) return std::nullopt;
    return est;
}

}  // namespace sirsat
