#include "sirsat/sweep.hpp"

#include "sirsat/integrate.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

namespace sirsat {

namespace {

unsigned resolve_threads(unsigned requested, std::size_t work) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// Runs fn(i) for i in [0, n) across threads; results land by index, so the
// output is identical to a serial loop.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    const unsigned nt = resolve_threads(threads, n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

void csv_number(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
    } else {
        os << std::setprecision(17) << v;
    }
}

}  // namespace

std::vector<double> grid_values(const GridSpec& g) {
    if (g.n < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (g.log_spaced && (g.lo <= 0.0 || g.hi <= 0.0)) {
        throw std::invalid_argument("log-spaced grid needs positive bounds");
    }
    std::vector<double> out(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(g.n - 1);
        out[i] = g.log_spaced ? g.lo * std::pow(g.hi / g.lo, f) : g.lo + f * (g.hi - g.lo);
    }
    out.back() = g.hi;
    return out;
}

std::vector<SweepRow> bifurcation_sweep(const Params& base, ParamId param,
                                        const GridSpec& grid, unsigned threads) {
    const std::vector<double> xs = grid_values(grid);
    std::vector<SweepRow> rows(xs.size());
    std::vector<char> valid(xs.size(), 0);

    parallel_for(xs.size(), threads, [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.param_value = xs[i];
        Params p = base;
        try {
            p = base.with(param, xs[i]);
        } catch (const InvalidParams&) {
            return;  // grid point outside parameter validity
        }
        valid[i] = 1;
        row.r0 = r0(p);
        const EquilibriumReport rep = equilibrium_report(p);
        row.existence = rep.existence_case;
        row.class_dfe = classify_dfe(p).local;
        if (rep.e1) {
            row.I_e1 = rep.e1->I;
            row.class_e1 = classify_endemic(p, WhichEndemic::E1);
        }
        if (rep.e2) {
            row.I_e2 = rep.e2->I;
            row.class_e2 = classify_endemic(p, WhichEndemic::E2);
        }
    });

    std::vector<SweepRow> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (valid[i]) out.push_back(rows[i]);
    }
    return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "param_value,r0,case,I_dfe,I_e1,I_e2,class_dfe,class_e1,class_e2\n";
    for (const SweepRow& r : rows) {
        csv_number(os, r.param_value);
        os << ',';
        csv_number(os, r.r0);
        os << ',' << existence_case_name(r.existence) << ',';
        csv_number(os, r.I_dfe);
        os << ',';
        csv_number(os, r.I_e1);
        os << ',';
        csv_number(os, r.I_e2);
        os << ',' << dfe_local_name(r.class_dfe) << ','
           << (std::isnan(r.I_e1) ? "" : endemic_class_name(r.class_e1)) << ','
           << (std::isnan(r.I_e2) ? "" : endemic_class_name(r.class_e2)) << '\n';
    }
}

std::vector<MapCell> region_map(const Params& base, const GridSpec& alpha2_grid,
                                const GridSpec& beta2_grid, unsigned threads) {
    const std::vector<double> a2s = grid_values(alpha2_grid);
    const std::vector<double> b2s = grid_values(beta2_grid);
    std::vector<MapCell> cells(a2s.size() * b2s.size());

    parallel_for(cells.size(), threads, [&](std::size_t idx) {
        const std::size_t i = idx / b2s.size();
        const std::size_t j = idx % b2s.size();
        MapCell& cell = cells[idx];
        cell.alpha2 = a2s[i];
        cell.beta2 = b2s[j];
        Params p = base;
        try {
            p = base.with(ParamId::alpha2, a2s[i]).with(ParamId::beta2, b2s[j]);
        } catch (const InvalidParams&) {
            return;
        }
        const Thresholds t = thresholds(p);
        cell.region = t.region;
        cell.r0_above_R0_plus = t.r0_above_R0_plus;
        cell.r0_above_P1 = t.r0_above_P1;
        cell.bif_type = bifurcation_type(p);
        const EquilibriumReport rep = equilibrium_report(p);
        if (rep.existence_case == ExistenceCase::TwoEndemic) {
            cell.n_endemic = 2;
        } else if (rep.e2) {
            cell.n_endemic = 1;
        }
    });
    return cells;
}

void write_map_csv(std::ostream& os, const std::vector<MapCell>& cells) {
    os << "alpha2,beta2,region,subregion,bif_type,n_endemic\n";
    for (const MapCell& c : cells) {
        csv_number(os, c.alpha2);
        os << ',';
        csv_number(os, c.beta2);
        os << ',' << region_name(c.region) << ',';
        if (c.region == Region::A3) {
            os << (c.r0_above_R0_plus ? "A3_2" : "A3_1") << '+'
               << (c.r0_above_P1 ? "A3_4" : "A3_3");
        }
        os << ',' << bifurcation_type_name(c.bif_type) << ',' << c.n_endemic << '\n';
    }
}

SweepVerification verify_sweep_spot_checks(const Params& base, ParamId param,
                                           const std::vector<SweepRow>& rows,
                                           std::size_t stride) {
    SweepVerification v;
    for (std::size_t i = 0; i < rows.size(); i += std::max<std::size_t>(stride, 1)) {
        const SweepRow& row = rows[i];
        if (!std::isfinite(row.I_e2)) continue;
        if (row.class_e2 != EndemicClass::Stable && row.class_e2 != EndemicClass::Unstable) {
            continue;
        }
        const Params p = base.with(param, row.param_value);
        const EquilibriumReport rep = equilibrium_report(p);
        if (!rep.e2) continue;
        const State e2 = *rep.e2;
        State y{std::min(e2.S * 1.01, 1.0 - e2.I), e2.I * 1.01};
        const double d0 = std::hypot(y.S - e2.S, y.I - e2.I);
        int observed = 0;
        for (int chunk = 0; chunk < 10 && observed == 0; ++chunk) {
            const Trajectory tr = integrate(p, y, 2000.0, {});
            y = tr.back().y;
            const double d = std::hypot(y.S - e2.S, y.I - e2.I);
            if (d < 0.1 * d0) observed = +1;
            if (d > 10.0 * d0) observed = -1;
            if (tr.termination == Termination::ConvergedToPoint) {
                observed = d < 0.1 * d0 ? +1 : observed;
                break;
            }
        }
        if (observed == 0) {
            ++v.undecided;
            continue;
        }
        ++v.checked;
        const bool stable_observed = observed > 0;
        if (stable_observed == (row.class_e2 == EndemicClass::Stable)) ++v.agreed;
    }
    return v;
}

std::vector<HopfReport> hopf_scan(const Params& base, ParamId param, const GridSpec& grid,
                                  unsigned threads) {
    const std::vector<double> xs = grid_values(grid);
    std::vector<double> svals(xs.size(), std::numeric_limits<double>::quiet_NaN());

    parallel_for(xs.size(), threads, [&](std::size_t i) {
        try {
            const Params p = base.with(param, xs[i]);
            const QuadraticCoeffs qc = quadratic_coeffs(p);
            if (qc.discriminant < 0.0) return;
            if (endemic_roots(qc).i2 <= 0.0) return;
            svals[i] = s_indicator(p, qc).s;
        } catch (const InvalidParams&) {
        } catch (const NoSuchEquilibrium&) {
        }
    });

    std::vector<HopfReport> found;
    const double cell = std::abs(xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (std::isnan(svals[i]) || std::isnan(svals[i + 1])) continue;
        if ((svals[i] > 0.0) == (svals[i + 1] > 0.0)) continue;
        std::optional<HopfReport> rep;
        try {
            rep = locate_hopf(base, param, xs[i], xs[i + 1]);
        } catch (const LostEquilibrium&) {
            continue;
        }
        if (!rep) continue;
        bool dup = false;
        for (const HopfReport& r : found) {
            if (std::abs(r.parameter_value - rep->parameter_value) < cell) dup = true;
        }
        if (!dup) found.push_back(*rep);
    }
    return found;
}

}  // namespace sirsat
