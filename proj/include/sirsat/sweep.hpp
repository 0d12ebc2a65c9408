#pragma once

#include <iosfwd>
#include <vector>

#include "sirsat/hopf.hpp"
#include "sirsat/stability.hpp"

namespace sirsat {

struct SweepRow {
    double param_value = 0.0;
    double r0 = 0.0;
    ExistenceCase existence = ExistenceCase::None;
    double I_dfe = 0.0;  // always 0, kept as the DFE branch
    double I_e1 = std::numeric_limits<double>::quiet_NaN();
    double I_e2 = std::numeric_limits<double>::quiet_NaN();
    DfeLocal class_dfe = DfeLocal::Stable;
    EndemicClass class_e1 = EndemicClass::Saddle;  // meaningful iff I_e1 finite
    EndemicClass class_e2 = EndemicClass::Stable;  // meaningful iff I_e2 finite
};

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 2;       // inclusive endpoint count
    bool log_spaced = false;
};

// One-parameter bifurcation diagram: analytic classification at every grid
// value, in grid order.  Grid points where the swept value violates parameter
// validity are skipped.
std::vector<SweepRow> bifurcation_sweep(const Params& base, ParamId param,
                                        const GridSpec& grid, unsigned threads = 0);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct MapCell {
    double alpha2 = 0.0;
    double beta2 = 0.0;
    Region region = Region::NotApplicable;
    bool r0_above_R0_plus = false;
    bool r0_above_P1 = false;
    BifurcationType bif_type = BifurcationType::NotApplicable;
    int n_endemic = 0;
};

// 2-D (alpha2, beta2) classification grid; row-major over alpha2 then beta2.
std::vector<MapCell> region_map(const Params& base, const GridSpec& alpha2_grid,
                                const GridSpec& beta2_grid, unsigned threads = 0);

void write_map_csv(std::ostream& os, const std::vector<MapCell>& cells);

// Scans s over the grid for sign changes, refines each bracket with
// locate_hopf, and deduplicates points closer than one grid cell.
std::vector<HopfReport> hopf_scan(const Params& base, ParamId param,
                                  const GridSpec& grid, unsigned threads = 0);

// Integration spot-checks behind the sweep's analytic classification: every
// stride-th row with a stable or unstable E2 is probed by integrating from a
// small perturbation and watching whether the distance to E2 shrinks or
// grows.  Probes that stay undecided (e.g. captured by a nearby cycle) are
// counted separately and do not disagree.
struct SweepVerification {
    std::size_t checked = 0;
    std::size_t agreed = 0;
    std::size_t undecided = 0;
};

SweepVerification verify_sweep_spot_checks(const Params& base, ParamId param,
                                           const std::vector<SweepRow>& rows,
                                           std::size_t stride = 16);

std::vector<double> grid_values(const GridSpec& g);

}  // namespace sirsat
