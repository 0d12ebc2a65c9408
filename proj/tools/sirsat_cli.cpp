#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sirsat/integrate.hpp"
#include "sirsat/param_io.hpp"
#include "sirsat/report.hpp"
#include "sirsat/svg.hpp"
#include "sirsat/sweep.hpp"

namespace {

using namespace sirsat;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitRuntime = 3;

struct CommonOpts {
    std::string params_file;
    std::map<std::string, double> overrides;
    std::string out;
    std::string plot;
    bool json = false;
    unsigned threads = 0;
    double rtol = 1e-8;
    double atol = 1e-10;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--params", o.params_file, "parameter file (key = value lines)");
    static const char* keys[] = {"b", "delta", "gamma", "q", "m_prime",
                                 "beta", "alpha", "beta2", "alpha2"};
    for (const char* k : keys) {
        cmd->add_option_function<double>(
            std::string("--") + k, [&o, k](double v) { o.overrides[k] = v; },
            std::string("override parameter ") + k);
    }
    cmd->add_option("--out", o.out, "output file path");
    cmd->add_option("--plot", o.plot, "write an SVG plot to this path");
    cmd->add_flag("--json", o.json, "emit machine-readable JSON");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    cmd->add_option("--rtol", o.rtol, "integrator relative tolerance");
    cmd->add_option("--atol", o.atol, "integrator absolute tolerance");
}

Params load_params(const CommonOpts& o) {
    std::map<std::string, double> file_values;
    if (!o.params_file.empty()) file_values = read_param_file(o.params_file);
    return make_params(file_values, o.overrides);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

ParamId parse_param_or_throw(const std::string& name) {
    ParamId id;
    if (!parse_param_id(name, id)) {
        throw ParamFileError("unknown sweep parameter: " + name);
    }
    return id;
}

void plot_sweep(const std::string& path, const std::vector<SweepRow>& rows) {
    SvgPlot plot("bifurcation diagram", "r0", "I at equilibrium");
    std::vector<double> r0s, dfe_i;
    std::vector<double> e1_r0, e1_i, e2s_r0, e2s_i, e2u_r0, e2u_i;
    for (const SweepRow& r : rows) {
        r0s.push_back(r.r0);
        dfe_i.push_back(0.0);
        if (std::isfinite(r.I_e1)) {
            e1_r0.push_back(r.r0);
            e1_i.push_back(r.I_e1);
        }
        if (std::isfinite(r.I_e2)) {
            const bool stable = r.class_e2 == EndemicClass::Stable;
            (stable ? e2s_r0 : e2u_r0).push_back(r.r0);
            (stable ? e2s_i : e2u_i).push_back(r.I_e2);
        }
    }
    plot.add_polyline(r0s, dfe_i, "#888", 1.5, "DFE branch");
    plot.add_points(e1_r0, e1_i, "#d62728", 2.0, "E1 (saddle)");
    plot.add_points(e2s_r0, e2s_i, "#1f77b4", 2.0, "E2 stable");
    plot.add_points(e2u_r0, e2u_i, "#ff7f0e", 2.0, "E2 unstable");
    plot.write(path);
}

void plot_map(const std::string& path, const std::vector<MapCell>& cells) {
    SvgPlot plot("treatment-plane regions", "alpha2", "beta2");
    // infer cell half-widths from the grid
    double da = 0.0, db = 0.0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const double dda = std::abs(cells[i].alpha2 - cells[0].alpha2);
        const double ddb = std::abs(cells[i].beta2 - cells[0].beta2);
        if (dda > 0 && (da == 0 || dda < da)) da = dda;
        if (ddb > 0 && (db == 0 || ddb < db)) db = ddb;
    }
    for (const MapCell& c : cells) {
        const char* color = "#e0e0e0";
        switch (c.region) {
            case Region::A1: color = "#a6cee3"; break;
            case Region::A2: color = "#b2df8a"; break;
            case Region::A3: color = c.n_endemic == 2 ? "#e31a1c" : "#fdbf6f"; break;
            case Region::NotApplicable: break;
        }
        plot.add_cell(c.alpha2 - da / 2, c.beta2 - db / 2, c.alpha2 + da / 2,
                      c.beta2 + db / 2, color);
    }
    // region labels at the centroid of each class
    for (Region reg : {Region::A1, Region::A2, Region::A3}) {
        double sx = 0, sy = 0;
        std::size_t n = 0;
        for (const MapCell& c : cells) {
            if (c.region == reg) {
                sx += c.alpha2;
                sy += c.beta2;
                ++n;
            }
        }
        if (n > 0) plot.add_label(sx / n, sy / n, region_name(reg));
    }
    plot.write(path);
}

int run(int argc, char** argv) {
    CLI::App app{"stability and bifurcation analysis of the SIR model with saturated "
                 "incidence and saturated treatment"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* analyze = app.add_subcommand("analyze", "thresholds, equilibria and stability");
    add_common(analyze, o);

    auto* sweep = app.add_subcommand("sweep", "1-D bifurcation diagram over a parameter");
    add_common(sweep, o);
    std::string sweep_param = "beta2";
    double sweep_lo = 0.0, sweep_hi = 0.0;
    std::size_t sweep_n = 200;
    bool sweep_log = false;
    sweep->add_option("--param", sweep_param, "swept parameter name");
    sweep->add_option("--lo", sweep_lo, "lower bound")->required();
    sweep->add_option("--hi", sweep_hi, "upper bound")->required();
    sweep->add_option("-n,--n", sweep_n, "grid points (inclusive endpoints)");
    sweep->add_flag("--log", sweep_log, "log-spaced grid");
    bool sweep_verify = false;
    sweep->add_flag("--verify", sweep_verify,
                    "integration spot-checks on a subsample of grid points");

    auto* map_cmd = app.add_subcommand("map", "2-D (alpha2, beta2) region map");
    add_common(map_cmd, o);
    double a2_lo = 0.0, a2_hi = 0.0, b2_lo = 0.0, b2_hi = 0.0;
    std::size_t map_res = 100;
    map_cmd->add_option("--alpha2-lo", a2_lo, "alpha2 lower bound")->required();
    map_cmd->add_option("--alpha2-hi", a2_hi, "alpha2 upper bound")->required();
    map_cmd->add_option("--beta2-lo", b2_lo, "beta2 lower bound")->required();
    map_cmd->add_option("--beta2-hi", b2_hi, "beta2 upper bound")->required();
    map_cmd->add_option("--res", map_res, "grid resolution per axis");

    auto* simulate = app.add_subcommand("simulate", "integrate a trajectory");
    add_common(simulate, o);
    std::string init_str = "0.5,0.3";
    double t_end = 100.0;
    bool phase = false;
    simulate->add_option("--init", init_str, "initial state S,I");
    simulate->add_option("--t", t_end, "integration time");
    simulate->add_flag("--phase", phase, "plot the (S, I) phase portrait instead of series");

    auto* hopf_cmd = app.add_subcommand("hopf", "scan or locate Hopf points of E2");
    add_common(hopf_cmd, o);
    std::string hopf_param = "beta2";
    double hopf_lo = 0.0, hopf_hi = 0.0;
    std::size_t hopf_brackets = 64;
    bool hopf_locate = false;
    hopf_cmd->add_option("--param", hopf_param, "scanned parameter name");
    hopf_cmd->add_option("--lo", hopf_lo, "lower bound")->required();
    hopf_cmd->add_option("--hi", hopf_hi, "upper bound")->required();
    hopf_cmd->add_option("--n-brackets", hopf_brackets, "scan grid size");
    hopf_cmd->add_flag("--locate", hopf_locate,
                       "treat [lo, hi] as a single bracket for s = 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        const Params p = load_params(o);

        if (analyze->parsed()) {
            const Analysis a(p);
            if (o.json) {
                const std::string text = to_json(a).dump(2) + "\n";
                if (!o.out.empty()) {
                    open_out(o.out) << text;
                } else {
                    std::cout << text;
                }
            } else {
                std::cout << format_text(a);
            }
            return kExitOk;
        }

        if (sweep->parsed()) {
            const GridSpec grid{sweep_lo, sweep_hi, sweep_n, sweep_log};
            const auto rows = bifurcation_sweep(p, parse_param_or_throw(sweep_param), grid,
                                                o.threads);
            if (!o.out.empty()) {
                auto f = open_out(o.out);
                write_sweep_csv(f, rows);
            } else {
                write_sweep_csv(std::cout, rows);
            }
            if (!o.plot.empty()) plot_sweep(o.plot, rows);
            if (sweep_verify) {
                const SweepVerification v =
                    verify_sweep_spot_checks(p, parse_param_or_throw(sweep_param), rows);
                std::cerr << "verify: " << v.agreed << "/" << v.checked
                          << " spot checks agreed (" << v.undecided << " undecided)\n";
                if (v.agreed != v.checked) {
                    throw std::runtime_error("sweep verification disagreed with the "
                                             "analytic classification");
                }
            }
            return kExitOk;
        }

        if (map_cmd->parsed()) {
            const GridSpec ga{a2_lo, a2_hi, map_res, false};
            const GridSpec gb{b2_lo, b2_hi, map_res, false};
            const auto cells = region_map(p, ga, gb, o.threads);
            if (!o.out.empty()) {
                auto f = open_out(o.out);
                write_map_csv(f, cells);
            } else {
                write_map_csv(std::cout, cells);
            }
            if (!o.plot.empty()) plot_map(o.plot, cells);
            return kExitOk;
        }

        if (simulate->parsed()) {
            const auto comma = init_str.find(',');
            if (comma == std::string::npos) {
                throw ParamFileError("--init expects S,I");
            }
            State init;
            init.S = std::stod(init_str.substr(0, comma));
            init.I = std::stod(init_str.substr(comma + 1));
            IntegrateOptions iopt;
            iopt.rtol = o.rtol;
            iopt.atol = o.atol;
            iopt.max_samples = 5000;
            const Trajectory tr = integrate(p, init, t_end, iopt);

            auto clamp0 = [](double x) { return x < 0.0 && x > -1e-6 ? 0.0 : x; };
            auto write_csv = [&](std::ostream& os) {
                os << "t,S,I,R\n";
                os << std::setprecision(17);
                for (const Sample& s : tr.samples) {
                    const double S = clamp0(s.y.S), I = clamp0(s.y.I);
                    os << s.t << ',' << S << ',' << I << ','
                       << clamp0(1.0 - S - I) << '\n';
                }
            };
            if (!o.out.empty()) {
                auto f = open_out(o.out);
                write_csv(f);
            } else {
                write_csv(std::cout);
            }
            std::cerr << "termination: " << termination_name(tr.termination) << " after "
                      << tr.stats.accepted << " steps\n";

            if (!o.plot.empty()) {
                std::vector<double> ts, ss, is, rs;
                for (const Sample& s : tr.samples) {
                    ts.push_back(s.t);
                    ss.push_back(s.y.S);
                    is.push_back(s.y.I);
                    rs.push_back(recovered_fraction(s.y));
                }
                if (phase) {
                    SvgPlot plot("phase portrait", "S", "I");
                    plot.add_polyline(ss, is, "#1f77b4", 1.5, "trajectory");
                    plot.write(o.plot);
                } else {
                    SvgPlot plot("trajectory", "t", "fraction");
                    plot.add_polyline(ts, ss, "#1f77b4", 1.5, "S");
                    plot.add_polyline(ts, is, "#d62728", 1.5, "I");
                    plot.add_polyline(ts, rs, "#2ca02c", 1.5, "R");
                    plot.write(o.plot);
                }
            }
            return kExitOk;
        }

        if (hopf_cmd->parsed()) {
            std::vector<HopfReport> reports;
            if (hopf_locate) {
                const auto rep =
                    locate_hopf(p, parse_param_or_throw(hopf_param), hopf_lo, hopf_hi);
                if (rep) reports.push_back(*rep);
            } else {
                const GridSpec grid{hopf_lo, hopf_hi, hopf_brackets, false};
                reports = hopf_scan(p, parse_param_or_throw(hopf_param), grid, o.threads);
            }
            if (o.json) {
                Json arr = Json::array();
                for (const HopfReport& r : reports) arr.push_back(to_json(r));
                const std::string text = arr.dump(2) + "\n";
                if (!o.out.empty()) {
                    open_out(o.out) << text;
                } else {
                    std::cout << text;
                }
            } else {
                if (reports.empty()) {
                    std::cout << "no Hopf points found in ["
                              << hopf_lo << ", " << hopf_hi << "]\n";
                }
                for (const HopfReport& r : reports) {
                    std::cout << "Hopf point: " << param_name(r.parameter) << " = "
                              << std::setprecision(12) << r.parameter_value << "  E2 = ("
                              << r.e2.S << ", " << r.e2.I << ")  Lambda = " << r.Lambda
                              << "  a2_bar = " << r.lyapunov.a2_bar << " (+- "
                              << r.lyapunov.error_estimate
                              << ")  cycle: " << cycle_prediction_name(r.predicted_cycle)
                              << "\n";
                }
            }
            return kExitOk;
        }
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParamFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InitOutsideDomain& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
