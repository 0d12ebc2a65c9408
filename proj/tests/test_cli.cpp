#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sirsat/param_io.hpp"

namespace {

const std::string cli = SIRSAT_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/sirsat_cli_out.txt";
    const std::string err_path = "/tmp/sirsat_cli_err.txt";
    const std::string cmd = cli + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

const char* kStableFile = "/tmp/sirsat_t5.params";
const char* kThresholdFile = "/tmp/sirsat_t6.params";
const char* kBackwardFile = "/tmp/sirsat_backward_params.params";

void write_param_files() {
    write_file(kStableFile,
               "# globally stable benchmark family\n"
               "b = 0.2\ndelta = 0.01\ngamma = 0.01\nq = 0.98\nm_prime = 0.7\n"
               "beta = 0.2\nalpha = 0.4\nbeta2 = 0.1\nalpha2 = 10\n");
    write_file(kThresholdFile,
               "b = 0.2\ndelta = 0.01\ngamma = 0.01\nq = 0.98\nm_prime = 0.7\n"
               "beta = 0.2\nalpha = 0.4\nbeta2 = 0.0498\nalpha2 = 10\n");
    write_file(kBackwardFile,
               "b = 0.2\ndelta = 0.01\ngamma = 0.01\nq = 0.98\nm_prime = 0.9\n"
               "beta = 0.2\nalpha = 0.4\nbeta2 = 0.01\nalpha2 = 16\n");
}

}  // namespace

TEST_CASE("analyze") {
    write_param_files();

    SUBCASE("globally stable benchmark") {
        const RunResult r = run(std::string("analyze --params ") + kStableFile);
        CHECK(r.exit_code == 0);
        // recomputed thresholds put this set in A3 with r0 below both
        // thresholds; the DFE is locally stable with the global certificate
        CHECK(r.out.find("region A3") != std::string::npos);
        CHECK(r.out.find("stable") != std::string::npos);
        CHECK(r.out.find("[globally stable]") != std::string::npos);
        CHECK(r.out.find("case none") != std::string::npos);
    }

    SUBCASE("r0 = 1 benchmark") {
        const RunResult r = run(std::string("analyze --params ") + kThresholdFile);
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("saddle_at_r0_eq_1") != std::string::npos);
        CHECK(r.out.find("0.11206") != std::string::npos);  // E2 S-coordinate
        CHECK(r.out.find("0.478132") != std::string::npos); // E2 I-coordinate
    }

    SUBCASE("flag overrides beat the file") {
        const RunResult r =
            run(std::string("analyze --params ") + kStableFile + " --beta2 0.0498");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("saddle_at_r0_eq_1") != std::string::npos);
    }

    SUBCASE("missing parameter names the key and exits 2") {
        write_file("/tmp/sirsat_missing.params",
                   "b = 0.2\ndelta = 0.01\ngamma = 0.01\nq = 0.98\nm_prime = 0.7\n"
                   "alpha = 0.4\nbeta2 = 0.1\nalpha2 = 10\n");
        const RunResult r = run("analyze --params /tmp/sirsat_missing.params");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("beta") != std::string::npos);
    }

    SUBCASE("invalid value names the parameter and exits 2") {
        const RunResult r =
            run(std::string("analyze --params ") + kStableFile + " --beta -0.5");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("beta") != std::string::npos);
    }

    SUBCASE("json output round-trips byte-identically") {
        const RunResult r = run(std::string("analyze --json --params ") + kThresholdFile);
        CHECK(r.exit_code == 0);
        const auto parsed = nlohmann::ordered_json::parse(r.out);
        CHECK(parsed.dump(2) + "\n" == r.out);
        CHECK(parsed["thresholds"]["region"] == "A3");
        CHECK(parsed["equilibria"]["case"] == "r0_eq_1_unique");
        CHECK(parsed["bifurcation_type"] == "backward");
    }
}

TEST_CASE("parameter file parsing") {
    write_file("/tmp/sirsat_pf.params",
               "# comment line\n"
               "b = 0.2   # trailing comment\n"
               "delta=0.01\n"
               "\n"
               "gamma = 0.01\n");
    const auto vals = sirsat::read_param_file("/tmp/sirsat_pf.params");
    CHECK(vals.size() == 3);
    CHECK(vals.at("b") == 0.2);
    CHECK(vals.at("delta") == 0.01);

    write_file("/tmp/sirsat_bad1.params", "bb = 0.2\n");
    CHECK_THROWS_AS(sirsat::read_param_file("/tmp/sirsat_bad1.params"),
                    sirsat::ParamFileError);
    write_file("/tmp/sirsat_bad2.params", "b 0.2\n");
    CHECK_THROWS_AS(sirsat::read_param_file("/tmp/sirsat_bad2.params"),
                    sirsat::ParamFileError);
    write_file("/tmp/sirsat_bad3.params", "b = x\n");
    CHECK_THROWS_AS(sirsat::read_param_file("/tmp/sirsat_bad3.params"),
                    sirsat::ParamFileError);
}

TEST_CASE("simulate") {
    write_param_files();
    const RunResult r = run(std::string("simulate --params ") + kStableFile +
                            " --init 0.5,0.3 --t 2000 --out /tmp/sirsat_traj.csv");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp("/tmp/sirsat_traj.csv");
    CHECK(csv.rfind("t,S,I,R\n", 0) == 0);
    // final row within 1e-4 of (0.3, 0)
    const auto last_nl = csv.find_last_of('\n', csv.size() - 2);
    std::istringstream row(csv.substr(last_nl + 1));
    double t, S, I, R;
    char comma;
    row >> t >> comma >> S >> comma >> I >> comma >> R;
    CHECK(std::abs(S - 0.3) < 1e-4);
    CHECK(std::abs(I) < 1e-4);
    CHECK(std::abs(S + I + R - 1.0) < 1e-12);

    SUBCASE("outputs are deterministic") {
        run(std::string("simulate --params ") + kStableFile +
            " --init 0.5,0.3 --t 2000 --out /tmp/sirsat_traj2.csv");
        CHECK(slurp("/tmp/sirsat_traj2.csv") == csv);
    }

    SUBCASE("initial state outside D exits 2") {
        const RunResult bad = run(std::string("simulate --params ") + kStableFile +
                                  " --init 0.9,0.4 --t 10");
        CHECK(bad.exit_code == 2);
    }

    SUBCASE("plot file is written") {
        const RunResult pr = run(std::string("simulate --params ") + kStableFile +
                                 " --init 0.5,0.3 --t 100 --out /tmp/sirsat_traj3.csv"
                                 " --plot /tmp/sirsat_traj3.svg");
        CHECK(pr.exit_code == 0);
        const std::string svg = slurp("/tmp/sirsat_traj3.svg");
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("polyline") != std::string::npos);
    }
}

TEST_CASE("sweep") {
    write_param_files();
    const RunResult r = run(std::string("sweep --params ") + kBackwardFile +
                            " --param beta2 --lo 0 --hi 0.025 -n 400"
                            " --out /tmp/sirsat_sweep.csv --threads 2");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp("/tmp/sirsat_sweep.csv");
    // backward topology: some rows with r0 < 1 carry two endemic branches
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    int n_two = 0, n_rows = 0;
    while (std::getline(lines, line)) {
        ++n_rows;
        if (line.find("two_endemic") != std::string::npos) ++n_two;
    }
    CHECK(n_rows == 400);
    CHECK(n_two > 10);

    // determinism across thread counts
    run(std::string("sweep --params ") + kBackwardFile +
        " --param beta2 --lo 0 --hi 0.025 -n 400 --out /tmp/sirsat_sweep8.csv --threads 7");
    CHECK(slurp("/tmp/sirsat_sweep8.csv") == csv);
}

TEST_CASE("map") {
    write_param_files();
    const RunResult r = run(std::string("map --params ") + kBackwardFile +
                            " --alpha2-lo 1 --alpha2-hi 20 --beta2-lo 0.001"
                            " --beta2-hi 0.2 --res 24 --out /tmp/sirsat_map.csv"
                            " --plot /tmp/sirsat_map.svg");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp("/tmp/sirsat_map.csv");
    CHECK(csv.find(",A1,") != std::string::npos);
    CHECK(csv.find(",A2,") != std::string::npos);
    CHECK(csv.find(",A3,") != std::string::npos);
    const std::string svg = slurp("/tmp/sirsat_map.svg");
    CHECK(svg.find(">A1<") != std::string::npos);
    CHECK(svg.find(">A2<") != std::string::npos);
    CHECK(svg.find(">A3<") != std::string::npos);
}

TEST_CASE("hopf") {
    // family with a known Hopf window in beta2
    write_file("/tmp/sirsat_hopf.params",
               "b = 0.0334\ndelta = 0.6646\ngamma = 0.6356\nq = 0.1761\n"
               "m_prime = 0.1867\nbeta = 5.2439\nalpha = 7.2483\n"
               "beta2 = 1.7359\nalpha2 = 44.7544\n");

    SUBCASE("scan finds and reports the point") {
        const RunResult r = run("hopf --params /tmp/sirsat_hopf.params --param beta2"
                                " --lo 0.6 --hi 1.6 --n-brackets 32 --json");
        CHECK(r.exit_code == 0);
        const auto arr = nlohmann::ordered_json::parse(r.out);
        REQUIRE(arr.is_array());
        REQUIRE(arr.size() == 1);
        CHECK(arr[0]["parameter"] == "beta2");
        CHECK(std::abs(arr[0]["value"].get<double>() - 1.0034) < 1e-3);
        CHECK(arr[0]["a2_bar"].get<double>() < 0.0);
        CHECK(arr[0]["predicted_cycle"] == "stable_orbit");
    }

    SUBCASE("empty scan reports no points") {
        const RunResult r = run("hopf --params /tmp/sirsat_hopf.params --param beta2"
                                " --lo 1.2 --hi 1.5 --n-brackets 8");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("no Hopf points") != std::string::npos);
    }

    SUBCASE("single-bracket locate") {
        const RunResult r = run("hopf --params /tmp/sirsat_hopf.params --param beta2"
                                " --lo 0.6 --hi 1.6 --locate");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("Hopf point: beta2 = 1.0034") != std::string::npos);
    }

    SUBCASE("losing E2 inside a locate bracket exits 3") {
        const RunResult r = run("hopf --params /tmp/sirsat_hopf.params --param beta2"
                                " --lo 0.6 --hi 4.0 --locate");
        CHECK(r.exit_code == 3);
    }
}
