#pragma once

#include <string>

#include <json.hpp>

#include "sirsat/hopf.hpp"
#include "sirsat/stability.hpp"

namespace sirsat {

using Json = nlohmann::ordered_json;

// Full analysis of one parameter set: thresholds, region, equilibria,
// per-equilibrium stability verdicts, bifurcation type.
struct Analysis {
    Params params;
    Thresholds thr;
    EquilibriumReport eq;
    DfeVerdict dfe_verdict;
    std::optional<EndemicClass> e1_class;
    std::optional<EndemicClass> e2_class;
    BifurcationType bif_type = BifurcationType::NotApplicable;

    explicit Analysis(const Params& p);
};

Json to_json(const Params& p);
Json to_json(const Thresholds& t);
Json to_json(const EquilibriumReport& r);
Json to_json(const Analysis& a);
Json to_json(const HopfReport& h);

// Human-readable analysis report.
std::string format_text(const Analysis& a);

}  // namespace sirsat
