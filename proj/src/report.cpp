#include "sirsat/report.hpp"

#include <cmath>
#include <sstream>

namespace sirsat {

namespace {

Json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

Json state_json(const State& s) { return Json{{"S", s.S}, {"I", s.I}}; }

Json stability_entry(const std::string& which, const Params& p, const State& at,
                     const char* cls, std::optional<double> s_value,
                     std::optional<double> h_value, std::optional<bool> global_cert) {
    const CharPolyQuantities cp = char_poly(p, at);
    const auto ev = eigenvalues_at(p, at);
    Json e;
    e["equilibrium"] = which;
    e["class"] = cls;
    e["W"] = cp.W;
    e["U"] = cp.U;
    e["s"] = s_value ? Json(*s_value) : Json(nullptr);
    e["H"] = h_value ? Json(*h_value) : Json(nullptr);
    e["eigenvalues"] = Json::array({Json::array({ev[0].real(), ev[0].imag()}),
                                    Json::array({ev[1].real(), ev[1].imag()})});
    if (global_cert) e["global_certificate"] = *global_cert;
    return e;
}

}  // namespace

Analysis::Analysis(const Params& p)
    : params(p), thr(thresholds(p)), eq(equilibrium_report(p)), dfe_verdict(classify_dfe(p)),
      bif_type(bifurcation_type(p)) {
    if (eq.e1) e1_class = classify_endemic(p, WhichEndemic::E1);
    if (eq.e2) e2_class = classify_endemic(p, WhichEndemic::E2);
}

Json to_json(const Params& p) {
    Json j;
    j["b"] = p.b;
    j["delta"] = p.delta;
    j["gamma"] = p.gamma;
    j["q"] = p.q;
    j["m_prime"] = p.m_prime;
    j["beta"] = p.beta;
    j["alpha"] = p.alpha;
    j["beta2"] = p.beta2;
    j["alpha2"] = p.alpha2;
    j["p"] = p.p;
    j["m"] = p.m;
    return j;
}

Json to_json(const Thresholds& t) {
    Json j;
    j["r0"] = t.r0;
    j["r0_star"] = t.r0_star;
    j["P1"] = number_or_null(t.P1);
    j["R0_plus"] = number_or_null(t.R0_plus);
    j["R0_minus"] = number_or_null(t.R0_minus);
    j["alpha2_0"] = number_or_null(t.alpha2_0);
    j["g_alpha2"] = number_or_null(t.g_of_alpha2);
    j["region"] = region_name(t.region);
    j["radicand_negative"] = t.radicand_negative;
    if (t.region == Region::A3) {
        j["subregion"] = Json{{"r0_above_R0_plus", t.r0_above_R0_plus},
                              {"r0_above_P1", t.r0_above_P1}};
    } else {
        j["subregion"] = nullptr;
    }
    return j;
}

Json to_json(const EquilibriumReport& r) {
    Json j;
    j["case"] = existence_case_name(r.existence_case);
    j["dfe"] = state_json(r.dfe);
    j["e1"] = r.e1 ? state_json(*r.e1) : Json(nullptr);
    j["e2"] = r.e2 ? state_json(*r.e2) : Json(nullptr);
    return j;
}

Json to_json(const Analysis& a) {
    Json j;
    j["params"] = to_json(a.params);
    j["thresholds"] = to_json(a.thr);
    j["equilibria"] = to_json(a.eq);

    Json stab = Json::array();
    std::optional<double> h;
    if (a.dfe_verdict.local == DfeLocal::SaddleAtR0EqualOne ||
        a.dfe_verdict.local == DfeLocal::Degenerate) {
        try {
            h = center_manifold(a.params).H;
        } catch (const NotAtThreshold&) {
        }
    }
    stab.push_back(stability_entry("dfe", a.params, a.eq.dfe,
                                   dfe_local_name(a.dfe_verdict.local), std::nullopt, h,
                                   a.dfe_verdict.global_certificate));
    if (a.eq.e1) {
        stab.push_back(stability_entry("e1", a.params, *a.eq.e1,
                                       endemic_class_name(*a.e1_class), std::nullopt,
                                       std::nullopt, std::nullopt));
    }
    if (a.eq.e2) {
        std::optional<double> s;
        const QuadraticCoeffs qc = quadratic_coeffs(a.params);
        if (qc.discriminant >= 0.0) s = s_indicator(a.params, qc).s;
        stab.push_back(stability_entry("e2", a.params, *a.eq.e2,
                                       endemic_class_name(*a.e2_class), s, std::nullopt,
                                       std::nullopt));
    }
    j["stability"] = stab;
    j["bifurcation_type"] = bifurcation_type_name(a.bif_type);
    return j;
}

Json to_json(const HopfReport& h) {
    Json j;
    j["parameter"] = param_name(h.parameter);
    j["value"] = h.parameter_value;
    j["e2"] = state_json(h.e2);
    j["Lambda"] = h.Lambda;
    j["a2_bar"] = h.lyapunov.a2_bar;
    j["a2_bar_error_estimate"] = h.lyapunov.error_estimate;
    j["transversality"] = h.trans.d_re_dlambda_ds;
    j["predicted_cycle"] = cycle_prediction_name(h.predicted_cycle);
    return j;
}

std::string format_text(const Analysis& a) {
    std::ostringstream os;
    os.precision(6);
    const Thresholds& t = a.thr;
    os << "reproduction numbers:  r0 = " << t.r0 << "   r0* = " << t.r0_star << "\n";
    os << "thresholds:            P1 = " << t.P1;
    if (!t.radicand_negative) {
        os << "   R0+ = " << t.R0_plus << "   R0- = " << t.R0_minus;
    } else {
        os << "   R0+/- not real (radicand negative)";
    }
    os << "\n";
    if (t.region != Region::NotApplicable) {
        os << "treatment plane:       alpha2_0 = " << t.alpha2_0
           << "   g(alpha2) = " << t.g_of_alpha2 << "   region " << region_name(t.region);
        if (t.region == Region::A3) {
            os << "  (r0 " << (t.r0_above_R0_plus ? ">" : "<=") << " R0+, r0 "
               << (t.r0_above_P1 ? ">" : "<=") << " P1)";
        }
        os << "\n";
    } else {
        os << "treatment plane:       r0* <= 1, region classification not applicable\n";
    }
    os << "bifurcation at r0=1:   " << bifurcation_type_name(a.bif_type) << "\n";
    os << "equilibria:            case " << existence_case_name(a.eq.existence_case) << "\n";
    os << "  dfe  (" << a.eq.dfe.S << ", " << a.eq.dfe.I << ")  "
       << dfe_local_name(a.dfe_verdict.local)
       << (a.dfe_verdict.global_certificate ? "  [globally stable]" : "") << "\n";
    if (a.eq.e1) {
        os << "  E1   (" << a.eq.e1->S << ", " << a.eq.e1->I << ")  "
           << endemic_class_name(*a.e1_class) << "\n";
    }
    if (a.eq.e2) {
        os << "  E2   (" << a.eq.e2->S << ", " << a.eq.e2->I << ")  "
           << endemic_class_name(*a.e2_class) << "\n";
    }
    return os.str();
}

}  // namespace sirsat
