#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sirsat/hopf.hpp"

using namespace sirsat;
using test::Rng;

namespace {

// Any parameter set with a positive E2.
std::optional<std::pair<Params, State>> random_with_e2(Rng& rng) {
    const Params p = test::random_params(rng);
    const QuadraticCoeffs c = quadratic_coeffs(p);
    if (c.discriminant <= 0.0) return std::nullopt;
    const EndemicRoots r = endemic_roots(c);
    if (r.i2 <= 1e-8 || r.i2 > 1.0) return std::nullopt;
    const State e2{s_of_i(p, r.i2), r.i2};
    if (e2.S <= 0.0 || e2.S + e2.I > 1.0) return std::nullopt;
    return std::make_pair(p, e2);
}

}  // namespace

TEST_CASE("shifted system reproduces the vector field and Jacobian") {
    Rng rng(113);
    int n = 0;
    while (n < 500) {
        const auto pe = random_with_e2(rng);
        if (!pe) continue;
        ++n;
        const auto& [p, e2] = *pe;
        const ShiftedSystem sys = shifted_system(p, e2);

        // residual terms vanish at a true equilibrium
        CHECK(std::abs(sys.c7) < 1e-12);
        CHECK(std::abs(sys.c8) < 1e-12);

        // shifted RHS equals the vector field at the translated point
        for (int k = 0; k < 20; ++k) {
            const double x = rng.uniform(-0.02, 0.02);
            const double y = rng.uniform(-std::min(0.02, 0.9 * e2.I), 0.02);
            const State direct = vector_field(p, State{e2.S + x, e2.I + y});
            const State shifted = sys.eval(p, x, y);
            const double scale = std::abs(direct.S) + std::abs(direct.I) + 1e-12;
            CHECK(std::abs(direct.S - shifted.S) < 1e-11 * std::max(1.0, scale));
            CHECK(std::abs(direct.I - shifted.I) < 1e-11 * std::max(1.0, scale));
        }

        // assembled linear part equals the Jacobian entrywise
        const Matrix2 lin = sys.linear_part(p);
        const Matrix2 jac = jacobian(p, e2);
        CHECK(lin.m00 == doctest::Approx(jac.m00).epsilon(1e-10));
        CHECK(lin.m01 == doctest::Approx(jac.m01).epsilon(1e-10));
        CHECK(lin.m10 == doctest::Approx(jac.m10).epsilon(1e-10));
        CHECK(lin.m11 == doctest::Approx(jac.m11).epsilon(1e-10));

        // a21 carries a factor I2
        CHECK(sys.a21 == doctest::Approx(p.beta * e2.I * (1.0 + p.alpha2 * e2.I)));
    }
}

TEST_CASE("shifted_system rejects non-equilibria") {
    const Params p = test::threshold_params();
    const EquilibriumReport rep = equilibrium_report(p);
    REQUIRE(rep.e2);
    CHECK_THROWS_AS(shifted_system(p, State{rep.e2->S + 0.01, rep.e2->I}),
                    EquilibriumResidualTooLarge);
}

TEST_CASE("c4 against the Taylor oracle") {
    // c4 multiplies x y^2 in the numerator of the y' equation; recover it by
    // finite-differencing R(x, y) = f_I(x+S2, y+I2) * d1(y) * d2(y), whose
    // third mixed partial d^3 R / dx dy^2 at 0 equals 2 c4.
    Rng rng(127);
    int n = 0;
    while (n < 200) {
        const auto pe = random_with_e2(rng);
        if (!pe) continue;
        const auto& [p, e2] = *pe;
        if (e2.I < 0.05) continue;  // need room for the stencil below
        ++n;
        const ShiftedSystem sys = shifted_system(p, e2);
        auto R = [&](double x, double y) {
            const State f = vector_field(p, State{e2.S + x, e2.I + y});
            const double d1 = 1.0 + p.alpha * y + p.alpha * e2.I;
            const double d2 = 1.0 + p.alpha2 * y + p.alpha2 * e2.I;
            return f.I * d1 * d2;
        };
        const double h = 1e-3;
        auto dyy = [&](double x) { return (R(x, h) - 2.0 * R(x, 0.0) + R(x, -h)) / (h * h); };
        const double dxyy = (dyy(h) - dyy(-h)) / (2.0 * h);
        const double c4 = 0.5 * dxyy;
        CHECK(c4 == doctest::Approx(sys.c4).epsilon(1e-5));
        CHECK(sys.c4 == doctest::Approx(p.beta * p.alpha2).epsilon(1e-14));
    }
}

TEST_CASE("normal form at a Hopf point") {
    const test::HopfFamily fam = test::hopf_families()[0];
    const auto rep = locate_hopf(fam.params, ParamId::beta2, fam.beta2_lo, fam.beta2_hi);
    REQUIRE(rep);
    const Params p = fam.params.with(ParamId::beta2, rep->parameter_value);
    const NormalForm nf = normal_form(p, rep->e2);

    SUBCASE("change of variables produces the rotation form") {
        // u' = Lambda v + H1, v' = -Lambda u + H2: build the transformed
        // linear part T J T^{-1} from the change of variables and compare.
        const Matrix2 J = jacobian(p, rep->e2);
        const double u1 = 1.0 + p.alpha * rep->e2.I;
        const double t10 = nf.sys.a11 / (nf.Lambda * u1);
        const double t11 = nf.sys.a12 / (nf.Lambda * u1);
        // T = [[1, 0], [t10, t11]]
        const double j00 = J.m00, j01 = J.m01, j10 = J.m10, j11 = J.m11;
        Matrix2 R;
        // rows of T J:
        const double a = j00, bq = j01;
        const double c = t10 * j00 + t11 * j10, d = t10 * j01 + t11 * j11;
        // times T^{-1} = 1/t11 [[t11, 0], [-t10, 1]]
        R.m00 = a - bq * t10 / t11;
        R.m01 = bq / t11;
        R.m10 = c - d * t10 / t11;
        R.m11 = d / t11;
        CHECK(std::abs(R.m00) < 1e-10);
        CHECK(std::abs(R.m11) < 1e-10);
        CHECK(R.m01 == doctest::Approx(nf.Lambda).epsilon(1e-10));
        CHECK(R.m10 == doctest::Approx(-nf.Lambda).epsilon(1e-10));
    }

    SUBCASE("H1 closed form equals the composition") {
        Rng rng(131);
        for (int k = 0; k < 200; ++k) {
            const double u = rng.uniform(-5e-3, 5e-3);
            const double v = rng.uniform(-5e-3, 5e-3);
            const double a = nf.H1(p, u, v);
            const double b = nf.H1_closed_form(p, u, v);
            CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
        }
    }

    SUBCASE("H1/H2 reconstruct the shifted vector field") {
        // map (u', v') back through the change of variables and compare with
        // the shifted RHS; this is the independent validation path for H2
        Rng rng(137);
        const double u1 = 1.0 + p.alpha * rep->e2.I;
        for (int k = 0; k < 200; ++k) {
            const double u = rng.uniform(-3e-3, 3e-3);
            const double v = rng.uniform(-3e-3, 3e-3);
            const double x = u;
            const double y = (nf.Lambda * u1 * v - nf.sys.a11 * u) / nf.sys.a12;
            const State direct = vector_field(p, State{rep->e2.S + x, rep->e2.I + y});
            const double du = nf.Lambda * v + nf.H1(p, u, v);
            const double dv = -nf.Lambda * u + nf.H2(p, u, v);
            // x' = u'; y' = (Lambda u1 v' - a11 u') / a12
            const double dx = du;
            const double dy = (nf.Lambda * u1 * dv - nf.sys.a11 * du) / nf.sys.a12;
            CHECK(dx == doctest::Approx(direct.S).epsilon(1e-8));
            CHECK(dy == doctest::Approx(direct.I).epsilon(1e-8));
        }
    }

    SUBCASE("closed-form A1..A5 fail their reconstruction audit") {
        // the A1..A5 closed form does not reproduce the composed H2; record
        // the disagreement that pushed the implementation to the composed path
        double worst = 0.0;
        Rng rng(139);
        for (int k = 0; k < 100; ++k) {
            const double u = rng.uniform(-2e-3, 2e-3);
            const double v = rng.uniform(-2e-3, 2e-3);
            const double a = nf.H2(p, u, v);
            const double b = nf.H2_closed_form(p, u, v);
            worst = std::max(worst, std::abs(a - b) / std::max(1e-30, std::abs(a)));
        }
        CHECK(worst > 1e-2);

        // same story for the closed-form a2_bar, either reading of its
        // ambiguous final term
        const double closed_plus = lyapunov_closed_form(p, rep->e2, 0.0, true);
        const double closed_minus = lyapunov_closed_form(p, rep->e2, 0.0, false);
        const double fd = rep->lyapunov.a2_bar;
        CHECK(std::isfinite(closed_plus));
        CHECK(std::isfinite(closed_minus));
        CHECK(std::abs(closed_plus - fd) > 0.1 * std::abs(fd));
        CHECK(std::abs(closed_minus - fd) > 0.1 * std::abs(fd));
    }
}

TEST_CASE("lyapunov coefficient") {
    SUBCASE("negative on the catalogued families with tight extrapolation error") {
        for (const test::HopfFamily& fam : test::hopf_families()) {
            const auto rep = locate_hopf(fam.params, ParamId::beta2, fam.beta2_lo,
                                         fam.beta2_hi);
            REQUIRE(rep);
            CHECK(rep->lyapunov.a2_bar < 0.0);
            CHECK(rep->lyapunov.error_estimate < 1e-4 * std::abs(rep->lyapunov.a2_bar));
            CHECK(rep->predicted_cycle == CyclePrediction::StableOrbit);
        }
    }
    SUBCASE("away from the Hopf point the call is rejected") {
        const test::HopfFamily fam = test::hopf_families()[0];
        const Params p = fam.params;  // s far from zero here
        const EquilibriumReport rep = equilibrium_report(p);
        REQUIRE(rep.e2);
        CHECK_THROWS_AS(lyapunov_coefficient(p, *rep.e2), NotAtHopfPoint);
    }
    SUBCASE("vanishes for a linear system") {
        // all nonlinear coefficients zero: the derivative combination is 0
        auto zero_fn = [](double, double) { return 0.0; };
        const double a = lyapunov_combination(zero_fn, zero_fn, 0.5, 1e-3);
        CHECK(a == 0.0);
    }
}

TEST_CASE("transversality") {
    const test::HopfFamily fam = test::hopf_families()[0];
    const auto rep = locate_hopf(fam.params, ParamId::beta2, fam.beta2_lo, fam.beta2_hi);
    REQUIRE(rep);
    const Params p = fam.params.with(ParamId::beta2, rep->parameter_value);

    SUBCASE("true derivative is minus the closed-form magnitude") {
        const TransversalityResult t = transversality(p, rep->e2);
        CHECK(t.closed_form_magnitude > 0.0);
        CHECK(t.d_re_dlambda_ds == doctest::Approx(-t.closed_form_magnitude));
        CHECK(t.fd_check < 0.0);
        CHECK(std::abs(t.fd_check - t.d_re_dlambda_ds) < 1e-3 * t.closed_form_magnitude);
    }

    SUBCASE("finite-difference d Re / d beta2 is nonzero at the point") {
        const double h = rep->parameter_value * 1e-6;
        auto re_at = [&](double b2) {
            const Params q = fam.params.with(ParamId::beta2, b2);
            const EquilibriumReport r = equilibrium_report(q);
            REQUIRE(r.e2);
            return max_real_part(eigenvalues_at(q, *r.e2));
        };
        const double fd = (re_at(rep->parameter_value + h) - re_at(rep->parameter_value - h)) /
                          (2.0 * h);
        CHECK(std::abs(fd) > 1e-6);
    }

    SUBCASE("a gamma perturbation also moves Re(lambda) through zero") {
        auto re_at = [&](double g) {
            const Params q = p.with(ParamId::gamma, g);
            const EquilibriumReport r = equilibrium_report(q);
            REQUIRE(r.e2);
            return max_real_part(eigenvalues_at(q, *r.e2));
        };
        const double g0 = p.gamma;
        double prev = re_at(g0 * 0.99);
        bool crossed = false;
        bool monotone = true;
        for (int k = 1; k <= 20; ++k) {
            const double cur = re_at(g0 * (0.99 + 0.001 * k));
            if ((prev < 0) != (cur < 0)) crossed = true;
            if (cur < prev) monotone = false;  // expect increasing through 0
            prev = cur;
        }
        CHECK(crossed);
        CHECK(monotone);
    }
}

TEST_CASE("classification at the located point routes to HopfCandidate") {
    const test::HopfFamily fam = test::hopf_families()[0];
    const auto rep = locate_hopf(fam.params, ParamId::beta2, fam.beta2_lo, fam.beta2_hi);
    REQUIRE(rep);
    const Params p = fam.params.with(ParamId::beta2, rep->parameter_value);
    CHECK(classify_endemic(p, WhichEndemic::E2) == EndemicClass::HopfCandidate);
}

TEST_CASE("locate_hopf") {
    const test::HopfFamily fam = test::hopf_families()[0];

    SUBCASE("refined point satisfies the spectral conditions") {
        const auto rep = locate_hopf(fam.params, ParamId::beta2, fam.beta2_lo, fam.beta2_hi);
        REQUIRE(rep);
        const Params p = fam.params.with(ParamId::beta2, rep->parameter_value);
        const CharPolyQuantities q = char_poly(p, rep->e2);
        CHECK(std::abs(q.W) < 1e-9);
        CHECK(q.U > 0.0);
        const auto ev = eigenvalues_at(p, rep->e2);
        CHECK(std::abs(ev[0].real()) < 1e-8);
        CHECK(std::abs(ev[1].real()) < 1e-8);
        CHECK(std::abs(std::abs(ev[1].imag()) - rep->Lambda) < 1e-9 * rep->Lambda);
        CHECK(std::abs(rep->Lambda - std::sqrt(q.U)) < 1e-9 * rep->Lambda);
        // s within its zero band at the located point
        const SIndicator si = s_indicator(p, quadratic_coeffs(p));
        CHECK(within_band(si.s, si.scale));
    }

    SUBCASE("no sign change means not found") {
        CHECK(!locate_hopf(fam.params, ParamId::beta2, 1.2, 1.5));
    }

    SUBCASE("losing E2 inside the bracket throws") {
        // beta2 high enough pushes r0 below the fold and E2 disappears
        CHECK_THROWS_AS(locate_hopf(fam.params, ParamId::beta2, 0.6, 4.0), LostEquilibrium);
    }
}
