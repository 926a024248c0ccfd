#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/curvature.hpp"
#include "support/oracles.hpp"

using namespace cnb;

namespace {

CurvatureProfile tabulated_sin(double lo, double hi, int n, double scale = 1.0) {
    std::vector<double> params;
    for (int i = 0; i <= n; ++i) {
        double t = lo + (hi - lo) * i / n;
        params.push_back(t);
        params.push_back(scale * (1.0 + 0.1 * std::sin(t)));
    }
    return CurvatureProfile(ProfileKind::Tabulated, params,
                            scale > 0 ? Sign::Spherical : Sign::Hyperbolic, lo, hi);
}

} // namespace

TEST_CASE("kappa_eval closed forms") {
    SUBCASE("constant") {
        CurvatureProfile p(ProfileKind::Constant, {1.0}, Sign::Spherical, 0, 10);
        ProfileEval e = p.eval(2.0);
        CHECK(e.kappa == 1.0);
        CHECK(e.kappa_dot == 0.0);
        CHECK(e.K == 2.0);
    }
    SUBCASE("sinusoidal: kappa = 1 + 0.1 sin t at t = pi") {
        CurvatureProfile p(ProfileKind::Sinusoidal, {1.0, 0.1, 1.0}, Sign::Spherical, 0, 10);
        ProfileEval e = p.eval(M_PI);
        CHECK(e.kappa == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(e.kappa_dot == doctest::Approx(-0.1).epsilon(1e-14));
        CHECK(e.K == doctest::Approx(M_PI + 0.2).epsilon(1e-15)); // integral 0..pi of 1+0.1 sin
    }
    SUBCASE("exponential: kappa = 2 e^{-t} at t = 1") {
        CurvatureProfile p(ProfileKind::Exponential, {2.0, -1.0}, Sign::Spherical, 0, 10);
        ProfileEval e = p.eval(1.0);
        double ei = 2.0 * std::exp(-1.0);
        CHECK(e.kappa == doctest::Approx(ei).epsilon(1e-15));
        CHECK(e.kappa_dot == doctest::Approx(-ei).epsilon(1e-15));
        CHECK(e.K == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-15));
    }
    SUBCASE("linear") {
        CurvatureProfile p(ProfileKind::Linear, {1.0, 0.25}, Sign::Spherical, 0, 10);
        ProfileEval e = p.eval(4.0);
        CHECK(e.kappa == 2.0);
        CHECK(e.kappa_dot == 0.25);
        CHECK(e.K == doctest::Approx(4.0 + 0.125 * 16.0));
    }
    SUBCASE("outside span") {
        CurvatureProfile p(ProfileKind::Constant, {1.0}, Sign::Spherical, 0, 10);
        CHECK_THROWS_AS(p.eval(11.0), DomainError);
    }
}

TEST_CASE("K matches independent trapezoid quadrature on all kinds") {
    std::vector<CurvatureProfile> profiles;
    profiles.emplace_back(ProfileKind::Constant, std::vector<double>{1.3}, Sign::Spherical, 0, 8);
    profiles.emplace_back(ProfileKind::Linear, std::vector<double>{1.0, 0.05}, Sign::Spherical, 0, 8);
    profiles.emplace_back(ProfileKind::Exponential, std::vector<double>{2.0, -0.3}, Sign::Spherical, 0, 8);
    profiles.emplace_back(ProfileKind::Sinusoidal, std::vector<double>{1.0, 0.1, 1.0}, Sign::Spherical, 0, 8);
    profiles.push_back(tabulated_sin(-0.5, 8.5, 400));
    for (const CurvatureProfile& p : profiles) {
        for (double t : {0.7, 3.1, 7.9}) {
            double quad = oracles::trapezoid([&](double u) { return p.eval(u).kappa; }, 0.0, t);
            CHECK(p.eval(t).K == doctest::Approx(quad).epsilon(1e-9));
        }
        CHECK(p.eval(0.0).K == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("kappa_dot and kappa_ddot match central finite differences") {
    std::vector<CurvatureProfile> profiles;
    profiles.emplace_back(ProfileKind::Linear, std::vector<double>{1.0, 0.05}, Sign::Spherical, 0, 8);
    profiles.emplace_back(ProfileKind::Exponential, std::vector<double>{2.0, -0.3}, Sign::Spherical, 0, 8);
    profiles.emplace_back(ProfileKind::Sinusoidal, std::vector<double>{1.0, 0.1, 1.0}, Sign::Spherical, 0, 8);
    profiles.push_back(tabulated_sin(-0.5, 8.5, 400));
    const double h = 1e-6;
    for (const CurvatureProfile& p : profiles)
        for (double t : {0.9, 2.4, 6.6}) {
            ProfileEval e = p.eval(t);
            double fd1 = (p.eval(t + h).kappa - p.eval(t - h).kappa) / (2.0 * h);
            double fd2 = (p.eval(t + h).kappa - 2.0 * e.kappa + p.eval(t - h).kappa) / (h * h);
            CHECK(e.kappa_dot == doctest::Approx(fd1).epsilon(1e-6));
            CHECK(e.kappa_ddot == doctest::Approx(fd2).epsilon(1e-3));
        }
}

TEST_CASE("tabulated spline interpolates its samples and stays C1") {
    CurvatureProfile p = tabulated_sin(-0.5, 8.5, 200);
    for (int k : {0, 37, 100, 200}) {
        double t = -0.5 + 9.0 * k / 200.0;
        CHECK(p.eval(t).kappa == doctest::Approx(1.0 + 0.1 * std::sin(t)).epsilon(1e-12));
    }
    // C1 across an interior knot
    double knot = -0.5 + 9.0 * 57 / 200.0;
    double dl = p.eval(knot - 1e-9).kappa_dot;
    double dr = p.eval(knot + 1e-9).kappa_dot;
    CHECK(dl == doctest::Approx(dr).epsilon(1e-6));
}

TEST_CASE("validate_profile") {
    SUBCASE("sinusoidal bounded away from zero") {
        CurvatureProfile p(ProfileKind::Sinusoidal, {1.0, 0.1, 1.0}, Sign::Spherical, 0, 100);
        CHECK(p.validate(0, 100).ok);
    }
    SUBCASE("linear with an explicit root") {
        CurvatureProfile p(ProfileKind::Linear, {1.0, -1.0}, Sign::Spherical, 0, 2);
        ProfileValidation v = p.validate(0, 2);
        CHECK(!v.ok);
        CHECK(v.t_violation == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("all-negative table validates with sign -1") {
        CurvatureProfile p = tabulated_sin(-0.5, 8.5, 200, -1.0);
        CHECK(p.sign() == Sign::Hyperbolic);
        CHECK(p.validate(0, 8).ok);
    }
    SUBCASE("wrong declared sign is a violation") {
        CurvatureProfile p(ProfileKind::Constant, {1.0}, Sign::Hyperbolic, 0, 10);
        CHECK(!p.validate(0, 10).ok);
    }
}

TEST_CASE("profile construction errors") {
    CHECK_THROWS_AS(CurvatureProfile(ProfileKind::Constant, {1.0, 2.0}, Sign::Spherical, 0, 1),
                    InvalidInput);
    CHECK_THROWS_AS(CurvatureProfile(ProfileKind::Constant, {1.0}, Sign::Spherical, 1, 1),
                    InvalidInput);
    // tabulated table must cover the span and t = 0
    CHECK_THROWS_AS(CurvatureProfile(ProfileKind::Tabulated, {1, 1, 2, 1, 3, 1},
                                     Sign::Spherical, 1, 3),
                    InvalidInput);
    CHECK_THROWS_AS(CurvatureProfile(ProfileKind::Tabulated, {0, 1, 1, 1, 0.5, 1},
                                     Sign::Spherical, 0, 1),
                    InvalidInput);
}

TEST_CASE("backward spans evaluate and validate") {
    CurvatureProfile p(ProfileKind::Sinusoidal, {1.0, 0.1, 1.0}, Sign::Spherical, -5, 5);
    CHECK(p.validate(-5, 5).ok);
    CHECK(p.eval(-2.0).K == doctest::Approx(-2.0 + 0.1 * (1.0 - std::cos(2.0))).epsilon(1e-12));
}
