#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/dynamics.hpp"
#include "support/oracles.hpp"

using namespace cnb;

namespace {

SystemState great_circle_lagrangian() {
    SystemState s;
    s.sign = Sign::Spherical;
    for (int k = 0; k < 3; ++k) {
        double a = 2.0 * M_PI * k / 3.0;
        s.pos.push_back({std::cos(a), std::sin(a), 0, 0});
        s.vel.push_back({});
        s.mass.push_back(1.0);
    }
    return s;
}

SystemState two_body(double d, Sign sign) {
    SystemState s;
    s.sign = sign;
    if (sign == Sign::Spherical) {
        s.pos.push_back({1, 0, 0, 0});
        s.pos.push_back({std::cos(d), std::sin(d), 0, 0});
    } else {
        s.pos.push_back({0, 0, 0, 1});
        s.pos.push_back({std::sinh(d), 0, 0, std::cosh(d)});
    }
    s.vel.assign(2, Vec4{});
    s.mass.assign(2, 1.0);
    return s;
}

CurvatureProfile unit_kappa(Sign sign = Sign::Spherical, double t1 = 100) {
    return CurvatureProfile(ProfileKind::Constant, {sign == Sign::Spherical ? 1.0 : -1.0}, sign,
                            -t1, t1);
}

} // namespace

TEST_CASE("force function values") {
    CHECK(force_function(two_body(M_PI_2, Sign::Spherical)) ==
          doctest::Approx(0.0).epsilon(1e-15));

    // three unit masses evenly spaced on a great circle: 3 cot(2pi/3) = -sqrt(3)
    CHECK(force_function(great_circle_lagrangian()) ==
          doctest::Approx(-std::sqrt(3.0)).epsilon(1e-13));

    // hyperbolic pair at distance 1: coth(1)
    CHECK(force_function(two_body(1.0, Sign::Hyperbolic)) ==
          doctest::Approx(std::cosh(1.0) / std::sinh(1.0)).epsilon(1e-13));
}

TEST_CASE("force function throws on singular pairs") {
    SystemState s = two_body(1e-9, Sign::Spherical);
    CHECK_THROWS_AS(force_function(s), SingularPair);
    CHECK_THROWS_AS(force_gradient(s), SingularPair);
}

TEST_CASE("force gradient on symmetric configurations") {
    SUBCASE("Lagrangian great circle is an SCC") {
        auto f = force_gradient(great_circle_lagrangian());
        for (const Vec4& fi : f) CHECK(norm(fi) < 1e-13);
    }
    SUBCASE("single body has zero force") {
        SystemState s;
        s.sign = Sign::Spherical;
        s.pos.push_back({1, 0, 0, 0});
        s.vel.push_back({});
        s.mass.push_back(1.0);
        auto f = force_gradient(s);
        CHECK(norm(f[0]) == 0.0);
    }
}

TEST_CASE("force gradient matches finite differences of the force function") {
    std::mt19937 rng(2024);
    for (Sign sign : {Sign::Spherical, Sign::Hyperbolic}) {
        for (int rep = 0; rep < 100; ++rep) {
            int n = 2 + rep % 5;
            SystemState s = oracles::random_state(rng, sign, n);
            auto f = force_gradient(s);
            std::size_t body = rep % n;
            for (const Vec4& h : oracles::tangent_basis(s.pos[body], sign)) {
                double analytic = metric_dot(f[body], h, sign);
                double fd = oracles::fd_directional(s, body, h);
                double scale = std::max(1.0, std::fabs(analytic));
                CHECK(std::fabs(analytic - fd) <= 1e-5 * scale);
            }
        }
    }
}

TEST_CASE("force gradient tangency and wedge cancellation") {
    std::mt19937 rng(77);
    for (Sign sign : {Sign::Spherical, Sign::Hyperbolic}) {
        for (int rep = 0; rep < 50; ++rep) {
            SystemState s = oracles::random_state(rng, sign, 2 + rep % 4);
            auto f = force_gradient(s);
            double fmax = 0;
            for (const Vec4& fi : f) fmax = std::max(fmax, norm(fi));
            for (std::size_t i = 0; i < s.size(); ++i)
                CHECK(std::fabs(metric_dot(f[i], s.pos[i], sign)) <= 1e-10 * std::max(1.0, fmax));
            // sum_i F_i ^ q_i = 0 componentwise (skew-symmetry of the pair terms)
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    double wedge = 0;
                    for (std::size_t i = 0; i < s.size(); ++i)
                        wedge += f[i][a] * s.pos[i][b] - f[i][b] * s.pos[i][a];
                    CHECK(std::fabs(wedge) <= 1e-10 * std::max(1.0, fmax));
                }
        }
    }
}

TEST_CASE("accel_projected special cases") {
    SUBCASE("SCC at rest is a fixed point") {
        CurvatureProfile p = unit_kappa();
        auto acc = accel_projected(0.0, great_circle_lagrangian(), p);
        for (const Vec4& a : acc) CHECK(norm(a) < 1e-12);
    }
    SUBCASE("single body geodesic: qdd = -(v.v) q") {
        SystemState s;
        s.sign = Sign::Spherical;
        s.pos.push_back({1, 0, 0, 0});
        s.vel.push_back({0, 0.7, 0, 0});
        s.mass.push_back(1.0);
        auto acc = accel_projected(0.0, s, unit_kappa());
        CHECK(norm(acc[0] - (-0.49) * s.pos[0]) < 1e-14);
    }
    SUBCASE("rest SCC with varying kappa still has zero acceleration") {
        CurvatureProfile p(ProfileKind::Sinusoidal, {1.0, 0.1, 1.0}, Sign::Spherical, 0, 10);
        auto acc = accel_projected(0.0, great_circle_lagrangian(), p);
        for (const Vec4& a : acc) CHECK(norm(a) < 1e-12);
    }
}

TEST_CASE("accel_ambient agrees with accel_projected under the change of variables") {
    SUBCASE("identity at constant kappa = 1") {
        CurvatureProfile p = unit_kappa();
        std::mt19937 rng(5);
        SystemState s = oracles::random_state(rng, Sign::Spherical, 3);
        auto ap = accel_projected(0.0, s, p);
        auto aa = accel_ambient(0.0, s.pos, s.vel, s.mass, s.sign, p);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(norm(ap[i] - aa[i]) < 1e-12);
    }
    SUBCASE("cross-form consistency for varying kappa, both signs") {
        std::mt19937 rng(6);
        for (Sign sign : {Sign::Spherical, Sign::Hyperbolic}) {
            double k0 = sign == Sign::Spherical ? 1.0 : -1.0;
            CurvatureProfile p(ProfileKind::Sinusoidal, {k0, 0.1 * k0, 1.0}, sign, 0, 10);
            for (int rep = 0; rep < 20; ++rep) {
                double t = 0.5 + 0.4 * rep;
                t = std::fmod(t, 9.0);
                SystemState s = oracles::random_state(rng, sign, 3);
                ProfileEval e = p.eval(t);
                double ak = std::fabs(e.kappa);
                double sig = sign_value(sign);
                // original-scale data: q = |k|^{-1/2} qbar,
                // qdot = -(sigma kdot / 2|k|^{3/2}) qbar + |k|^{-1/2} qbar-dot
                std::vector<Vec4> q(s.size()), qd(s.size());
                for (std::size_t i = 0; i < s.size(); ++i) {
                    q[i] = (1.0 / std::sqrt(ak)) * s.pos[i];
                    qd[i] = (-sig * e.kappa_dot / (2.0 * std::pow(ak, 1.5))) * s.pos[i] +
                            (1.0 / std::sqrt(ak)) * s.vel[i];
                }
                auto aa = accel_ambient(t, q, qd, s.mass, sign, p);
                auto ap = accel_projected(t, s, p);
                for (std::size_t i = 0; i < s.size(); ++i) {
                    // qdd via the printed second derivative of the change of variables
                    Vec4 qdd = (-sig * e.kappa_ddot / (2.0 * std::pow(ak, 1.5))) * s.pos[i] +
                               (3.0 * e.kappa_dot * e.kappa_dot / (4.0 * std::pow(ak, 2.5))) * s.pos[i] +
                               (-sig * e.kappa_dot / std::pow(ak, 1.5)) * s.vel[i] +
                               (1.0 / std::sqrt(ak)) * ap[i];
                    CHECK(norm(aa[i] - qdd) < 1e-7 * std::max(1.0, norm(qdd)));
                }
            }
        }
    }
    SUBCASE("constraint violation rejected") {
        CurvatureProfile p = unit_kappa();
        std::vector<Vec4> q = {{2, 0, 0, 0}};
        std::vector<Vec4> v = {{0, 0, 0, 0}};
        CHECK_THROWS_AS(accel_ambient(0.0, q, v, {1.0}, Sign::Spherical, p), InvalidInput);
    }
}

TEST_CASE("angular momenta basics") {
    SystemState s;
    s.sign = Sign::Spherical;
    s.pos.push_back({1, 0, 0, 0});
    s.vel.push_back({0, 1, 0, 0});
    s.mass.push_back(1.0);
    auto L = angular_momenta(s, 1.0);
    CHECK(L[0] == doctest::Approx(1.0)); // xy
    for (int k = 1; k < 6; ++k) CHECK(L[k] == 0.0);

    s.vel[0] = {};
    auto L0 = angular_momenta(s, 1.0);
    for (double x : L0) CHECK(x == 0.0);
}

TEST_CASE("lagrangian value") {
    SUBCASE("two masses at right angle contribute nothing") {
        SystemState s = two_body(M_PI_2, Sign::Spherical);
        CHECK(lagrangian_value(s, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("single body, speed 1, kappa 4") {
        SystemState s;
        s.sign = Sign::Spherical;
        s.pos.push_back({1, 0, 0, 0});
        s.vel.push_back({0, 1, 0, 0});
        s.mass.push_back(1.0);
        CHECK(lagrangian_value(s, 4.0) == doctest::Approx(0.125));
    }
}

TEST_CASE("integration: SCC at rest stays fixed under varying curvature") {
    CurvatureProfile p(ProfileKind::Sinusoidal, {1.0, 0.1, 1.0}, Sign::Spherical, 0, 10.5);
    SystemState s0 = great_circle_lagrangian();
    Trajectory tr = integrate(s0, p, 10.0, {1e-2, 10});
    REQUIRE(tr.halt == HaltReason::None);
    double drift = 0;
    for (const TrajectorySample& smp : tr.samples)
        for (std::size_t i = 0; i < smp.pos.size(); ++i)
            drift = std::max(drift, norm(smp.pos[i] - s0.pos[i]));
    CHECK(drift < 1e-9);
}

TEST_CASE("integration: single body great-circle period") {
    SystemState s;
    s.sign = Sign::Spherical;
    s.pos.push_back({1, 0, 0, 0});
    s.vel.push_back({0, 1, 0, 0});
    s.mass.push_back(1.0);
    CurvatureProfile p = unit_kappa();
    Trajectory tr = integrate(s, p, 2.0 * M_PI, {1e-3, 100});
    const TrajectorySample& last = tr.samples.back();
    CHECK(norm(last.pos[0] - s.pos[0]) < 1e-6);
    CHECK(norm(last.vel[0] - s.vel[0]) < 1e-6);
}

TEST_CASE("integration: symmetric two-body pair conserves the six momenta") {
    SystemState s;
    s.sign = Sign::Spherical;
    double d = 1.2;
    s.pos.push_back({std::cos(d / 2), std::sin(d / 2), 0, 0});
    s.pos.push_back({std::cos(d / 2), -std::sin(d / 2), 0, 0});
    s.vel.push_back({0, 0, 0.3, 0});
    s.vel.push_back({0, 0, -0.3, 0});
    s.mass.assign(2, 1.0);
    CurvatureProfile p = unit_kappa();
    Trajectory tr = integrate(s, p, 10.0, {1e-3, 100});
    REQUIRE(tr.halt == HaltReason::None);
    auto L0 = tr.diagnostics.front().momenta;
    double drift = 0;
    for (const SampleDiagnostics& d2 : tr.diagnostics)
        for (int k = 0; k < 6; ++k) drift = std::max(drift, std::fabs(d2.momenta[k] - L0[k]));
    CHECK(drift < 1e-8);
}

TEST_CASE("integration halts near collision and reports a partial trajectory") {
    CurvatureProfile p = unit_kappa();
    SUBCASE("pair creeping into the singular window") {
        // at rest just above the threshold: gravity pulls the pair below it
        SystemState s = two_body(1.5e-6, Sign::Spherical);
        Trajectory tr = integrate(s, p, 1.0, {1e-9, 1});
        CHECK(tr.halt == HaltReason::NearCollision);
        CHECK(tr.halt_time < 1.0);
        CHECK(!tr.samples.empty());
        CHECK(tr.samples.back().t == doctest::Approx(tr.halt_time));
    }
    SUBCASE("initial state already inside the window") {
        SystemState s = two_body(5e-7, Sign::Spherical);
        Trajectory tr = integrate(s, p, 1.0, {1e-3, 1});
        CHECK(tr.halt == HaltReason::NearCollision);
        CHECK(tr.samples.size() == 1);
    }
}

TEST_CASE("integration keeps constraints to 1e-9 and validates input") {
    std::mt19937 rng(31);
    SystemState s = oracles::random_state(rng, Sign::Hyperbolic, 3);
    CurvatureProfile p(ProfileKind::Sinusoidal, {-1.0, -0.1, 1.0}, Sign::Hyperbolic, 0, 6);
    Trajectory tr = integrate(s, p, 5.0, {1e-3, 50});
    for (const SampleDiagnostics& d : tr.diagnostics)
        CHECK(d.max_constraint_residual < 1e-9);

    CurvatureProfile bad(ProfileKind::Linear, {1.0, -1.0}, Sign::Spherical, 0, 3);
    SystemState sph = oracles::random_state(rng, Sign::Spherical, 2);
    CHECK_THROWS_AS(integrate(sph, bad, 2.5, {1e-3, 1}), InvalidInput);
}

TEST_CASE("discrete Euler-Lagrange residual is consistent with the projected equations") {
    // tangential part of d/dt(m qdot / |k|) equals |k|^{1/2} F_i along solutions;
    // the central-difference residual must shrink at O(h^2)
    CurvatureProfile p(ProfileKind::Sinusoidal, {1.0, 0.1, 1.0}, Sign::Spherical, 0, 6);
    SystemState s0;
    s0.sign = Sign::Spherical;
    for (int k = 0; k < 3; ++k) {
        double a = 2.0 * M_PI * k / 3.0;
        s0.pos.push_back({std::cos(a), std::sin(a), 0, 0});
        s0.vel.push_back({0, 0, 0.2 * std::cos(a + 0.3), 0.1 * std::sin(a)});
        s0.mass.push_back(1.0 + 0.2 * k);
    }
    project_system(s0);
    auto worst_residual = [&](double h) {
        Trajectory tr = integrate(s0, p, 2.0, {h, 1});
        REQUIRE(tr.halt == HaltReason::None);
        double worst = 0;
        for (std::size_t k = 1; k + 1 < tr.samples.size(); k += 37) {
            SystemState mid = tr.state_at(k);
            ProfileEval e = p.eval(mid.t);
            auto f = force_gradient(mid);
            double sig = sign_value(mid.sign);
            for (std::size_t i = 0; i < mid.size(); ++i) {
                double akm = std::fabs(p.eval(tr.samples[k - 1].t).kappa);
                double akp = std::fabs(p.eval(tr.samples[k + 1].t).kappa);
                Vec4 dmom = (mid.mass[i] / (2.0 * h)) *
                            ((1.0 / akp) * tr.samples[k + 1].vel[i] -
                             (1.0 / akm) * tr.samples[k - 1].vel[i]);
                Vec4 res = dmom - std::sqrt(std::fabs(e.kappa)) * f[i];
                // strip the constraint-normal component before measuring
                res = res - (sig * metric_dot(res, mid.pos[i], mid.sign)) * mid.pos[i];
                worst = std::max(worst, norm(res));
            }
        }
        return worst;
    };
    double r1 = worst_residual(2e-3);
    double r2 = worst_residual(1e-3);
    CHECK(r1 < 1e-5);
    CHECK(r1 / r2 > 3.0); // second order
    CHECK(r1 / r2 < 5.5);
}

TEST_CASE("RK4 convergence: halving the step shrinks endpoint error ~16x") {
    SystemState s;
    s.sign = Sign::Spherical;
    double d = 1.2;
    s.pos.push_back({std::cos(d / 2), std::sin(d / 2), 0, 0});
    s.pos.push_back({std::cos(d / 2), -std::sin(d / 2), 0, 0});
    s.vel.push_back({0, 0, 0.4, 0});
    s.vel.push_back({0, 0, -0.4, 0});
    s.mass.assign(2, 1.0);
    CurvatureProfile p = unit_kappa();
    const double T = 2.0;
    auto endpoint = [&](double h) {
        Trajectory tr = integrate(s, p, T, {h, 1 << 30});
        return tr.samples.back();
    };
    TrajectorySample ref = endpoint(1e-5);
    auto err = [&](const TrajectorySample& a) {
        double e = 0;
        for (std::size_t i = 0; i < a.pos.size(); ++i)
            e = std::max({e, norm(a.pos[i] - ref.pos[i]), norm(a.vel[i] - ref.vel[i])});
        return e;
    };
    double e1 = err(endpoint(4e-3));
    double e2 = err(endpoint(2e-3));
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("state validation catches the named defects") {
    SystemState s = two_body(1.0, Sign::Spherical);
    CHECK(validate_state(s).ok);
    s.mass[1] = -1.0;
    CHECK(!validate_state(s).ok);
    s.mass[1] = 1.0;
    s.vel[0] = {1, 0, 0, 0}; // not tangent
    CHECK(!validate_state(s).ok);

    SystemState anti = two_body(M_PI, Sign::Spherical);
    CHECK(!validate_state(anti).ok);

    // H^3 tangent vectors are spacelike; the validator reports the diagnostic
    SystemState h = two_body(1.0, Sign::Hyperbolic);
    h.vel[0] = {0, 0.5, 0, 0};
    StateValidation v = validate_state(h);
    CHECK(v.ok);
    CHECK(v.min_vel_lorentz_sq >= 0.0);
}
