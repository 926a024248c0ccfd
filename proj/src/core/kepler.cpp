#include "kepler.hpp"

#include <cmath>

namespace cnb {

namespace {

struct ChartTrig {
    double sn, csn, csct2, ctn;   // at alpha
    double sint, cost, csc2;      // at theta
};

ChartTrig chart_trig(double alpha, double theta, Sign sign) {
    Trig a = unified_trig(alpha, sign);
    if (a.sn == 0.0) throw DomainError("kepler: chart singularity sn(alpha) = 0");
    double sint = std::sin(theta);
    if (sint == 0.0) throw DomainError("kepler: chart singularity sin(theta) = 0");
    ChartTrig c;
    c.sn = a.sn;
    c.csn = a.csn;
    c.csct2 = 1.0 / (a.sn * a.sn);
    c.ctn = a.csn / a.sn;
    c.sint = sint;
    c.cost = std::cos(theta);
    c.csc2 = 1.0 / (sint * sint);
    return c;
}

} // namespace

KeplerState kepler_rhs(double t, const KeplerState& s, const KeplerParams& prm,
                       const CurvatureProfile& p) {
    ProfileEval e = p.eval(t);
    double ak = std::fabs(e.kappa);
    double rt = std::sqrt(ak);
    ChartTrig c = chart_trig(s.alpha, s.theta, p.sign());
    // (p_phi csc theta)^2 written as a product so p_phi = 0 stays finite
    double pphi_csc = s.p_phi / c.sint;
    KeplerState d;
    d.alpha = ak * s.p_alpha / prm.m;
    d.theta = ak * s.p_theta * c.csct2 / prm.m;
    d.phi = ak * s.p_phi * c.csct2 * c.csc2 / prm.m;
    d.p_alpha = ak * c.ctn * c.csct2 * (s.p_theta * s.p_theta + pphi_csc * pphi_csc) / prm.m -
                rt * prm.m * prm.M * c.csct2;
    d.p_theta = ak * c.csct2 * c.csc2 * c.cost / c.sint * s.p_phi * s.p_phi / prm.m;
    d.p_phi = 0.0;
    return d;
}

KeplerConserved kepler_conserved(const KeplerState& s) {
    double sint = std::sin(s.theta);
    if (sint == 0.0) throw DomainError("kepler_conserved: sin(theta) = 0");
    double pphi_csc = s.p_phi / sint;
    return {s.p_phi, s.p_theta * s.p_theta + pphi_csc * pphi_csc};
}

std::array<double, 4> reduced_rhs(double t, const ReducedState& s, double A, double L,
                                  const KeplerParams& prm, const CurvatureProfile& p) {
    ProfileEval e = p.eval(t);
    double ak = std::fabs(e.kappa);
    double rt = std::sqrt(ak);
    ChartTrig c = chart_trig(s.alpha, s.theta, p.sign());
    double rad = L - A * A * c.csc2;
    if (rad < -1e-9 * std::max(1.0, std::fabs(L)))
        throw InvalidInput("reduced_rhs: L - A^2 csc^2(theta) < 0 (inconsistent constants)");
    double theta_dot = s.branch * ak * std::sqrt(std::max(rad, 0.0)) * c.csct2 / prm.m;
    return {
        ak * s.p_alpha / prm.m,
        theta_dot,
        ak * A * c.csct2 * c.csc2 / prm.m,
        ak * L * c.ctn * c.csct2 / prm.m - rt * prm.m * prm.M * c.csct2,
    };
}

double circular_curvature(double alpha, const KeplerParams& prm, double L, Sign sign) {
    if (!(L > 0.0)) throw InvalidInput("circular_curvature: L must be positive");
    Trig a = unified_trig(alpha, sign);
    double ctn = a.ctn();
    if (!(ctn > 0.0))
        throw DomainError("circular_curvature: ctn(alpha) <= 0, no constant curvature "
                          "admits a circular orbit at this radius");
    double root = prm.m * prm.m * prm.M / (L * ctn);
    return root * root;
}

std::pair<UnitPoint, Vec4> spherical_to_ambient(const KeplerState& s, const KeplerParams& prm,
                                                double kappa, Sign sign) {
    ChartTrig c = chart_trig(s.alpha, s.theta, sign);
    double ak = std::fabs(kappa);
    double cosp = std::cos(s.phi), sinp = std::sin(s.phi);

    UnitPoint q;
    q.sign = sign;
    q.v = {c.sn * c.sint * cosp, c.sn * c.sint * sinp, c.sn * c.cost, c.csn};

    double alpha_dot = ak * s.p_alpha / prm.m;
    double theta_dot = ak * s.p_theta * c.csct2 / prm.m;
    double phi_dot = ak * (s.p_phi / c.sint) / c.sint * c.csct2 / prm.m;

    // csn' = -sigma sn, sn' = csn
    double dcsn = -sign_value(sign) * c.sn;
    Vec4 dalpha = {c.csn * c.sint * cosp, c.csn * c.sint * sinp, c.csn * c.cost, dcsn};
    Vec4 dtheta = {c.sn * c.cost * cosp, c.sn * c.cost * sinp, -c.sn * c.sint, 0.0};
    Vec4 dphi = {-c.sn * c.sint * sinp, c.sn * c.sint * cosp, 0.0, 0.0};
    Vec4 v = alpha_dot * dalpha + theta_dot * dtheta + phi_dot * dphi;
    return {q, v};
}

KeplerTrajectory integrate_kepler(const KeplerState& s0, const KeplerParams& prm,
                                  const CurvatureProfile& p, double t0, double t_end,
                                  const IntegrateOptions& opts) {
    if (!(opts.step > 0)) throw InvalidInput("integrate_kepler: step must be positive");
    ProfileValidation pv = p.validate(std::min(t0, t_end), std::max(t0, t_end));
    if (!pv.ok) throw InvalidInput("integrate_kepler: invalid profile: " + pv.message);
    chart_trig(s0.alpha, s0.theta, p.sign()); // reject singular initial data

    auto add = [](const KeplerState& a, double h, const KeplerState& b) {
        KeplerState r = a;
        r.alpha += h * b.alpha;
        r.theta += h * b.theta;
        r.phi += h * b.phi;
        r.p_alpha += h * b.p_alpha;
        r.p_theta += h * b.p_theta;
        r.p_phi += h * b.p_phi;
        return r;
    };

    KeplerTrajectory out;
    KeplerState s = s0;
    double t = t0;
    out.samples.push_back({t, s});
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    long k = 0;
    while (dir * (t_end - t) > 1e-15) {
        double h = dir * std::min(opts.step, dir * (t_end - t));
        KeplerState k1 = kepler_rhs(t, s, prm, p);
        KeplerState k2 = kepler_rhs(t + 0.5 * h, add(s, 0.5 * h, k1), prm, p);
        KeplerState k3 = kepler_rhs(t + 0.5 * h, add(s, 0.5 * h, k2), prm, p);
        KeplerState k4 = kepler_rhs(t + h, add(s, h, k3), prm, p);
        s.alpha += (h / 6.0) * (k1.alpha + 2.0 * (k2.alpha + k3.alpha) + k4.alpha);
        s.theta += (h / 6.0) * (k1.theta + 2.0 * (k2.theta + k3.theta) + k4.theta);
        s.phi += (h / 6.0) * (k1.phi + 2.0 * (k2.phi + k3.phi) + k4.phi);
        s.p_alpha += (h / 6.0) * (k1.p_alpha + 2.0 * (k2.p_alpha + k3.p_alpha) + k4.p_alpha);
        s.p_theta += (h / 6.0) * (k1.p_theta + 2.0 * (k2.p_theta + k3.p_theta) + k4.p_theta);
        // dp_phi/dt = 0 identically; keep it bit-exact
        t += h;
        ++k;
        double sn_alpha = std::fabs(unified_trig(s.alpha, p.sign()).sn);
        if (sn_alpha < kSingularSn) {
            out.samples.push_back({t, s});
            out.halt = HaltReason::NearCollision;
            out.halt_time = t;
            return out;
        }
        if (dir * (t_end - t) <= 1e-15 || k % opts.sample_every == 0)
            out.samples.push_back({t, s});
    }
    return out;
}

std::vector<ReducedSample> integrate_reduced(const ReducedState& s0, double A, double L,
                                             const KeplerParams& prm, const CurvatureProfile& p,
                                             double t0, double t_end,
                                             const IntegrateOptions& opts) {
    if (!(opts.step > 0)) throw InvalidInput("integrate_reduced: step must be positive");
    std::vector<ReducedSample> out;
    ReducedState s = s0;
    double t = t0;
    out.push_back({t, s});
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    const double turn_eps = 1e-9 * std::max(1.0, std::fabs(L));
    auto radicand = [&](double theta) {
        double sint = std::sin(theta);
        return L - A * A / (sint * sint);
    };
    long k = 0;
    while (dir * (t_end - t) > 1e-15) {
        double h = dir * std::min(opts.step, dir * (t_end - t));
        double rad_before = radicand(s.theta);
        auto step4 = [&](const ReducedState& in) {
            auto k1 = reduced_rhs(t, in, A, L, prm, p);
            ReducedState m = in;
            m.alpha += 0.5 * h * k1[0]; m.theta += 0.5 * h * k1[1];
            m.phi += 0.5 * h * k1[2]; m.p_alpha += 0.5 * h * k1[3];
            auto k2 = reduced_rhs(t + 0.5 * h, m, A, L, prm, p);
            m = in;
            m.alpha += 0.5 * h * k2[0]; m.theta += 0.5 * h * k2[1];
            m.phi += 0.5 * h * k2[2]; m.p_alpha += 0.5 * h * k2[3];
            auto k3 = reduced_rhs(t + 0.5 * h, m, A, L, prm, p);
            m = in;
            m.alpha += h * k3[0]; m.theta += h * k3[1];
            m.phi += h * k3[2]; m.p_alpha += h * k3[3];
            auto k4 = reduced_rhs(t + h, m, A, L, prm, p);
            ReducedState r = in;
            r.alpha += (h / 6.0) * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]);
            r.theta += (h / 6.0) * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]);
            r.phi += (h / 6.0) * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2]);
            r.p_alpha += (h / 6.0) * (k1[3] + 2.0 * (k2[3] + k3[3]) + k4[3]);
            return r;
        };
        ReducedState next = step4(s);
        double rad_after = radicand(next.theta);
        // turning point: the radicand heads through zero; flip the theta branch
        if (rad_after < turn_eps && rad_after < rad_before) {
            next.branch = -s.branch;
            if (rad_after < 0.0) { // clamp just past the turning band
                double sint2 = A * A / L;
                double target = std::asin(std::min(1.0, std::sqrt(sint2)));
                next.theta = (next.theta > M_PI_2) ? M_PI - target : target;
            }
        }
        s = next;
        t += h;
        ++k;
        if (dir * (t_end - t) <= 1e-15 || k % opts.sample_every == 0) out.push_back({t, s});
    }
    return out;
}

double alpha_uncoupled_residual(const std::vector<double>& times,
                                const std::vector<double>& alphas, double L,
                                const KeplerParams& prm, const CurvatureProfile& p) {
    if (times.size() != alphas.size() || times.size() < 3)
        throw InvalidInput("alpha_uncoupled_residual: need a dense matched sample");
    double worst = 0;
    for (std::size_t i = 1; i + 1 < times.size(); ++i) {
        double h = times[i + 1] - times[i];
        double hm = times[i] - times[i - 1];
        if (std::fabs(h - hm) > 1e-12 * std::max(1.0, std::fabs(h)))
            throw InvalidInput("alpha_uncoupled_residual: sample must be uniform");
        double adot = (alphas[i + 1] - alphas[i - 1]) / (2.0 * h);
        double addot = (alphas[i + 1] - 2.0 * alphas[i] + alphas[i - 1]) / (h * h);
        ProfileEval e = p.eval(times[i]);
        Trig a = unified_trig(alphas[i], p.sign());
        double csct2 = 1.0 / (a.sn * a.sn);
        double ak = std::fabs(e.kappa);
        double rhs = e.kappa * e.kappa * L * a.ctn() * csct2 / (prm.m * prm.m) -
                     ak * std::sqrt(ak) * prm.M * csct2 + e.kappa_dot * adot / e.kappa;
        worst = std::max(worst, std::fabs(addot - rhs));
    }
    return worst;
}

} // namespace cnb
