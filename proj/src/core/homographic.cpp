#include "homographic.hpp"

#include <cmath>
#include <limits>

namespace cnb {

std::string XiSpec::family_name() const {
    if (std::holds_alternative<S3Spec>(family)) return "s3";
    if (std::holds_alternative<S3UnequalSpec>(family)) return "s3_unequal";
    if (std::holds_alternative<H3ParabolicSpec>(family)) return "h3_parabolic";
    return "h3_rot_boost";
}

void validate_spec(const XiSpec& spec) {
    if (spec.base_change) {
        double defect = isometry_defect(*spec.base_change, spec.sign());
        if (defect > 1e-12)
            throw InvalidInput("xi spec: base_change is not a sigma-isometry (defect " +
                               std::to_string(defect) + ")");
    }
}

namespace {

void put_rot(Mat4& m, int i, int j, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    m(i, i) = c; m(i, j) = -s;
    m(j, i) = s; m(j, j) = c;
}

void put_boost(Mat4& m, int i, int j, double rapidity) {
    double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
    m(i, i) = ch; m(i, j) = sh;
    m(j, i) = sh; m(j, j) = ch;
}

Mat4 exp_plain(const XiSpec& spec, double K) {
    Mat4 m = Mat4::identity();
    if (const auto* s3 = std::get_if<S3Spec>(&spec.family)) {
        put_rot(m, 0, 1, s3->c * K);
        put_rot(m, 2, 3, s3->relative_sign * s3->c * K);
    } else if (const auto* su = std::get_if<S3UnequalSpec>(&spec.family)) {
        put_rot(m, 0, 1, su->a * K);
        put_rot(m, 2, 3, su->b * K);
    } else if (const auto* hp = std::get_if<H3ParabolicSpec>(&spec.family)) {
        // nilpotent of order 3: exact exponential I + xi + xi^2/2
        double e = hp->rate * K;
        double h = 0.5 * e * e;
        // rows act on (x, y, z, w): y += e(w - z); z,w += e y + h (w - z)
        m(1, 2) = -e; m(1, 3) = e;
        m(2, 1) = e;  m(2, 2) = 1.0 - h; m(2, 3) = h;
        m(3, 1) = e;  m(3, 2) = -h;      m(3, 3) = 1.0 + h;
    } else {
        const auto& hb = std::get<H3RotBoostSpec>(spec.family);
        put_rot(m, 0, 1, hb.a * K);
        put_boost(m, 2, 3, hb.b * K);
    }
    return m;
}

Vec4 generator_plain(const XiSpec& spec, const Vec4& v) {
    if (const auto* s3 = std::get_if<S3Spec>(&spec.family)) {
        double c = s3->c, s = s3->relative_sign * s3->c;
        return {-c * v.y, c * v.x, -s * v.w, s * v.z};
    }
    if (const auto* su = std::get_if<S3UnequalSpec>(&spec.family)) {
        return {-su->a * v.y, su->a * v.x, -su->b * v.w, su->b * v.z};
    }
    if (const auto* hp = std::get_if<H3ParabolicSpec>(&spec.family)) {
        double r = hp->rate;
        return {0.0, r * (v.w - v.z), r * v.y, r * v.y};
    }
    const auto& hb = std::get<H3RotBoostSpec>(spec.family);
    return {-hb.a * v.y, hb.a * v.x, hb.b * v.w, hb.b * v.z};
}

} // namespace

Mat4 exp_xi(const XiSpec& spec, double K) {
    Mat4 m = exp_plain(spec, K);
    if (spec.base_change) {
        const Mat4& b = *spec.base_change;
        m = b * m * isometry_inverse(b, spec.sign());
    }
    return m;
}

Vec4 generator_apply(const XiSpec& spec, const Vec4& v) {
    if (!spec.base_change) return generator_plain(spec, v);
    const Mat4& b = *spec.base_change;
    return b.apply(generator_plain(spec, isometry_inverse(b, spec.sign()).apply(v)));
}

HomographicOrbit build_orbit(const SystemState& rest, const XiSpec& spec,
                             const CurvatureProfile& p, const std::vector<double>& times) {
    validate_spec(spec);
    if (rest.sign != spec.sign())
        throw InvalidInput("build_orbit: spec family does not match the state signature");
    if (p.sign() != rest.sign)
        throw InvalidInput("build_orbit: profile sign does not match the state");
    for (const Vec4& v : rest.vel)
        if (norm(v) > 1e-9)
            throw InvalidInput("build_orbit: base configuration must be at rest");
    if (times.empty()) throw InvalidInput("build_orbit: empty time list");

    HomographicOrbit orbit;
    orbit.base = rest;
    orbit.spec = spec;
    orbit.times = times;
    orbit.trajectory.sign = rest.sign;
    orbit.trajectory.mass = rest.mass;
    for (double t : times) {
        ProfileEval e = p.eval(t);
        Mat4 m = exp_xi(spec, e.K);
        TrajectorySample smp;
        smp.t = t;
        smp.pos.resize(rest.size());
        smp.vel.resize(rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i) {
            smp.pos[i] = m.apply(rest.pos[i]);
            smp.vel[i] = e.kappa * generator_apply(spec, smp.pos[i]);
        }
        SystemState st;
        st.t = t;
        st.sign = rest.sign;
        st.mass = rest.mass;
        st.pos = smp.pos;
        st.vel = smp.vel;
        SampleDiagnostics d;
        d.momenta = angular_momenta(st, e.kappa);
        double sig = sign_value(st.sign);
        for (std::size_t i = 0; i < st.size(); ++i)
            d.max_constraint_residual =
                std::max({d.max_constraint_residual,
                          std::fabs(metric_dot(st.pos[i], st.pos[i], st.sign) - sig),
                          std::fabs(metric_dot(st.pos[i], st.vel[i], st.sign))});
        d.min_sn_dij = st.size() > 1 ? min_pair_sn(st) : 0.0;
        orbit.trajectory.samples.push_back(std::move(smp));
        orbit.trajectory.diagnostics.push_back(d);
    }
    return orbit;
}

double motion_residual(const HomographicOrbit& orbit, const CurvatureProfile& p) {
    const SystemState& base = orbit.base;
    const double sig = sign_value(base.sign);
    double worst = 0;
    for (std::size_t k = 0; k < orbit.times.size(); ++k) {
        double t = orbit.times[k];
        ProfileEval e = p.eval(t);
        double ak = std::fabs(e.kappa);
        double fscale = ak * std::sqrt(ak);
        SystemState st = orbit.trajectory.state_at(k);
        std::vector<Vec4> f = force_gradient(st);
        for (std::size_t i = 0; i < st.size(); ++i) {
            const Vec4& q = st.pos[i];
            const Vec4& v = st.vel[i];
            Vec4 gq = generator_apply(orbit.spec, q);
            Vec4 ggq = generator_apply(orbit.spec, gq);
            Vec4 qdd = e.kappa_dot * gq + (e.kappa * e.kappa) * ggq;
            double vv = metric_dot(v, v, st.sign);
            double m = st.mass[i];
            Vec4 res = m * qdd - fscale * f[i] + (sig * m * vv) * q - (m * e.kappa_dot / e.kappa) * v;
            worst = std::max(worst, norm(res));
        }
    }
    return worst;
}

double motion_residual(const SystemState& rest, const XiSpec& spec, const CurvatureProfile& p,
                       const std::vector<double>& times) {
    return motion_residual(build_orbit(rest, spec, p, times), p);
}

ProbeGrid ProbeGrid::default_grid() {
    ProbeGrid g;
    for (int i = 0; i < 100; ++i) g.parabolic_rates.push_back(-5.0 + 10.0 * i / 99.0);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j)
            g.rot_boost.emplace_back(-5.0 + 10.0 * i / 29.0, -5.0 + 10.0 * j / 29.0);
    return g;
}

ProbeResult h3_nonexistence_probe(const SystemState& config, const ProbeGrid& grid,
                                  const CurvatureProfile& p, const std::vector<double>& times) {
    if (config.sign != Sign::Hyperbolic)
        throw InvalidInput("h3_nonexistence_probe: configuration must live in H^3");
    if (p.is_constant())
        throw InvalidInput("h3_nonexistence_probe: constant kappa is excluded; the probe "
                           "targets non-constant curvature only");
    if (grid.size() == 0) throw InvalidInput("h3_nonexistence_probe: empty grid");

    // the probe flows the configuration itself; velocities are implied by the
    // candidate family, so strip whatever the caller left in the state
    SystemState rest = config;
    for (Vec4& v : rest.vel) v = Vec4{};

    ProbeResult out;
    out.min_residual = std::numeric_limits<double>::infinity();
    out.cells = grid.size();
    for (double r : grid.parabolic_rates) {
        XiSpec spec;
        spec.family = H3ParabolicSpec{r};
        double res = motion_residual(rest, spec, p, times);
        if (res < out.min_residual) {
            out.min_residual = res;
            out.argmin = spec;
        }
    }
    for (auto [a, b] : grid.rot_boost) {
        XiSpec spec;
        spec.family = H3RotBoostSpec{a, b};
        double res = motion_residual(rest, spec, p, times);
        if (res < out.min_residual) {
            out.min_residual = res;
            out.argmin = spec;
        }
    }
    return out;
}

} // namespace cnb
