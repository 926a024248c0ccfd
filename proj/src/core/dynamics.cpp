#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cnb {

namespace {

// csn(d_ij) = sigma q_i.q_j and sn^2(d_ij) = sigma (1 - (q_i.q_j)^2)
struct PairTrig {
    double csn, sn2, sn;
};

PairTrig pair_trig(const Vec4& a, const Vec4& b, Sign s, int i, int j) {
    double c = metric_dot(a, b, s);
    double csn = sign_value(s) * c;
    double sn2 = sign_value(s) * (1.0 - c * c);
    if (sn2 <= 0.0)
        throw SingularPair("singular pair (coincident or antipodal bodies)", i, j);
    return {csn, sn2, std::sqrt(sn2)};
}

} // namespace

StateValidation validate_state(const SystemState& s, double tol) {
    StateValidation r;
    r.min_sn_dij = std::numeric_limits<double>::infinity();
    r.min_vel_lorentz_sq = std::numeric_limits<double>::infinity();
    if (s.pos.size() != s.vel.size() || s.pos.size() != s.mass.size()) {
        r.ok = false;
        r.message = "positions, velocities and masses must have equal lengths";
        return r;
    }
    if (s.pos.empty()) {
        r.ok = false;
        r.message = "empty system";
        return r;
    }
    const double sig = sign_value(s.sign);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s.mass[i] > 0.0)) {
            r.ok = false;
            r.message = "mass " + std::to_string(i) + " is not positive";
            return r;
        }
        double cres = std::fabs(metric_dot(s.pos[i], s.pos[i], s.sign) - sig);
        double tres = std::fabs(metric_dot(s.pos[i], s.vel[i], s.sign));
        r.max_constraint_residual = std::max({r.max_constraint_residual, cres, tres});
        if (s.sign == Sign::Hyperbolic) {
            if (s.pos[i].w <= 0.0) {
                r.ok = false;
                r.message = "body " + std::to_string(i) + " on the lower sheet of H^3";
                return r;
            }
            r.min_vel_lorentz_sq =
                std::min(r.min_vel_lorentz_sq, metric_dot(s.vel[i], s.vel[i], s.sign));
        }
    }
    if (r.max_constraint_residual > tol) {
        r.ok = false;
        r.message = "constraint residual " + std::to_string(r.max_constraint_residual) +
                    " exceeds tolerance";
    }
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            double c = metric_dot(s.pos[i], s.pos[j], s.sign);
            double sn2 = sig * (1.0 - c * c);
            double sn = sn2 > 0.0 ? std::sqrt(sn2) : 0.0;
            r.min_sn_dij = std::min(r.min_sn_dij, sn);
            if (sn < tol) {
                r.ok = false;
                r.message = "bodies " + std::to_string(i) + "," + std::to_string(j) +
                            " coincident or antipodal";
            }
        }
    if (s.size() == 1) r.min_sn_dij = std::numeric_limits<double>::infinity();
    return r;
}

void project_system(SystemState& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto [p, v] = project_state(s.pos[i], s.vel[i], s.sign);
        s.pos[i] = p.v;
        s.vel[i] = v;
    }
}

double min_pair_sn(const SystemState& s) {
    double m = std::numeric_limits<double>::infinity();
    const double sig = sign_value(s.sign);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            double c = metric_dot(s.pos[i], s.pos[j], s.sign);
            double sn2 = sig * (1.0 - c * c);
            m = std::min(m, sn2 > 0.0 ? std::sqrt(sn2) : 0.0);
        }
    return m;
}

double force_function(const SystemState& s) {
    double u = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            PairTrig pt = pair_trig(s.pos[i], s.pos[j], s.sign, int(i), int(j));
            u += s.mass[i] * s.mass[j] * pt.csn / pt.sn;
        }
    return u;
}

std::vector<Vec4> force_gradient(const SystemState& s) {
    std::vector<Vec4> f(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            PairTrig pt = pair_trig(s.pos[i], s.pos[j], s.sign, int(i), int(j));
            double coef = s.mass[i] * s.mass[j] / (pt.sn2 * pt.sn);
            f[i] += coef * (s.pos[j] - pt.csn * s.pos[i]);
            f[j] += coef * (s.pos[i] - pt.csn * s.pos[j]);
        }
    return f;
}

std::vector<Vec4> accel_projected(double t, const SystemState& s, const CurvatureProfile& p) {
    if (p.sign() != s.sign)
        throw InvalidInput("accel_projected: profile sign does not match state sign");
    ProfileEval e = p.eval(t);
    double ak = std::fabs(e.kappa);
    double fscale = ak * std::sqrt(ak);
    double drag = e.kappa_dot / e.kappa;
    double sig = sign_value(s.sign);
    std::vector<Vec4> f = force_gradient(s);
    std::vector<Vec4> acc(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        double vv = metric_dot(s.vel[i], s.vel[i], s.sign);
        acc[i] = (fscale / s.mass[i]) * f[i] - (sig * vv) * s.pos[i] + drag * s.vel[i];
    }
    return acc;
}

std::vector<Vec4> accel_ambient(double t, const std::vector<Vec4>& pos,
                                const std::vector<Vec4>& vel, const std::vector<double>& mass,
                                Sign sign, const CurvatureProfile& p) {
    ProfileEval e = p.eval(t);
    double ak = std::fabs(e.kappa);
    double rt = std::sqrt(ak);
    SystemState bar;
    bar.t = t;
    bar.sign = sign;
    bar.mass = mass;
    bar.pos.resize(pos.size());
    bar.vel.assign(pos.size(), Vec4{});
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (std::fabs(e.kappa * metric_dot(pos[i], pos[i], sign) - 1.0) > 1e-8)
            throw InvalidInput("accel_ambient: kappa q.q = 1 violated for body " +
                               std::to_string(i));
        bar.pos[i] = rt * pos[i];
    }
    std::vector<Vec4> fbar = force_gradient(bar); // grad U_k = |k| F(qbar)
    std::vector<Vec4> acc(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        double vv = metric_dot(vel[i], vel[i], sign);
        acc[i] = (ak / mass[i]) * fbar[i] - (e.kappa * vv) * pos[i] -
                 (e.kappa_ddot / (2.0 * e.kappa)) * pos[i] +
                 (e.kappa_dot * e.kappa_dot / (e.kappa * e.kappa)) * pos[i];
    }
    return acc;
}

std::array<double, 6> angular_momenta(const SystemState& s, double kappa) {
    if (kappa == 0.0) throw InvalidInput("angular_momenta: kappa must be non-zero");
    // plane order: xy, xz, xw, yz, yw, zw
    static constexpr int planes[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::array<double, 6> L{};
    double ak = std::fabs(kappa);
    for (std::size_t i = 0; i < s.size(); ++i) {
        double c = s.mass[i] / ak;
        for (int k = 0; k < 6; ++k) {
            int a = planes[k][0], b = planes[k][1];
            L[k] += c * (s.pos[i][a] * s.vel[i][b] - s.pos[i][b] * s.vel[i][a]);
        }
    }
    return L;
}

double lagrangian_value(const SystemState& s, double kappa) {
    double ak = std::fabs(kappa);
    double kin = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        kin += s.mass[i] * metric_dot(s.vel[i], s.vel[i], s.sign) / (2.0 * ak);
    return kin + std::sqrt(ak) * force_function(s);
}

SystemState Trajectory::state_at(std::size_t k) const {
    SystemState s;
    s.sign = sign;
    s.mass = mass;
    s.t = samples.at(k).t;
    s.pos = samples[k].pos;
    s.vel = samples[k].vel;
    return s;
}

namespace {

SampleDiagnostics diagnostics_of(const SystemState& s, double kappa) {
    SampleDiagnostics d;
    d.momenta = angular_momenta(s, kappa);
    double sig = sign_value(s.sign);
    for (std::size_t i = 0; i < s.size(); ++i) {
        d.max_constraint_residual =
            std::max({d.max_constraint_residual,
                      std::fabs(metric_dot(s.pos[i], s.pos[i], s.sign) - sig),
                      std::fabs(metric_dot(s.pos[i], s.vel[i], s.sign))});
    }
    d.min_sn_dij = s.size() > 1 ? min_pair_sn(s) : std::numeric_limits<double>::infinity();
    return d;
}

} // namespace

Trajectory integrate(const SystemState& s0, const CurvatureProfile& p, double t_end,
                     const IntegrateOptions& opts) {
    if (!(opts.step > 0)) throw InvalidInput("integrate: step must be positive");
    ProfileValidation pv = p.validate(std::min(s0.t, t_end), std::max(s0.t, t_end));
    if (!pv.ok) throw InvalidInput("integrate: invalid curvature profile: " + pv.message);
    StateValidation sv = validate_state(s0);
    if (!sv.ok) throw InvalidInput("integrate: invalid initial state: " + sv.message);

    SystemState s = s0;
    Trajectory out;
    out.sign = s.sign;
    out.mass = s.mass;

    const std::size_t n = s.size();
    auto deriv = [&](double t, const std::vector<Vec4>& q, const std::vector<Vec4>& v,
                     std::vector<Vec4>& dq, std::vector<Vec4>& dv) {
        SystemState tmp;
        tmp.t = t;
        tmp.sign = s.sign;
        tmp.pos = q;
        tmp.vel = v;
        tmp.mass = s.mass;
        dq = v;
        dv = accel_projected(t, tmp, p);
    };

    auto record = [&](const SystemState& st) {
        TrajectorySample smp;
        smp.t = st.t;
        smp.pos = st.pos;
        smp.vel = st.vel;
        out.samples.push_back(std::move(smp));
        out.diagnostics.push_back(diagnostics_of(st, p.eval(st.t).kappa));
    };

    record(s);

    if (n > 1 && min_pair_sn(s) < kSingularSn) {
        out.halt = HaltReason::NearCollision;
        out.halt_time = s.t;
        return out;
    }

    const double dir = (t_end >= s.t) ? 1.0 : -1.0;
    std::vector<Vec4> k1q(n), k1v(n), k2q(n), k2v(n), k3q(n), k3v(n), k4q(n), k4v(n);
    std::vector<Vec4> q2(n), v2(n);
    long step_index = 0;
    while (dir * (t_end - s.t) > 1e-15) {
        double h = dir * std::min(opts.step, dir * (t_end - s.t));
        double t = s.t;
        SystemState before = s;
        try {
            deriv(t, s.pos, s.vel, k1q, k1v);
            for (std::size_t i = 0; i < n; ++i) {
                q2[i] = s.pos[i] + 0.5 * h * k1q[i];
                v2[i] = s.vel[i] + 0.5 * h * k1v[i];
            }
            deriv(t + 0.5 * h, q2, v2, k2q, k2v);
            for (std::size_t i = 0; i < n; ++i) {
                q2[i] = s.pos[i] + 0.5 * h * k2q[i];
                v2[i] = s.vel[i] + 0.5 * h * k2v[i];
            }
            deriv(t + 0.5 * h, q2, v2, k3q, k3v);
            for (std::size_t i = 0; i < n; ++i) {
                q2[i] = s.pos[i] + h * k3q[i];
                v2[i] = s.vel[i] + h * k3v[i];
            }
            deriv(t + h, q2, v2, k4q, k4v);
        } catch (const SingularPair&) {
            // a stage evaluation landed on a coincident/antipodal pair
            out.halt = HaltReason::NearCollision;
            out.halt_time = before.t;
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            s.pos[i] += (h / 6.0) * (k1q[i] + 2.0 * (k2q[i] + k3q[i]) + k4q[i]);
            s.vel[i] += (h / 6.0) * (k1v[i] + 2.0 * (k2v[i] + k3v[i]) + k4v[i]);
        }
        s.t = t + h;
        project_system(s);
        ++step_index;

        if (n > 1 && min_pair_sn(s) < kSingularSn) {
            record(s);
            out.halt = HaltReason::NearCollision;
            out.halt_time = s.t;
            return out;
        }
        bool done = dir * (t_end - s.t) <= 1e-15;
        if (done || step_index % opts.sample_every == 0) record(s);
    }
    return out;
}

} // namespace cnb
