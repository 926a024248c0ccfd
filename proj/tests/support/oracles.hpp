#pragma once

// Test-only independent oracles: finite differences, brute-force searches and
// quadrature used to pin expected values. Nothing here touches the
// implementation paths it checks.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "core/dynamics.hpp"

namespace oracles {

using cnb::Sign;
using cnb::SystemState;
using cnb::Vec4;

// Three metric-orthonormal tangent directions at a unit point.
inline std::vector<Vec4> tangent_basis(const Vec4& q, Sign sign) {
    std::vector<Vec4> basis;
    const Vec4 axes[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    double sig = cnb::sign_value(sign);
    for (const Vec4& a : axes) {
        Vec4 h = a;
        h = h - (sig * cnb::metric_dot(q, h, sign)) * q;       // strip normal part
        for (const Vec4& b : basis) {
            double bb = cnb::metric_dot(b, b, sign);
            h = h - (cnb::metric_dot(b, h, sign) / bb) * b;    // orthogonalize
        }
        double hh = cnb::metric_dot(h, h, sign);
        if (std::fabs(hh) > 1e-10) {
            h = (1.0 / std::sqrt(std::fabs(hh))) * h;
            basis.push_back(h);
            if (basis.size() == 3) break;
        }
    }
    return basis;
}

// Central finite difference of the force function along a tangent direction.
inline double fd_directional(const SystemState& s, std::size_t body, const Vec4& h,
                             double step = 1e-6) {
    SystemState plus = s, minus = s;
    plus.pos[body] = s.pos[body] + step * h;
    minus.pos[body] = s.pos[body] - step * h;
    return (cnb::force_function(plus) - cnb::force_function(minus)) / (2.0 * step);
}

// Deterministic random states on the unit manifold with healthy separations.
inline SystemState random_state(std::mt19937& rng, Sign sign, int n, bool zero_velocity = false) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> mdist(0.5, 2.0);
    SystemState s;
    s.sign = sign;
    for (int tries = 0; tries < 1000; ++tries) {
        s.pos.clear();
        s.vel.clear();
        s.mass.clear();
        for (int i = 0; i < n; ++i) {
            Vec4 q;
            if (sign == Sign::Spherical) {
                q = {g(rng), g(rng), g(rng), g(rng)};
            } else {
                q = {0.7 * g(rng), 0.7 * g(rng), 0.7 * g(rng), 0.0};
                q.w = std::sqrt(1.0 + q.x * q.x + q.y * q.y + q.z * q.z);
            }
            Vec4 v{0.3 * g(rng), 0.3 * g(rng), 0.3 * g(rng), 0.3 * g(rng)};
            auto [p, vt] = cnb::project_state(q, v, sign);
            s.pos.push_back(p.v);
            s.vel.push_back(zero_velocity ? Vec4{} : vt);
            s.mass.push_back(mdist(rng));
        }
        if (n == 1 || cnb::min_pair_sn(s) > 0.05) return s;
    }
    throw std::runtime_error("random_state: could not find a separated configuration");
}

// Brute-force max-min support over a dense random set of unit directions.
inline double brute_force_max_min(const std::vector<std::vector<double>>& pts, int dim,
                                  int samples = 200000, unsigned seed = 7u) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    double best = -2.0;
    std::vector<double> n(dim);
    for (int k = 0; k < samples; ++k) {
        double len = 0;
        for (int d = 0; d < dim; ++d) {
            n[d] = g(rng);
            len += n[d] * n[d];
        }
        len = std::sqrt(len);
        double worst = 2.0;
        for (const auto& p : pts) {
            double s = 0;
            for (int d = 0; d < dim; ++d) s += n[d] * p[d];
            worst = std::min(worst, s / len);
        }
        best = std::max(best, worst);
    }
    return best;
}

// Composite trapezoid rule, the independent primitive check for K(t).
template <typename F>
double trapezoid(F&& f, double a, double b, int n = 2000000) {
    double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) s += f(a + i * h);
    return s * h;
}

} // namespace oracles
