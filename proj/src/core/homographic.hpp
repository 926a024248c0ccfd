#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curvature.hpp"
#include "dynamics.hpp"

namespace cnb {

// One-parameter isometry families xi(K) driving homographic candidates.
// S3: equal-magnitude rotation rates c and rel*c in the xy and zw planes
//     (the equal-rate relation is what the sphere forces); S3Unequal exists
//     only as the negative-control construction with independent rates.
// H3Parabolic: the nilpotent family, eta(K) = rate*K, exp = I + xi + xi^2/2.
// H3RotBoost: rotation by a*K in xy and Lorentz boost by b*K in zw.
struct S3Spec {
    double c = 1.0;
    int relative_sign = +1;
};
struct S3UnequalSpec {
    double a = 1.0, b = 1.0;
};
struct H3ParabolicSpec {
    double rate = 1.0;
};
struct H3RotBoostSpec {
    double a = 1.0, b = 1.0;
};

struct XiSpec {
    std::variant<S3Spec, S3UnequalSpec, H3ParabolicSpec, H3RotBoostSpec> family;
    std::optional<Mat4> base_change; // sigma-isometry; result is conjugated by it

    Sign sign() const {
        return std::holds_alternative<S3Spec>(family) || std::holds_alternative<S3UnequalSpec>(family)
                   ? Sign::Spherical
                   : Sign::Hyperbolic;
    }
    std::string family_name() const;
};

// Checks base_change against the sigma-metric (defect <= 1e-12) if present.
void validate_spec(const XiSpec& spec);

// e^{xi(K)} in closed form; K = 0 gives the identity. All families satisfy the
// one-parameter group law exp(K1+K2) = exp(K1) exp(K2) exactly.
Mat4 exp_xi(const XiSpec& spec, double K);

// The constant generator G with xi(K) = K G, applied to a vector (conjugated
// by base_change when present): xi-dot = kappa G, xi-ddot = kappa-dot G.
Vec4 generator_apply(const XiSpec& spec, const Vec4& v);

struct HomographicOrbit {
    SystemState base;         // configuration at rest (t of base ignored)
    XiSpec spec;
    std::vector<double> times;
    Trajectory trajectory;    // positions e^{xi(K(t))} q_i, velocities kappa G e^{xi} q_i
};

// Flows a rest configuration along the family. Constraints hold exactly
// (isometries); throws if base velocities are not zero.
HomographicOrbit build_orbit(const SystemState& rest, const XiSpec& spec,
                             const CurvatureProfile& p, const std::vector<double>& times);

// Max EOM residual over bodies and times, with analytic second derivatives:
//   qdd = (kdot G + kappa^2 G^2) e^{xi} q
// residual_i = || m qdd - |k|^{3/2} F_i + sigma m (v.v) q - m (kdot/k) v ||.
double motion_residual(const HomographicOrbit& orbit, const CurvatureProfile& p);

double motion_residual(const SystemState& rest, const XiSpec& spec, const CurvatureProfile& p,
                       const std::vector<double>& times);

struct ProbeGrid {
    std::vector<double> parabolic_rates;
    std::vector<std::pair<double, double>> rot_boost; // (a, b)
    static ProbeGrid default_grid(); // 100 parabolic + 900 rot-boost cells
    std::size_t size() const { return parabolic_rates.size() + rot_boost.size(); }
};

struct ProbeResult {
    double min_residual = 0;
    XiSpec argmin;
    std::size_t cells = 0;
};

// Scans both H^3 families over the grid and returns the smallest motion
// residual; requires sigma = -1 and a non-constant profile (the constant case
// is the classical one and is excluded by construction).
ProbeResult h3_nonexistence_probe(const SystemState& config, const ProbeGrid& grid,
                                  const CurvatureProfile& p, const std::vector<double>& times);

} // namespace cnb
