#pragma once

#include <array>
#include <string>
#include <vector>

#include "curvature.hpp"
#include "geometry.hpp"
#include "vec4.hpp"

namespace cnb {

// N bodies on the unit manifold: positions with q.q = sigma, tangent
// velocities with q.v = 0, positive masses, no coincident/antipodal pair.
struct SystemState {
    double t = 0;
    Sign sign = Sign::Spherical;
    std::vector<Vec4> pos;
    std::vector<Vec4> vel;
    std::vector<double> mass;

    std::size_t size() const { return pos.size(); }
};

struct StateValidation {
    bool ok = true;
    std::string message;
    double max_constraint_residual = 0; // max |q.q - sigma|, |q.v|
    double min_sn_dij = 0;              // min over pairs of sn(d_ij)
    double min_vel_lorentz_sq = 0;      // diagnostic: min q'.q' (H^3 tangent vectors are spacelike)
};

StateValidation validate_state(const SystemState& s, double tol = 1e-9);

// Projects every body onto the constraint manifold (unit norm + tangency).
void project_system(SystemState& s);

// sn(d_ij) for the pair, and the singular-pair guard used everywhere.
constexpr double kSingularSn = 1e-6;
double min_pair_sn(const SystemState& s);

// Force function on the unit manifold: U = sum_{i<j} m_i m_j ctn(d_ij).
double force_function(const SystemState& s);

// F_i = sum_{j != i} m_i m_j (q_j - csn(d_ij) q_i) / sn^3(d_ij); each F_i is
// metric-orthogonal to q_i.
std::vector<Vec4> force_gradient(const SystemState& s);

// Projected equations of motion:
//   qdd_i = |k|^{3/2} F_i / m_i - sigma (v_i.v_i) q_i + (kdot/k) v_i
std::vector<Vec4> accel_projected(double t, const SystemState& s, const CurvatureProfile& p);

// Original-scale equations of motion (kappa q.q = 1 within 1e-8 required):
//   m qdd = grad U_k - m kappa (v.v) q - m (kddot/2k) q + m (kdot^2/k^2) q
// with grad U_k = |k| F(qbar) evaluated at qbar = |k|^{1/2} q.
std::vector<Vec4> accel_ambient(double t, const std::vector<Vec4>& pos,
                                const std::vector<Vec4>& vel, const std::vector<double>& mass,
                                Sign sign, const CurvatureProfile& p);

// Six angular-momentum integrals of sum_i m_i/|k| q_i ^ v_i, ordered by
// coordinate plane: xy, xz, xw, yz, yw, zw.
std::array<double, 6> angular_momenta(const SystemState& s, double kappa);

// L = sum_i m_i (v_i.v_i)/(2|k|) + |k|^{1/2} U(s)
double lagrangian_value(const SystemState& s, double kappa);

enum class HaltReason { None, NearCollision };

struct TrajectorySample {
    double t = 0;
    std::vector<Vec4> pos, vel;
};

struct SampleDiagnostics {
    std::array<double, 6> momenta{};
    double max_constraint_residual = 0;
    double min_sn_dij = 0;
};

struct Trajectory {
    Sign sign = Sign::Spherical;
    std::vector<double> mass;
    std::vector<TrajectorySample> samples;
    std::vector<SampleDiagnostics> diagnostics;
    HaltReason halt = HaltReason::None;
    double halt_time = 0;

    SystemState state_at(std::size_t k) const;
};

struct IntegrateOptions {
    double step = 1e-3;
    int sample_every = 1; // record every k-th step (plus the initial and final states)
};

// Classical fixed-step RK4 on the first-order system of Eq. qdd above, with a
// constraint projection after every step. Halts with a partial trajectory when
// min sn(d_ij) drops below kSingularSn.
Trajectory integrate(const SystemState& s0, const CurvatureProfile& p, double t_end,
                     const IntegrateOptions& opts);

} // namespace cnb
