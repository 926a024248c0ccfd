#pragma once

#include <array>
#include <vector>

#include "curvature.hpp"
#include "dynamics.hpp"
#include "geometry.hpp"

namespace cnb {

// Phase space of the reduced Kepler problem in 3-(hyperbolic)-spherical
// coordinates, moving mass m about a fixed mass M at (0,0,0,1).
struct KeplerState {
    double alpha = 0, theta = 0, phi = 0;
    double p_alpha = 0, p_theta = 0, p_phi = 0;
};

struct KeplerParams {
    double m = 1, M = 1;
};

// The six Hamiltonian equations; throws on the chart singularities
// sn(alpha) = 0 and sin(theta) = 0.
KeplerState kepler_rhs(double t, const KeplerState& s, const KeplerParams& prm,
                       const CurvatureProfile& p);

// Conserved pair: A = p_phi and L = p_theta^2 + p_phi^2 csc^2(theta).
struct KeplerConserved {
    double A = 0, L = 0;
};
KeplerConserved kepler_conserved(const KeplerState& s);

// Reduced system in (alpha, theta, phi, p_alpha) at fixed A, L; theta-dot
// carries the branch sign and flips at turning points of L - A^2 csc^2(theta).
struct ReducedState {
    double alpha = 0, theta = 0, phi = 0, p_alpha = 0;
    int branch = +1;
};

std::array<double, 4> reduced_rhs(double t, const ReducedState& s, double A, double L,
                                  const KeplerParams& prm, const CurvatureProfile& p);

// |kappa| admitting a circular orbit of radius alpha: (m^2 M / (L ctn alpha))^2.
// Requires L > 0 and ctn(alpha) > 0 (no constant curvature works otherwise).
double circular_curvature(double alpha, const KeplerParams& prm, double L, Sign sign);

// Chart map to the ambient unit manifold; velocities recovered from momenta.
std::pair<UnitPoint, Vec4> spherical_to_ambient(const KeplerState& s, const KeplerParams& prm,
                                                double kappa, Sign sign);

struct KeplerSample {
    double t = 0;
    KeplerState state;
};

struct KeplerTrajectory {
    std::vector<KeplerSample> samples;
    HaltReason halt = HaltReason::None;
    double halt_time = 0;
};

// Fixed-step RK4 on the full 6-dimensional system; halts at sn(alpha) < 1e-6
// (collision with the fixed mass).
KeplerTrajectory integrate_kepler(const KeplerState& s0, const KeplerParams& prm,
                                  const CurvatureProfile& p, double t0, double t_end,
                                  const IntegrateOptions& opts);

struct ReducedSample {
    double t = 0;
    ReducedState state;
};

// The secondary check path: RK4 on the reduced system with explicit
// turning-point branch switching.
std::vector<ReducedSample> integrate_reduced(const ReducedState& s0, double A, double L,
                                             const KeplerParams& prm, const CurvatureProfile& p,
                                             double t0, double t_end, const IntegrateOptions& opts);

// Residual of the uncoupled second-order alpha equation evaluated on a dense
// uniform trajectory of alpha(t) by central differences:
//   add = k^2 L ctn(a) csct^2(a)/m^2 - |k|^{3/2} M csct^2(a) + kdot adot / k
// Returns the max interior residual.
double alpha_uncoupled_residual(const std::vector<double>& times,
                                const std::vector<double>& alphas, double L,
                                const KeplerParams& prm, const CurvatureProfile& p);

} // namespace cnb
