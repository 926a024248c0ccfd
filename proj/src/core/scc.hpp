#pragma once

#include <array>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "geometry.hpp"

namespace cnb {

// max_i ||F_i||: zero exactly at special central configurations (critical
// points of the force function). Defined for both signs; on H^3 it is a
// residual that never vanishes.
double scc_residual(const SystemState& s);

enum class RingFamily { Triangle, Tetrahedron };

RingFamily ring_family_from_string(const std::string& s);
std::string to_string(RingFamily f);

// Two parallel rings (equilateral triangles on the great sphere w = 0 with the
// z axis as ring axis, or regular tetrahedra in S^3 with the w axis) at
// heights c1 in (0,1) and c2 in (-1,0); ring-1 masses are 1, ring-2 masses m.
struct DoubleRingParams {
    RingFamily family = RingFamily::Triangle;
    double c1 = 0.5;
    double c2 = -0.5;
    double m = 1.0;
};

SystemState build_double_ring(const DoubleRingParams& p);

// The closed-form ring-2 balance mass m(c1, c2); positive on {c1 >= -c2}.
double double_ring_mass(double c1, double c2, RingFamily family);

// Ring-1 balance with m(c1,c2) substituted: f (triangle) or g (tetrahedron).
// Zero exactly where the double ring with mass m(c1,c2) is an SCC.
double double_ring_residual(double c1, double c2, RingFamily family);

struct RootPoint {
    double c1 = 0, c2 = 0, m = 0;
    double f_residual = 0;   // residual at the converged root
    double scc = 0;          // scc_residual of the assembled configuration
};

// For each c2 on the grid: scan c1 over (max(-c2, eps), 1-eps) on a 1000-point
// grid, bisect every sign-change bracket to |f| < 1e-12, and return the root
// curve with masses. Grid lines without a sign change contribute nothing.
std::vector<RootPoint> solve_double_ring(RingFamily family, const std::vector<double>& c2_grid);

// --- four bodies on a great circle ----------------------------------------

struct GreatCircleBalance {
    std::array<double, 4> balance{}; // residuals of the four force-balance equations
    double condition = 0;            // 1/(r12 r34) - 1/(r23 r14) - 1/(r13 r24)
};

// Angles 0 = phi1 < phi2 < phi3 < phi4 < 2pi in the canonical sector
// (phi3 < pi < phi4 < pi + phi2); r_ij = sin^2(phi_i - phi_j).
GreatCircleBalance great_circle_balance(const std::array<double, 4>& phi,
                                        const std::array<double, 4>& masses);

// --- canonical frames ------------------------------------------------------

// Rotates q0 to e1, q1 into the xy-plane (y1 > 0), q2 into xyz (z2 > 0 in the
// 4-dimensional case); the returned points are coordinates in that frame.
std::vector<std::vector<double>> canonicalize(const std::vector<std::vector<double>>& pts,
                                              int dim);

// --- iff-checkers ----------------------------------------------------------

struct CheckCondition {
    std::string name;
    bool ok = false;
    double residual = 0;
};

struct SccReport {
    SystemState configuration;
    std::vector<double> per_body_residual; // ||F_i||
    std::vector<CheckCondition> conditions;
    std::vector<double> masses;
    std::vector<double> determinants;
    double scc = 0; // scc_residual of the assembled configuration
    bool satisfied = false;
};

// Tetrahedral 4-body configurations on the great sphere S^2 (w = 0), given in
// the canonical frame q0 = (1,0,0), q1 = (x1,y1,0). Conditions: (1) not all in
// one hemisphere, (2) sin d01 sin d23 = sin d02 sin d13 = sin d03 sin d12,
// (3) masses from the signed 3x3 minors, all positive.
SccReport tetrahedron_check(const std::vector<std::vector<double>>& pts, double m3,
                            double tol = 1e-9);

// Pentatope 5-body configurations in S^3, canonical frame q0 = e1, q1 in xy,
// q2 in xyz; conditions (2)-(4) are the six sine-ratio identities and (5) the
// masses from the signed 4x4 minors.
SccReport pentatope_check(const std::vector<std::vector<double>>& pts, double m4,
                          double tol = 1e-9);

} // namespace cnb
