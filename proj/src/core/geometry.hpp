#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vec4.hpp"

namespace cnb {

// Unified circular/hyperbolic functions selected by the curvature sign:
// sn = sin|sinh, csn = cos|cosh, ctn = cot|coth, csct = csc|csch.
struct Trig {
    double sn = 0, csn = 1;
    Sign sign = Sign::Spherical;

    double ctn() const {
        if (sn == 0.0) throw DomainError("ctn undefined: sn(x) = 0");
        return csn / sn;
    }
    double csct() const {
        if (sn == 0.0) throw DomainError("csct undefined: sn(x) = 0");
        return 1.0 / sn;
    }
};

inline Trig unified_trig(double x, Sign s) {
    Trig t;
    t.sign = s;
    if (s == Sign::Spherical) {
        t.sn = std::sin(x);
        t.csn = std::cos(x);
    } else {
        t.sn = std::sinh(x);
        t.csn = std::cosh(x);
    }
    return t;
}

// Inverse of csn: acos on [-1,1] for the sphere, acosh on [1,inf) for H^3.
// Inputs within `slack` (default 1e-9) outside the domain are clamped; beyond
// that a DomainError is raised (floating-point drift near coincident points).
double arccsn(double y, Sign s, double slack = 1e-9);

// A point on the unit manifold: metric_dot(v,v) = sigma, and w > 0 on H^3
// (the upper sheet is fixed once and for all; mixing sheets is rejected).
struct UnitPoint {
    Vec4 v;
    Sign sign = Sign::Spherical;

    double constraint_residual() const {
        return std::fabs(metric_dot(v, v, sign) - sign_value(sign));
    }
};

// Geodesic distance d = arccsn(sigma q1.q2); [0,pi] on S^3, [0,inf) on H^3.
double pairwise_distance(const UnitPoint& a, const UnitPoint& b);

// Rescale q onto the unit manifold and strip the metric-normal component of v,
// so that q.q = sigma and q.v = 0 hold exactly (up to round-off).
// Throws if q.q has the wrong signature or vanishes, or if q sits on the lower sheet.
std::pair<UnitPoint, Vec4> project_state(const Vec4& q, const Vec4& v, Sign s);

// --- hemisphere tests ----------------------------------------------------

// Result of the max-min search over unit directions: n maximizing min_i n.q_i.
struct SupportResult {
    std::vector<double> direction; // length dim
    double min_dot = 0;            // min_i direction . q_i
};

// Maximizer of min_i n.q_i over the unit sphere of R^dim (dim = 2, 3 or 4;
// Euclidean dot), found by 64 deterministically seeded multi-start ascents
// plus exact equal-dot (KKT) candidates.
SupportResult best_supporting_direction(const std::vector<std::vector<double>>& pts, int dim,
                                        int starts = 64, unsigned seed = 20240901u);

// Closed-hemisphere certificate: the direction above when its min dot is
// >= -tol, nullopt otherwise (the configuration is in no closed hemisphere).
std::optional<SupportResult> supporting_direction(const std::vector<std::vector<double>>& pts,
                                                  int dim, double tol = 1e-8,
                                                  int starts = 64, unsigned seed = 20240901u);

// Convenience wrapper for S^3 configurations (sigma = +1 required).
std::optional<SupportResult> hemisphere_test(const std::vector<UnitPoint>& pts,
                                             double tol = 1e-8);

// --- small determinants and the signed-minor identity ---------------------

// Determinant of an n x n matrix given as n row vectors, n <= 5.
double det_small(const std::vector<std::vector<double>>& rows);

struct SignedMinorResult {
    std::vector<double> residual;  // sum_k (-1)^k D_k v_k, length n
    std::vector<double> minors;    // D_k, length n+1
    bool rank_deficient = false;   // all D_k ~ 0
};

// For n+1 vectors in R^n of rank n: sum_k (-1)^k D_k v_k = 0, where D_k is the
// determinant of the collection with v_k removed (order preserved).
SignedMinorResult signed_minor_identity(const std::vector<std::vector<double>>& vectors);

} // namespace cnb
