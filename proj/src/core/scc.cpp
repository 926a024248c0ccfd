#include "scc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cnb {

double scc_residual(const SystemState& s) {
    StateValidation v = validate_state(s);
    if (!v.ok) throw InvalidInput("scc_residual: invalid state: " + v.message);
    std::vector<Vec4> f = force_gradient(s);
    double worst = 0;
    for (const Vec4& fi : f) worst = std::max(worst, norm(fi));
    return worst;
}

RingFamily ring_family_from_string(const std::string& s) {
    if (s == "triangle") return RingFamily::Triangle;
    if (s == "tetrahedron") return RingFamily::Tetrahedron;
    throw InvalidInput("unknown double-ring family: " + s);
}

std::string to_string(RingFamily f) {
    return f == RingFamily::Triangle ? "triangle" : "tetrahedron";
}

SystemState build_double_ring(const DoubleRingParams& p) {
    if (!(p.c1 > 0.0 && p.c1 < 1.0 && p.c2 > -1.0 && p.c2 < 0.0))
        throw InvalidInput("double ring: need c1 in (0,1), c2 in (-1,0)");
    if (!(p.m > 0.0)) throw InvalidInput("double ring: mass m must be positive");
    double r1 = std::sqrt(1.0 - p.c1 * p.c1);
    double r2 = std::sqrt(1.0 - p.c2 * p.c2);

    SystemState s;
    s.sign = Sign::Spherical;
    auto add_ring = [&](double r, double c, double mass, RingFamily fam) {
        if (fam == RingFamily::Triangle) {
            // ring axis z, all on the great sphere w = 0
            const double h = std::sqrt(3.0) / 2.0;
            s.pos.push_back({r, 0.0, c, 0.0});
            s.pos.push_back({-r / 2.0, h * r, c, 0.0});
            s.pos.push_back({-r / 2.0, -h * r, c, 0.0});
            for (int i = 0; i < 3; ++i) s.mass.push_back(mass);
        } else {
            // ring axis w
            const double a = 2.0 * std::sqrt(2.0) / 3.0;
            const double b = std::sqrt(2.0) / 3.0;
            const double d = std::sqrt(6.0) / 3.0;
            s.pos.push_back({r, 0.0, 0.0, c});
            s.pos.push_back({-r / 3.0, a * r, 0.0, c});
            s.pos.push_back({-r / 3.0, -b * r, d * r, c});
            s.pos.push_back({-r / 3.0, -b * r, -d * r, c});
            for (int i = 0; i < 4; ++i) s.mass.push_back(mass);
        }
    };
    add_ring(r1, p.c1, 1.0, p.family);
    add_ring(r2, p.c2, p.m, p.family);
    s.vel.assign(s.pos.size(), Vec4{});

    StateValidation v = validate_state(s);
    if (!v.ok) throw InvalidInput("double ring: degenerate configuration: " + v.message);
    return s;
}

namespace {

// (1 - x^2)^{3/2}, guarding the singular denominators of the balance equations
double pow32(double x) {
    double d = 1.0 - x * x;
    if (d <= 0.0) throw DomainError("double ring: singular denominator (rings touch)");
    return d * std::sqrt(d);
}

struct RingGeometry {
    double r1, r2, u, v, w1, w2;
    double nbr;   // ring size minus 1 neighbours on the offset term (2 or 3)
    double ring;  // within-ring multiplicity (3 or 4)
};

RingGeometry ring_geometry(double c1, double c2, RingFamily fam) {
    RingGeometry g;
    g.r1 = std::sqrt(1.0 - c1 * c1);
    g.r2 = std::sqrt(1.0 - c2 * c2);
    double inv = fam == RingFamily::Triangle ? 0.5 : (1.0 / 3.0);
    g.u = c1 * c2 + g.r1 * g.r2;
    g.v = c1 * c2 - g.r1 * g.r2 * inv;
    g.w1 = c1 * c1 - g.r1 * g.r1 * inv;
    g.w2 = c2 * c2 - g.r2 * g.r2 * inv;
    g.nbr = fam == RingFamily::Triangle ? 2.0 : 3.0;
    g.ring = fam == RingFamily::Triangle ? 3.0 : 4.0;
    return g;
}

} // namespace

double double_ring_mass(double c1, double c2, RingFamily family) {
    if (!(c1 > 0.0 && c1 < 1.0 && c2 > -1.0 && c2 < 0.0))
        throw InvalidInput("double_ring_mass: need c1 in (0,1), c2 in (-1,0)");
    RingGeometry g = ring_geometry(c1, c2, family);
    double bracket = (c1 - g.u * c2) / pow32(g.u) +
                     (g.nbr * c1 - (g.nbr * c1 * c2 - g.r1 * g.r2) * c2) / pow32(g.v);
    double denom = g.ring * g.r2 * g.r2 * c2;
    if (denom == 0.0) throw DomainError("double_ring_mass: singular denominator r2^2 c2 = 0");
    return -pow32(g.w2) / denom * bracket;
}

double double_ring_residual(double c1, double c2, RingFamily family) {
    RingGeometry g = ring_geometry(c1, c2, family);
    double m = double_ring_mass(c1, c2, family);
    return g.ring * g.r1 * g.r1 * c1 / pow32(g.w1) +
           m * (c2 - g.u * c1) / pow32(g.u) +
           m * (g.nbr * c2 - (g.nbr * c1 * c2 - g.r1 * g.r2) * c1) / pow32(g.v);
}

std::vector<RootPoint> solve_double_ring(RingFamily family, const std::vector<double>& c2_grid) {
    const double eps = 1e-4;
    const int scan = 1000;
    std::vector<RootPoint> curve;
    for (double c2 : c2_grid) {
        if (!(c2 > -1.0 && c2 < 0.0))
            throw InvalidInput("solve_double_ring: grid values must lie in (-1, 0)");
        double lo = std::max(-c2, eps), hi = 1.0 - eps;
        if (lo >= hi) continue;
        double prev_c1 = lo;
        double prev_f = double_ring_residual(prev_c1, c2, family);
        for (int i = 1; i <= scan; ++i) {
            double c1 = lo + (hi - lo) * i / scan;
            double f = double_ring_residual(c1, c2, family);
            if (prev_f == 0.0 || (prev_f < 0.0) != (f < 0.0)) {
                double a = prev_c1, b = c1, fa = prev_f;
                double mid = a, fm = fa;
                for (int it = 0; it < 200; ++it) {
                    mid = 0.5 * (a + b);
                    fm = double_ring_residual(mid, c2, family);
                    if (std::fabs(fm) < 1e-12 || (b - a) < 1e-16) break;
                    if ((fm < 0.0) == (fa < 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                RootPoint pt;
                pt.c1 = mid;
                pt.c2 = c2;
                pt.m = double_ring_mass(mid, c2, family);
                pt.f_residual = fm;
                pt.scc = scc_residual(build_double_ring({family, mid, c2, pt.m}));
                curve.push_back(pt);
            }
            prev_c1 = c1;
            prev_f = f;
        }
    }
    return curve;
}

GreatCircleBalance great_circle_balance(const std::array<double, 4>& phi,
                                        const std::array<double, 4>& masses) {
    if (phi[0] != 0.0 || !(phi[0] < phi[1] && phi[1] < phi[2] && phi[2] < phi[3]) ||
        !(phi[3] < 2.0 * M_PI))
        throw InvalidInput("great_circle_balance: need 0 = phi1 < phi2 < phi3 < phi4 < 2pi");
    double r[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            double sn = std::sin(phi[i] - phi[j]);
            if (std::fabs(sn) < 1e-12)
                throw SingularPair("great_circle_balance: coincident or antipodal pair", i, j);
            r[i][j] = sn * sn;
        }
    const auto& m = masses;
    GreatCircleBalance out;
    out.balance[0] = m[1] / r[0][1] + m[2] / r[0][2] - m[3] / r[0][3];
    out.balance[1] = m[2] / r[1][2] + m[3] / r[1][3] - m[0] / r[0][1];
    out.balance[2] = m[0] / r[0][2] + m[1] / r[1][2] - m[3] / r[2][3];
    out.balance[3] = m[1] / r[1][3] + m[2] / r[2][3] - m[0] / r[0][3];
    out.condition = 1.0 / (r[0][1] * r[2][3]) - 1.0 / (r[1][2] * r[0][3]) -
                    1.0 / (r[0][2] * r[1][3]);
    return out;
}

// --- canonical frames -------------------------------------------------------

namespace {

using DVec = std::vector<double>;

double ddot(const DVec& a, const DVec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void orthonormalize_against(DVec& v, const std::vector<DVec>& basis) {
    for (const DVec& b : basis) {
        double c = ddot(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
}

double dnorm(const DVec& v) { return std::sqrt(ddot(v, v)); }

} // namespace

std::vector<std::vector<double>> canonicalize(const std::vector<std::vector<double>>& pts,
                                              int dim) {
    if (dim != 3 && dim != 4) throw InvalidInput("canonicalize: dim must be 3 or 4");
    if (pts.size() < 3) throw InvalidInput("canonicalize: need at least three points");
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != dim)
            throw InvalidInput("canonicalize: point dimension mismatch");

    std::vector<DVec> basis;
    const int lead = std::min<int>(dim - 1, 3);
    for (int k = 0; k < lead; ++k) {
        DVec v = pts[k];
        orthonormalize_against(v, basis);
        double n = dnorm(v);
        if (n < 1e-10)
            throw InvalidInput("canonicalize: leading points are linearly dependent");
        for (double& x : v) x /= n;
        basis.push_back(v);
    }
    // complete the frame from coordinate axes, then fix the orientation
    for (int axis = 0; axis < dim && static_cast<int>(basis.size()) < dim; ++axis) {
        DVec v(dim, 0.0);
        v[axis] = 1.0;
        orthonormalize_against(v, basis);
        double n = dnorm(v);
        if (n < 1e-10) continue;
        for (double& x : v) x /= n;
        basis.push_back(v);
    }
    std::vector<std::vector<double>> rows(dim);
    for (int i = 0; i < dim; ++i) rows[i] = basis[i];
    if (det_small(rows) < 0.0)
        for (double& x : basis[dim - 1]) x = -x;

    std::vector<DVec> out(pts.size(), DVec(dim));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (int d = 0; d < dim; ++d) out[i][d] = ddot(pts[i], basis[d]);
    return out;
}

// --- checkers ---------------------------------------------------------------

namespace {

double sine_of_distance(const DVec& a, const DVec& b) {
    double c = std::clamp(ddot(a, b), -1.0, 1.0);
    double s2 = 1.0 - c * c;
    if (s2 <= 0.0) throw SingularPair("checker: coincident or antipodal pair", -1, -1);
    return std::sqrt(s2);
}

void require_unit(const std::vector<DVec>& pts, double tol) {
    for (const auto& p : pts)
        if (std::fabs(ddot(p, p) - 1.0) > 10.0 * tol)
            throw InvalidInput("checker: points must be unit vectors");
}

SystemState assemble_sphere_state(const std::vector<DVec>& pts, const std::vector<double>& masses) {
    SystemState s;
    s.sign = Sign::Spherical;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Vec4 q{pts[i][0], pts[i][1], pts[i].size() > 2 ? pts[i][2] : 0.0,
               pts[i].size() > 3 ? pts[i][3] : 0.0};
        auto [u, v] = project_state(q, Vec4{}, Sign::Spherical);
        s.pos.push_back(u.v);
        s.vel.push_back(v);
        s.mass.push_back(masses[i]);
    }
    s.t = 0;
    return s;
}

} // namespace

SccReport tetrahedron_check(const std::vector<DVec>& pts, double m3, double tol) {
    if (pts.size() != 4) throw InvalidInput("tetrahedron_check: need exactly 4 points");
    for (const auto& p : pts)
        if (p.size() != 3) throw InvalidInput("tetrahedron_check: points must be 3-vectors on S^2");
    if (!(m3 > 0.0)) throw InvalidInput("tetrahedron_check: anchor mass m3 must be positive");
    require_unit(pts, 1e-8);
    const double frame_tol = 1e-9;
    if (std::fabs(pts[0][0] - 1.0) > frame_tol || std::fabs(pts[0][1]) > frame_tol ||
        std::fabs(pts[0][2]) > frame_tol || std::fabs(pts[1][2]) > frame_tol)
        throw InvalidInput("tetrahedron_check: frame violation (need q0 = (1,0,0), q1 in xy)");
    if (std::fabs(pts[1][1]) < 1e-9 || std::fabs(pts[2][2]) < 1e-9 || std::fabs(pts[3][2]) < 1e-9)
        throw InvalidInput("tetrahedron_check: great-circle degeneracy (y1, z2, z3 must be non-zero)");

    double s01 = sine_of_distance(pts[0], pts[1]);
    double s02 = sine_of_distance(pts[0], pts[2]);
    double s03 = sine_of_distance(pts[0], pts[3]);
    double s12 = sine_of_distance(pts[1], pts[2]);
    double s13 = sine_of_distance(pts[1], pts[3]);
    double s23 = sine_of_distance(pts[2], pts[3]);

    SccReport rep;

    SupportResult sup = best_supporting_direction(pts, 3);
    bool c1ok = sup.min_dot < -1e-8;
    rep.conditions.push_back({"not_in_closed_hemisphere", c1ok, sup.min_dot});

    double p1 = s01 * s23, p2 = s02 * s13, p3 = s03 * s12;
    double scale = std::max({p1, p2, p3});
    double r21 = std::fabs(p1 - p2) / scale;
    double r22 = std::fabs(p2 - p3) / scale;
    rep.conditions.push_back({"sine_product_01_23_vs_02_13", r21 < tol, r21});
    rep.conditions.push_back({"sine_product_02_13_vs_03_12", r22 < tol, r22});

    double D0 = det_small({pts[1], pts[2], pts[3]});
    double D1 = det_small({pts[0], pts[2], pts[3]});
    double D2 = det_small({pts[0], pts[1], pts[3]});
    double D3 = det_small({pts[0], pts[1], pts[2]});
    rep.determinants = {D0, D1, D2, D3};
    if (std::fabs(D3) < 1e-12) {
        if (!c1ok)
            throw InvalidInput("tetrahedron_check: degenerate determinant D3 = 0 with points "
                               "in a hemisphere is inconsistent input");
        throw InvalidInput("tetrahedron_check: degenerate determinant D3 = 0");
    }

    auto cube = [](double x) { return x * x * x; };
    double m0 = -m3 * D0 * cube(s01) / (D3 * cube(s13));
    double m1 = m3 * D1 * cube(s01) / (D3 * cube(s03));
    double m2 = -m3 * D2 * cube(s02) / (D3 * cube(s03));
    rep.masses = {m0, m1, m2, m3};
    bool masses_ok = m0 > 0.0 && m1 > 0.0 && m2 > 0.0;
    rep.conditions.push_back({"masses_positive", masses_ok,
                              std::min({m0, m1, m2})});

    rep.satisfied = c1ok && r21 < tol && r22 < tol && masses_ok;
    if (masses_ok) {
        rep.configuration = assemble_sphere_state(pts, rep.masses);
        std::vector<Vec4> f = force_gradient(rep.configuration);
        for (const Vec4& fi : f) rep.per_body_residual.push_back(norm(fi));
        rep.scc = *std::max_element(rep.per_body_residual.begin(), rep.per_body_residual.end());
    } else {
        rep.scc = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

SccReport pentatope_check(const std::vector<DVec>& pts, double m4, double tol) {
    if (pts.size() != 5) throw InvalidInput("pentatope_check: need exactly 5 points");
    for (const auto& p : pts)
        if (p.size() != 4) throw InvalidInput("pentatope_check: points must be 4-vectors in S^3");
    if (!(m4 > 0.0)) throw InvalidInput("pentatope_check: anchor mass m4 must be positive");
    require_unit(pts, 1e-8);
    const double frame_tol = 1e-9;
    if (std::fabs(pts[0][0] - 1.0) > frame_tol || std::fabs(pts[0][1]) > frame_tol ||
        std::fabs(pts[0][2]) > frame_tol || std::fabs(pts[0][3]) > frame_tol ||
        std::fabs(pts[1][2]) > frame_tol || std::fabs(pts[1][3]) > frame_tol ||
        std::fabs(pts[2][3]) > frame_tol)
        throw InvalidInput("pentatope_check: frame violation (need q0 = e1, q1 in xy, q2 in xyz)");
    if (std::fabs(pts[1][1]) < 1e-9 || std::fabs(pts[2][2]) < 1e-9)
        throw InvalidInput("pentatope_check: degenerate frame (y1, z2 must be non-zero)");
    if (std::fabs(pts[3][3]) < 1e-9 || std::fabs(pts[4][3]) < 1e-9)
        throw InvalidInput("pentatope_check: not a genuine pentatope (w3, w4 must be non-zero; "
                           "the configuration lies on a great 2-sphere)");

    double s[5][5];
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) s[i][j] = s[j][i] = sine_of_distance(pts[i], pts[j]);

    SccReport rep;
    SupportResult sup = best_supporting_direction(pts, 4);
    bool c1ok = sup.min_dot < -1e-8;
    rep.conditions.push_back({"not_in_closed_hemisphere", c1ok, sup.min_dot});

    // three ratio chains, two cross-multiplied residuals each
    struct Chain {
        const char* name;
        double a1, b1, a2, b2, a3, b3; // a1/b1 = a2/b2 = a3/b3
    };
    Chain chains[3] = {
        {"ratio_chain_01_04", s[0][1], s[0][4], s[1][2], s[2][4], s[1][3], s[3][4]},
        {"ratio_chain_02_04", s[0][2], s[0][4], s[1][2], s[1][4], s[2][3], s[3][4]},
        {"ratio_chain_03_04", s[0][3], s[0][4], s[1][3], s[1][4], s[2][3], s[2][4]},
    };
    bool ratios_ok = true;
    for (const Chain& ch : chains) {
        double x12 = ch.a1 * ch.b2 - ch.a2 * ch.b1;
        double x23 = ch.a2 * ch.b3 - ch.a3 * ch.b2;
        double sc = std::max({ch.a1 * ch.b2, ch.a2 * ch.b1, ch.a2 * ch.b3, ch.a3 * ch.b2});
        double r1 = std::fabs(x12) / sc, r2 = std::fabs(x23) / sc;
        rep.conditions.push_back({std::string(ch.name) + "_a", r1 < tol, r1});
        rep.conditions.push_back({std::string(ch.name) + "_b", r2 < tol, r2});
        ratios_ok = ratios_ok && r1 < tol && r2 < tol;
    }

    double D0 = det_small({pts[1], pts[2], pts[3], pts[4]});
    double D1 = det_small({pts[0], pts[2], pts[3], pts[4]});
    double D2 = det_small({pts[0], pts[1], pts[3], pts[4]});
    double D3 = det_small({pts[0], pts[1], pts[2], pts[4]});
    double D4 = det_small({pts[0], pts[1], pts[2], pts[3]});
    rep.determinants = {D0, D1, D2, D3, D4};
    if (std::fabs(D4) < 1e-12)
        throw InvalidInput("pentatope_check: degenerate determinant D4 = 0");

    auto cube = [](double x) { return x * x * x; };
    double m0 = m4 * D0 * cube(s[0][1]) / (D4 * cube(s[1][4]));
    double m1 = -m4 * D1 * cube(s[0][1]) / (D4 * cube(s[0][4]));
    double m2 = m4 * D2 * cube(s[0][2]) / (D4 * cube(s[0][4]));
    double m3 = -m4 * D3 * cube(s[0][3]) / (D4 * cube(s[0][4]));
    rep.masses = {m0, m1, m2, m3, m4};
    bool masses_ok = m0 > 0.0 && m1 > 0.0 && m2 > 0.0 && m3 > 0.0;
    rep.conditions.push_back({"masses_positive", masses_ok, std::min({m0, m1, m2, m3})});

    rep.satisfied = c1ok && ratios_ok && masses_ok;
    if (masses_ok) {
        rep.configuration = assemble_sphere_state(pts, rep.masses);
        std::vector<Vec4> f = force_gradient(rep.configuration);
        for (const Vec4& fi : f) rep.per_body_residual.push_back(norm(fi));
        rep.scc = *std::max_element(rep.per_body_residual.begin(), rep.per_body_residual.end());
    } else {
        rep.scc = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

} // namespace cnb
