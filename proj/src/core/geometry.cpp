#include "geometry.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace cnb {

double arccsn(double y, Sign s, double slack) {
    if (s == Sign::Spherical) {
        if (y > 1.0 + slack || y < -1.0 - slack)
            throw DomainError("arccsn: argument outside [-1,1] beyond tolerance");
        return std::acos(std::clamp(y, -1.0, 1.0));
    }
    if (y < 1.0 - slack)
        throw DomainError("arccsn: argument below 1 beyond tolerance (hyperbolic)");
    return std::acosh(std::max(y, 1.0));
}

double pairwise_distance(const UnitPoint& a, const UnitPoint& b) {
    if (a.sign != b.sign) throw InvalidInput("pairwise_distance: signature mismatch");
    double c = metric_dot(a.v, b.v, a.sign);
    return arccsn(sign_value(a.sign) * c, a.sign);
}

std::pair<UnitPoint, Vec4> project_state(const Vec4& q, const Vec4& v, Sign s) {
    double qq = metric_dot(q, q, s);
    if (qq == 0.0) throw InvalidInput("project_state: q.q = 0, cannot normalize");
    if ((s == Sign::Spherical && qq < 0.0) || (s == Sign::Hyperbolic && qq > 0.0))
        throw InvalidInput("project_state: q.q has the wrong signature");
    UnitPoint p;
    p.sign = s;
    p.v = (1.0 / std::sqrt(std::fabs(qq))) * q;
    if (s == Sign::Hyperbolic && p.v.w <= 0.0)
        throw InvalidInput("project_state: point on the lower sheet of H^3 (w <= 0)");
    // normal coefficient is (q.v)/(q.q) = sigma (q.v) on the unit manifold
    Vec4 vt = v - (sign_value(s) * metric_dot(p.v, v, s)) * p.v;
    return {p, vt};
}

// --- supporting direction --------------------------------------------------

namespace {

using DVec = std::vector<double>;

double ddot(const DVec& a, const DVec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double dnorm(const DVec& a) { return std::sqrt(ddot(a, a)); }

void dnormalize(DVec& a) {
    double n = dnorm(a);
    for (double& x : a) x /= n;
}

double min_dot(const DVec& n, const std::vector<DVec>& pts) {
    double m = ddot(n, pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) m = std::min(m, ddot(n, pts[i]));
    return m;
}

// Solve the k x k system A x = b in place, partial pivoting; false if singular.
bool solve_dense(std::vector<DVec> A, DVec b, DVec& x) {
    const int k = static_cast<int>(b.size());
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        if (std::fabs(A[piv][c]) < 1e-12) return false;
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (int r = c + 1; r < k; ++r) {
            double f = A[r][c] / A[c][c];
            for (int cc = c; cc < k; ++cc) A[r][cc] -= f * A[c][cc];
            b[r] -= f * b[c];
        }
    }
    x.assign(k, 0.0);
    for (int r = k - 1; r >= 0; --r) {
        double s = b[r];
        for (int cc = r + 1; cc < k; ++cc) s -= A[r][cc] * x[cc];
        x[r] = s / A[r][r];
    }
    return true;
}

// Projected subgradient ascent of n -> min_i n.q_i on the unit sphere.
void ascend(DVec& n, const std::vector<DVec>& pts, int iters = 400) {
    const int dim = static_cast<int>(n.size());
    double step = 0.5;
    double best = min_dot(n, pts);
    DVec bestn = n;
    for (int it = 0; it < iters; ++it) {
        double m = min_dot(n, pts);
        // average of active (near-minimal) points is an ascent subgradient
        DVec g(dim, 0.0);
        int nact = 0;
        for (const DVec& p : pts)
            if (ddot(n, p) <= m + 1e-9) {
                for (int d = 0; d < dim; ++d) g[d] += p[d];
                ++nact;
            }
        for (int d = 0; d < dim; ++d) g[d] /= nact;
        double gn = ddot(g, n);
        for (int d = 0; d < dim; ++d) g[d] -= gn * n[d];
        double glen = dnorm(g);
        if (glen < 1e-15) break;
        DVec trial(dim);
        for (int d = 0; d < dim; ++d) trial[d] = n[d] + step * g[d];
        dnormalize(trial);
        double mt = min_dot(trial, pts);
        if (mt > m) {
            n = trial;
            if (mt > best) { best = mt; bestn = n; }
        } else {
            step *= 0.5;
            if (step < 1e-12) break;
        }
    }
    n = bestn;
}

} // namespace

SupportResult best_supporting_direction(const std::vector<DVec>& pts, int dim, int starts,
                                         unsigned seed) {
    if (pts.empty()) throw InvalidInput("supporting_direction: no points");
    if (dim < 2 || dim > 4) throw InvalidInput("supporting_direction: dim must be 2..4");
    const int n = static_cast<int>(pts.size());

    std::vector<DVec> cands;

    // KKT candidates: equal-dot directions from every subset of size <= dim.
    // u = P G^{-1} 1 has u.q_i constant over the subset; both signs matter.
    std::vector<int> subset;
    auto add_subset_candidate = [&](const std::vector<int>& idx) {
        const int k = static_cast<int>(idx.size());
        std::vector<DVec> gram(k, DVec(k));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) gram[r][c] = ddot(pts[idx[r]], pts[idx[c]]);
        DVec lam, ones(k, 1.0);
        if (!solve_dense(gram, ones, lam)) return;
        DVec u(dim, 0.0);
        for (int r = 0; r < k; ++r)
            for (int d = 0; d < dim; ++d) u[d] += lam[r] * pts[idx[r]][d];
        double len = dnorm(u);
        if (len < 1e-12) return;
        for (double& x : u) x /= len;
        cands.push_back(u);
        for (double& x : u) x = -x;
        cands.push_back(u);
    };
    std::function<void(int, int)> rec = [&](int from, int remaining) {
        if (!subset.empty()) add_subset_candidate(subset);
        if (remaining == 0) return;
        for (int i = from; i < n; ++i) {
            subset.push_back(i);
            rec(i + 1, remaining - 1);
            subset.pop_back();
        }
    };
    rec(0, dim);

    // Directions orthogonal to the span of all points: min dot exactly 0 there.
    {
        std::vector<DVec> basis; // orthonormal basis of the span
        for (const DVec& p : pts) {
            DVec r = p;
            for (const DVec& b : basis) {
                double c = ddot(r, b);
                for (int d = 0; d < dim; ++d) r[d] -= c * b[d];
            }
            if (dnorm(r) > 1e-10) {
                dnormalize(r);
                basis.push_back(r);
            }
        }
        for (int axis = 0; axis < dim && static_cast<int>(basis.size()) < dim; ++axis) {
            DVec r(dim, 0.0);
            r[axis] = 1.0;
            for (const DVec& b : basis) {
                double c = ddot(r, b);
                for (int d = 0; d < dim; ++d) r[d] -= c * b[d];
            }
            if (dnorm(r) > 1e-10) {
                dnormalize(r);
                cands.push_back(r);
                basis.push_back(r);
            }
        }
    }

    // Seeded multi-start ascents.
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < starts; ++s) {
        DVec r(dim);
        do {
            for (double& x : r) x = gauss(rng);
        } while (dnorm(r) < 1e-8);
        dnormalize(r);
        cands.push_back(r);
    }

    DVec best;
    double best_min = -2.0;
    for (DVec& c : cands) {
        ascend(c, pts);
        double m = min_dot(c, pts);
        if (m > best_min) {
            best_min = m;
            best = c;
        }
    }
    return SupportResult{best, best_min};
}

std::optional<SupportResult> supporting_direction(const std::vector<DVec>& pts, int dim,
                                                  double tol, int starts, unsigned seed) {
    SupportResult r = best_supporting_direction(pts, dim, starts, seed);
    if (r.min_dot < -tol) return std::nullopt;
    return r;
}

std::optional<SupportResult> hemisphere_test(const std::vector<UnitPoint>& pts, double tol) {
    if (pts.empty()) throw InvalidInput("hemisphere_test: no points");
    std::vector<DVec> p;
    p.reserve(pts.size());
    for (const UnitPoint& u : pts) {
        if (u.sign != Sign::Spherical)
            throw InvalidInput("hemisphere_test: defined on S^3 only (sigma = +1)");
        p.push_back({u.v.x, u.v.y, u.v.z, u.v.w});
    }
    return supporting_direction(p, 4, tol);
}

// --- determinants ----------------------------------------------------------

double det_small(const std::vector<std::vector<double>>& rows) {
    const int k = static_cast<int>(rows.size());
    std::vector<std::vector<double>> a = rows;
    double det = 1.0;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        if (a[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < k; ++r) {
            double f = a[r][c] / a[c][c];
            for (int cc = c; cc < k; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return det;
}

SignedMinorResult signed_minor_identity(const std::vector<std::vector<double>>& vectors) {
    const int n = static_cast<int>(vectors.size()) - 1;
    if (n < 2 || n > 4) throw InvalidInput("signed_minor_identity: need n+1 vectors in R^n, n in {2,3,4}");
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != n)
            throw InvalidInput("signed_minor_identity: vector dimension mismatch");

    SignedMinorResult res;
    res.minors.resize(n + 1);
    double maxd = 0;
    for (int k = 0; k <= n; ++k) {
        std::vector<std::vector<double>> rows;
        rows.reserve(n);
        for (int i = 0; i <= n; ++i)
            if (i != k) rows.push_back(vectors[i]);
        res.minors[k] = det_small(rows);
        maxd = std::max(maxd, std::fabs(res.minors[k]));
    }
    double scale = 0;
    for (const auto& v : vectors)
        for (double x : v) scale = std::max(scale, std::fabs(x));
    res.rank_deficient = maxd <= 1e-12 * std::max(1.0, std::pow(scale, n));

    res.residual.assign(n, 0.0);
    for (int k = 0; k <= n; ++k) {
        double s = (k % 2 == 0) ? 1.0 : -1.0;
        for (int d = 0; d < n; ++d) res.residual[d] += s * res.minors[k] * vectors[k][d];
    }
    return res;
}

} // namespace cnb
