#include "curvature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cnb {

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "constant") return ProfileKind::Constant;
    if (s == "linear") return ProfileKind::Linear;
    if (s == "exponential") return ProfileKind::Exponential;
    if (s == "sinusoidal") return ProfileKind::Sinusoidal;
    if (s == "tabulated") return ProfileKind::Tabulated;
    throw InvalidInput("unknown curvature profile kind: " + s);
}

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::Constant: return "constant";
        case ProfileKind::Linear: return "linear";
        case ProfileKind::Exponential: return "exponential";
        case ProfileKind::Sinusoidal: return "sinusoidal";
        case ProfileKind::Tabulated: return "tabulated";
    }
    return "?";
}

CurvatureProfile::CurvatureProfile(ProfileKind kind, std::vector<double> params, Sign sign,
                                   double span_begin, double span_end)
    : kind_(kind), params_(std::move(params)), sign_(sign), t0_(span_begin), t1_(span_end) {
    if (!(t0_ < t1_)) throw InvalidInput("curvature profile: span must satisfy t0 < t1");
    std::size_t need = 0;
    switch (kind_) {
        case ProfileKind::Constant: need = 1; break;
        case ProfileKind::Linear: need = 2; break;
        case ProfileKind::Exponential: need = 2; break;
        case ProfileKind::Sinusoidal: need = 3; break;
        case ProfileKind::Tabulated:
            if (params_.size() < 6 || params_.size() % 2 != 0)
                throw InvalidInput("tabulated profile: need >= 3 (t, value) pairs");
            build_spline();
            if (tk_.front() > std::min(0.0, t0_) || tk_.back() < std::max(0.0, t1_))
                throw InvalidInput("tabulated profile: table must cover the span and t = 0 "
                                   "(K is the primitive with K(0) = 0)");
            need = params_.size();
            break;
    }
    if (params_.size() != need)
        throw InvalidInput("curvature profile: wrong parameter count for kind " + to_string(kind_));
}

void CurvatureProfile::build_spline() {
    const std::size_t n = params_.size() / 2;
    tk_.resize(n);
    ta_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        tk_[i] = params_[2 * i];
        ta_[i] = params_[2 * i + 1];
        if (i > 0 && tk_[i] <= tk_[i - 1])
            throw InvalidInput("tabulated profile: times must be strictly increasing");
    }
    // natural cubic spline: second derivatives m_i from the tridiagonal system
    std::vector<double> h(n - 1), alpha(n, 0.0), l(n), mu(n), zv(n), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = tk_[i + 1] - tk_[i];
    for (std::size_t i = 1; i + 1 < n; ++i)
        alpha[i] = 3.0 * ((ta_[i + 1] - ta_[i]) / h[i] - (ta_[i] - ta_[i - 1]) / h[i - 1]);
    l[0] = 1.0; mu[0] = 0.0; zv[0] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        l[i] = 2.0 * (tk_[i + 1] - tk_[i - 1]) - h[i - 1] * mu[i - 1];
        mu[i] = h[i] / l[i];
        zv[i] = (alpha[i] - h[i - 1] * zv[i - 1]) / l[i];
    }
    l[n - 1] = 1.0; zv[n - 1] = 0.0; m[n - 1] = 0.0;
    tb_.resize(n - 1); tc_.resize(n); td_.resize(n - 1);
    tc_[n - 1] = 0.0;
    for (std::size_t j = n - 1; j-- > 0;) {
        tc_[j] = zv[j] - mu[j] * tc_[j + 1];
        tb_[j] = (ta_[j + 1] - ta_[j]) / h[j] - h[j] * (tc_[j + 1] + 2.0 * tc_[j]) / 3.0;
        td_[j] = (tc_[j + 1] - tc_[j]) / (3.0 * h[j]);
    }
    // exact integral of the spline from tk_[0] to each knot
    tI_.assign(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double hh = h[j];
        tI_[j + 1] = tI_[j] + ta_[j] * hh + tb_[j] * hh * hh / 2.0 + tc_[j] * hh * hh * hh / 3.0 +
                     td_[j] * hh * hh * hh * hh / 4.0;
    }
}

ProfileEval CurvatureProfile::eval_spline(double t) const {
    auto piece = [&](double x) -> std::size_t {
        auto it = std::upper_bound(tk_.begin(), tk_.end(), x);
        std::size_t j = (it == tk_.begin()) ? 0 : static_cast<std::size_t>(it - tk_.begin() - 1);
        return std::min(j, tk_.size() - 2);
    };
    auto integral_from_first_knot = [&](double x) {
        std::size_t j = piece(x);
        double dt = x - tk_[j];
        return tI_[j] + ta_[j] * dt + tb_[j] * dt * dt / 2.0 + tc_[j] * dt * dt * dt / 3.0 +
               td_[j] * dt * dt * dt * dt / 4.0;
    };
    std::size_t j = piece(t);
    double dt = t - tk_[j];
    ProfileEval e;
    e.kappa = ta_[j] + tb_[j] * dt + tc_[j] * dt * dt + td_[j] * dt * dt * dt;
    e.kappa_dot = tb_[j] + 2.0 * tc_[j] * dt + 3.0 * td_[j] * dt * dt;
    e.kappa_ddot = 2.0 * tc_[j] + 6.0 * td_[j] * dt;
    e.K = integral_from_first_knot(t) - integral_from_first_knot(0.0);
    return e;
}

ProfileEval CurvatureProfile::eval(double t) const {
    const double slack = 1e-9 * (1.0 + std::fabs(t1_ - t0_));
    if (t < t0_ - slack || t > t1_ + slack)
        throw DomainError("curvature profile: t outside the validity span");
    ProfileEval e;
    switch (kind_) {
        case ProfileKind::Constant: {
            e.kappa = params_[0];
            e.K = params_[0] * t;
            break;
        }
        case ProfileKind::Linear: {
            double k0 = params_[0], k1 = params_[1];
            e.kappa = k0 + k1 * t;
            e.kappa_dot = k1;
            e.K = k0 * t + 0.5 * k1 * t * t;
            break;
        }
        case ProfileKind::Exponential: {
            double k0 = params_[0], lam = params_[1];
            double ex = std::exp(lam * t);
            e.kappa = k0 * ex;
            e.kappa_dot = k0 * lam * ex;
            e.kappa_ddot = k0 * lam * lam * ex;
            e.K = (lam == 0.0) ? k0 * t : k0 * (ex - 1.0) / lam;
            break;
        }
        case ProfileKind::Sinusoidal: {
            double k0 = params_[0], eps = params_[1], om = params_[2];
            e.kappa = k0 + eps * std::sin(om * t);
            e.kappa_dot = eps * om * std::cos(om * t);
            e.kappa_ddot = -eps * om * om * std::sin(om * t);
            e.K = (om == 0.0) ? k0 * t : k0 * t + eps * (1.0 - std::cos(om * t)) / om;
            break;
        }
        case ProfileKind::Tabulated:
            e = eval_spline(t);
            break;
    }
    return e;
}

bool CurvatureProfile::is_constant() const {
    switch (kind_) {
        case ProfileKind::Constant: return true;
        case ProfileKind::Linear: return params_[1] == 0.0;
        case ProfileKind::Exponential: return params_[1] == 0.0 || params_[0] == 0.0;
        case ProfileKind::Sinusoidal: return params_[1] == 0.0 || params_[2] == 0.0;
        case ProfileKind::Tabulated: {
            for (std::size_t i = 1; i < ta_.size(); ++i)
                if (ta_[i] != ta_[0]) return false;
            return true;
        }
    }
    return false;
}

ProfileValidation CurvatureProfile::validate(double t0, double t1) const {
    ProfileValidation r;
    if (!(t0 < t1)) {
        r.ok = false;
        r.t_violation = t0;
        r.message = "empty or inverted validation span";
        return r;
    }
    const double want = sign_value(sign_);
    // grid evaluation plus derivative-bound refinement of suspicious intervals
    const int grid = 10000;
    auto bad_at = [&](double t) {
        ProfileEval e = eval(t);
        return e.kappa == 0.0 || (e.kappa > 0.0 ? +1.0 : -1.0) != want;
    };
    std::function<bool(double, double, double&)> refine =
        [&](double a, double b, double& tbad) -> bool {
        ProfileEval ea = eval(a), eb = eval(b);
        if (bad_at(a)) { tbad = a; return false; }
        if (bad_at(b)) { tbad = b; return false; }
        double margin = std::min(std::fabs(ea.kappa), std::fabs(eb.kappa));
        double mid = 0.5 * (a + b);
        ProfileEval em = eval(mid);
        double deriv_bound = 1.5 * std::max({std::fabs(ea.kappa_dot), std::fabs(eb.kappa_dot),
                                             std::fabs(em.kappa_dot)});
        if (margin > deriv_bound * (b - a)) return true; // cannot reach zero inside
        if (b - a < 1e-9) {
            if (bad_at(mid)) { tbad = mid; return false; }
            return true;
        }
        return refine(a, mid, tbad) && refine(mid, b, tbad);
    };
    double h = (t1 - t0) / grid;
    for (int i = 0; i < grid; ++i) {
        double a = t0 + i * h, b = (i + 1 == grid) ? t1 : t0 + (i + 1) * h;
        double tbad = 0;
        if (!refine(a, b, tbad)) {
            r.ok = false;
            r.t_violation = tbad;
            r.message = "kappa vanishes or changes sign at t = " + std::to_string(tbad);
            return r;
        }
    }
    return r;
}

} // namespace cnb
