#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "vec4.hpp"

namespace cnb {

enum class ProfileKind { Constant, Linear, Exponential, Sinusoidal, Tabulated };

ProfileKind profile_kind_from_string(const std::string& s);
std::string to_string(ProfileKind k);

struct ProfileEval {
    double kappa = 0;
    double kappa_dot = 0;
    double kappa_ddot = 0;
    double K = 0; // primitive of kappa with K(0) = 0
};

struct ProfileValidation {
    bool ok = true;
    double t_violation = 0; // first t in the span where kappa vanishes or flips sign
    std::string message;
};

// Time-dependent curvature kappa(t), never zero and of fixed sign on its span.
//   constant     params: k0
//   linear       params: k0, k1              kappa = k0 + k1 t
//   exponential  params: k0, lambda          kappa = k0 exp(lambda t)
//   sinusoidal   params: k0, eps, omega      kappa = k0 + eps sin(omega t)
//   tabulated    params: t0,v0, t1,v1, ...   natural cubic spline through samples
// Derivatives and the primitive K are exact for every kind (the tabulated kind
// differentiates and integrates its spline in closed form per interval).
class CurvatureProfile {
public:
    CurvatureProfile(ProfileKind kind, std::vector<double> params, Sign sign,
                     double span_begin, double span_end);

    ProfileEval eval(double t) const; // throws if t outside the span
    ProfileValidation validate(double t0, double t1) const;

    ProfileKind kind() const { return kind_; }
    Sign sign() const { return sign_; }
    double span_begin() const { return t0_; }
    double span_end() const { return t1_; }
    const std::vector<double>& params() const { return params_; }

    // true when kappa_dot vanishes identically (constant profiles, or
    // degenerate parameter choices of the other kinds)
    bool is_constant() const;

private:
    ProfileKind kind_;
    std::vector<double> params_;
    Sign sign_;
    double t0_, t1_;

    // tabulated: natural cubic spline knots/coefficients and exact prefix integrals
    std::vector<double> tk_, ta_, tb_, tc_, td_, tI_;
    void build_spline();
    ProfileEval eval_spline(double t) const;
};

} // namespace cnb
