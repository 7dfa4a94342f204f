#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "fenergy/errors.hpp"
#include "fenergy/numeric.hpp"

namespace fenergy {

/// Growth degrees of a profile: d = sup t F'/F, l = inf t F'/F over t > 0.
/// `value` may be +infinity; `estimate` marks values read off a sample grid
/// rather than a closed form.
struct Degree {
    double value = 0.0;
    bool estimate = false;

    bool finite() const { return std::isfinite(value); }
};

/// A nonlinearity F: [0, cap) -> R with F(0) = 0, F' > 0 (strictly
/// increasing).  Carries F and F'; second derivatives are obtained downstream
/// by differencing F'.
struct FProfile {
    std::string name;
    std::function<double(double)> f;       // F(t)
    std::function<double(double)> fprime;  // F'(t)
    double cap = kInf;                     // domain is [0, cap)
    // (d_F, l_F) when known analytically; first may be +infinity.
    std::optional<std::pair<double, double>> closed_form_degrees;

    /// F(t).  Throws DomainExceeded for t < 0 or t within 1e-9*cap of a
    /// finite cap (this is how |d sigma|^2 >= 1 surfaces for BI-minus).
    double eval(double t) const;
    /// F'(t), same domain guard.
    double eval_prime(double t) const;
    /// F''(t) by central differencing of F' (one-sided near 0 and cap).
    /// Step max(1e-6, 1e-6*t); accurate to ~1e-12 absolute for smooth F'.
    double second_derivative(double t) const;

    void check_domain(double t) const;

    static FProfile identity();
    static FProfile p_power(double p);  // (2t)^{p/2} / p, p >= 1
    static FProfile bi_plus();          // sqrt(1+2t) - 1
    static FProfile bi_minus();         // 1 - sqrt(1-2t), cap 1/2
    static FProfile exp_minus_one();    // e^t - 1
    static FProfile custom(std::string name, std::function<double(double)> f,
                           std::function<double(double)> fprime, double cap = kInf);
};

/// Numeric sup/inf estimates of t F'/F over a log-spaced sample grid on
/// [1e-8, min(cap*(1-1e-6), 1e13)].  The upper extent is chosen so that the
/// BI tails (which decay like 1/(2 sqrt(2t))) settle within 1e-6 of their
/// limits; samples where F overflows are skipped.
struct DegreeBounds {
    double sup_est = 0.0;
    double inf_est = 0.0;
    double t_at_sup = 0.0;
    double t_at_inf = 0.0;
};
DegreeBounds numeric_degree_bounds(const FProfile& profile, int samples = 1024);

/// d_F: closed form when the profile carries one, else the numeric sup
/// estimate with the estimate flag set.
Degree f_degree(const FProfile& profile, int samples = 1024);
/// l_F, same convention.
Degree f_lower_degree(const FProfile& profile, int samples = 1024);

/// Construction-time sanity: F(0)=0 within 1e-12, F' > 0 on the sample grid,
/// and (when closed-form degrees are present) the numeric estimates bracket
/// inside [l_F, d_F] up to 1e-6.  Throws InvalidParameter.
void validate_profile(const FProfile& profile, int samples = 256);

}  // namespace fenergy
