#include "fenergy/profile.hpp"

#include <cmath>
#include <vector>

namespace fenergy {

void FProfile::check_domain(double t) const {
    if (t < 0.0) throw DomainExceeded(name + ": t = " + std::to_string(t) + " < 0");
    if (std::isfinite(cap) && t >= cap * (1.0 - 1e-9))
        throw DomainExceeded(name + ": t = " + std::to_string(t) + " at cap " + std::to_string(cap));
}

double FProfile::eval(double t) const {
    check_domain(t);
    return f(t);
}

double FProfile::eval_prime(double t) const {
    check_domain(t);
    return fprime(t);
}

double FProfile::second_derivative(double t) const {
    check_domain(t);
    double dt = std::max(1e-6, 1e-6 * t);
    if (std::isfinite(cap)) dt = std::min(dt, 0.25 * (cap * (1.0 - 1e-9) - t));
    if (dt <= 0.0) throw DomainExceeded(name + ": no room to difference F' near cap");
    if (t >= dt) return (fprime(t + dt) - fprime(t - dt)) / (2.0 * dt);
    return (fprime(t + dt) - fprime(t)) / dt;  // one-sided at the left end
}

FProfile FProfile::identity() {
    FProfile pr;
    pr.name = "identity";
    pr.f = [](double t) { return t; };
    pr.fprime = [](double) { return 1.0; };
    pr.closed_form_degrees = {1.0, 1.0};
    return pr;
}

FProfile FProfile::p_power(double p) {
    if (!(p >= 1.0)) throw InvalidParameter("p-power requires p >= 1");
    FProfile pr;
    pr.name = "p-power(" + std::to_string(p) + ")";
    pr.f = [p](double t) { return std::pow(2.0 * t, 0.5 * p) / p; };
    pr.fprime = [p](double t) { return std::pow(2.0 * t, 0.5 * p - 1.0); };
    pr.closed_form_degrees = {0.5 * p, 0.5 * p};
    return pr;
}

FProfile FProfile::bi_plus() {
    FProfile pr;
    pr.name = "bi-plus";
    // sqrt(1+2t)-1 written as 2t/(sqrt(1+2t)+1): no cancellation at small t,
    // which the ratio identity tests need at the 1e-12 level.
    pr.f = [](double t) { return 2.0 * t / (std::sqrt(1.0 + 2.0 * t) + 1.0); };
    pr.fprime = [](double t) { return 1.0 / std::sqrt(1.0 + 2.0 * t); };
    pr.closed_form_degrees = {1.0, 0.5};
    return pr;
}

FProfile FProfile::bi_minus() {
    FProfile pr;
    pr.name = "bi-minus";
    pr.f = [](double t) { return 2.0 * t / (1.0 + std::sqrt(1.0 - 2.0 * t)); };
    pr.fprime = [](double t) { return 1.0 / std::sqrt(1.0 - 2.0 * t); };
    pr.cap = 0.5;
    pr.closed_form_degrees = {kInf, 1.0};
    return pr;
}

FProfile FProfile::exp_minus_one() {
    FProfile pr;
    pr.name = "exp-minus-one";
    pr.f = [](double t) { return std::expm1(t); };
    pr.fprime = [](double t) { return std::exp(t); };
    pr.closed_form_degrees = {kInf, 1.0};
    return pr;
}

FProfile FProfile::custom(std::string name, std::function<double(double)> f,
                          std::function<double(double)> fprime, double cap) {
    FProfile pr;
    pr.name = std::move(name);
    pr.f = std::move(f);
    pr.fprime = std::move(fprime);
    pr.cap = cap;
    return pr;
}

namespace {

std::vector<double> sample_grid(const FProfile& profile, int samples) {
    // Log-spaced over [1e-8, min(cap*(1-1e-6), 1e13)]; the upper extent is
    // wide enough for the BI ratio tails to settle within 1e-6.
    const double t_lo = 1e-8;
    double t_hi = 1e13;
    if (std::isfinite(profile.cap)) t_hi = std::min(t_hi, profile.cap * (1.0 - 1e-6));
    std::vector<double> ts(samples);
    const double la = std::log(t_lo), lb = std::log(t_hi);
    for (int i = 0; i < samples; ++i)
        ts[i] = std::exp(la + (lb - la) * i / double(samples - 1));
    return ts;
}

}  // namespace

DegreeBounds numeric_degree_bounds(const FProfile& profile, int samples) {
    if (samples < 16) throw InvalidParameter("numeric_degree_bounds needs >= 16 samples");
    DegreeBounds out;
    out.sup_est = -kInf;
    out.inf_est = kInf;
    for (double t : sample_grid(profile, samples)) {
        const double ft = profile.f(t);
        const double fpt = profile.fprime(t);
        const double ratio = t * fpt / ft;
        if (!std::isfinite(ratio) || ft <= 0.0) continue;  // overflow tail of exp-like F
        if (ratio > out.sup_est) {
            out.sup_est = ratio;
            out.t_at_sup = t;
        }
        if (ratio < out.inf_est) {
            out.inf_est = ratio;
            out.t_at_inf = t;
        }
    }
    if (!std::isfinite(out.sup_est) || !std::isfinite(out.inf_est))
        throw InvalidParameter(profile.name + ": degree ratio not finite anywhere on the grid");
    return out;
}

Degree f_degree(const FProfile& profile, int samples) {
    if (profile.closed_form_degrees) return {profile.closed_form_degrees->first, false};
    return {numeric_degree_bounds(profile, samples).sup_est, true};
}

Degree f_lower_degree(const FProfile& profile, int samples) {
    if (profile.closed_form_degrees) return {profile.closed_form_degrees->second, false};
    return {numeric_degree_bounds(profile, samples).inf_est, true};
}

void validate_profile(const FProfile& profile, int samples) {
    const double f0 = profile.f(0.0);
    if (!(std::abs(f0) <= 1e-12))
        throw InvalidParameter(profile.name + ": F(0) = " + std::to_string(f0));
    for (double t : sample_grid(profile, samples)) {
        const double fp = profile.fprime(t);
        if (std::isnan(fp) || fp <= 0.0)
            throw InvalidParameter(profile.name + ": F' not positive at t = " + std::to_string(t));
    }
    if (profile.closed_form_degrees) {
        const auto [d, l] = *profile.closed_form_degrees;
        const auto nb = numeric_degree_bounds(profile, std::max(samples, 256));
        const double slack = 1e-6;
        if (nb.sup_est > d + slack || nb.inf_est < l - slack)
            throw InvalidParameter(profile.name + ": numeric degree estimates escape [l_F, d_F]");
    }
}

}  // namespace fenergy
