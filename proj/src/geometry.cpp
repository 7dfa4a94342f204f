#include "fenergy/geometry.hpp"

#include <cmath>

namespace fenergy {

namespace {

bool pole_conditions_hold(const RadialManifold& man) {
    const double r = 1e-6, tol = 1e-4;
    const double f = man.warp(r), f1 = man.warp_d1(r);
    return std::isfinite(f) && std::isfinite(f1) && std::abs(f / r - 1.0) <= tol &&
           std::abs(f1 - 1.0) <= tol;
}

}  // namespace

RadialManifold RadialManifold::euclidean(int m) {
    RadialManifold man;
    man.name = "euclidean";
    man.m = m;
    man.warp = [](double r) { return r; };
    man.warp_d1 = [](double) { return 1.0; };
    man.warp_d2 = [](double) { return 0.0; };
    man.pole_ok = true;
    return man;
}

RadialManifold RadialManifold::hyperbolic(int m, double beta) {
    if (!(beta > 0.0)) throw InvalidParameter("hyperbolic warp needs beta > 0");
    RadialManifold man;
    man.name = "hyperbolic(" + std::to_string(beta) + ")";
    man.m = m;
    man.warp = [beta](double r) { return std::sinh(beta * r) / beta; };
    man.warp_d1 = [beta](double r) { return std::cosh(beta * r); };
    man.warp_d2 = [beta](double r) { return beta * std::sinh(beta * r); };
    man.r_max = 700.0 / beta;  // sinh overflow guard
    man.pole_ok = true;
    return man;
}

RadialManifold RadialManifold::custom(std::string name, int m, std::function<double(double)> f,
                                      std::function<double(double)> f1,
                                      std::function<double(double)> f2, double r_max) {
    RadialManifold man;
    man.name = std::move(name);
    man.m = m;
    man.warp = std::move(f);
    man.warp_d1 = std::move(f1);
    man.warp_d2 = std::move(f2);
    man.r_max = r_max;
    man.pole_ok = pole_conditions_hold(man);
    return man;
}

double hessian_factor(const RadialManifold& man, double r) {
    if (!man.pole_ok) throw PoleViolation(man.name);
    if (!(r > 0.0) || r >= man.r_max)
        throw OutOfRegimeRange("hessian_factor at r = " + std::to_string(r));
    return man.warp_d1(r) / man.warp(r);
}

double radial_curvature(const RadialManifold& man, double r) {
    if (!man.pole_ok) throw PoleViolation(man.name);
    if (!(r > 0.0) || r >= man.r_max)
        throw OutOfRegimeRange("radial_curvature at r = " + std::to_string(r));
    return -man.warp_d2(r) / man.warp(r);
}

CurvatureRegime CurvatureRegime::pinched_neg(double alpha, double beta) {
    if (!(alpha >= beta && beta > 0.0))
        throw InvalidParameter("pinched regime needs alpha >= beta > 0");
    CurvatureRegime rg;
    rg.tag = RegimeCase::PinchedNeg;
    rg.alpha = alpha;
    rg.beta = beta;
    return rg;
}

CurvatureRegime CurvatureRegime::flat() {
    CurvatureRegime rg;
    rg.tag = RegimeCase::Flat;
    return rg;
}

CurvatureRegime CurvatureRegime::eps_decay(double A, double B, double eps) {
    if (!(eps > 0.0) || !(A >= 0.0) || !(B >= 0.0 && B < 2.0 * eps))
        throw InvalidParameter("eps-decay regime needs eps > 0, A >= 0, 0 <= B < 2 eps");
    CurvatureRegime rg;
    rg.tag = RegimeCase::EpsDecay;
    rg.A = A;
    rg.B = B;
    rg.eps = eps;
    return rg;
}

CurvatureRegime CurvatureRegime::poly_neg(double A, double B, double q) {
    if (!(A >= B && B > 0.0) || !(q > 0.0))
        throw InvalidParameter("poly regime needs A >= B > 0, q > 0");
    CurvatureRegime rg;
    rg.tag = RegimeCase::PolyNeg;
    rg.A = A;
    rg.B = B;
    rg.q = q;
    rg.b0 = std::min(1.0, -(q + 1.0) / 2.0 + std::sqrt(B + (q + 1.0) * (q + 1.0) / 4.0));
    return rg;
}

const char* CurvatureRegime::case_name() const {
    switch (tag) {
        case RegimeCase::PinchedNeg: return "pinched-neg";
        case RegimeCase::Flat: return "flat";
        case RegimeCase::EpsDecay: return "eps-decay";
        case RegimeCase::PolyNeg: return "poly-neg";
    }
    return "?";
}

ComparisonBounds comparison_bounds(const CurvatureRegime& regime, double r) {
    if (!(r > 0.0)) throw OutOfRegimeRange("comparison bounds need r > 0");
    ComparisonBounds cb;
    switch (regime.tag) {
        case RegimeCase::PinchedNeg:
            cb.h1 = regime.beta * coth(regime.beta * r);
            cb.h2 = regime.alpha * coth(regime.alpha * r);
            break;
        case RegimeCase::Flat:
            cb.h1 = 1.0 / r;
            cb.h2 = 1.0 / r;
            break;
        case RegimeCase::EpsDecay:
            cb.h1 = (1.0 - regime.B / (2.0 * regime.eps)) / r;
            cb.h2 = std::exp(regime.A / (2.0 * regime.eps)) / r;
            break;
        case RegimeCase::PolyNeg: {
            if (r < 1.0)
                throw OutOfRegimeRange("poly regime bounds hold for r >= 1, got r = " +
                                       std::to_string(r));
            const double rq = std::pow(r, regime.q);
            const double sa = std::sqrt(regime.A);
            cb.h1 = regime.b0 * rq;
            cb.h2 = sa * coth(sa) * rq;
            break;
        }
    }
    return cb;
}

ExponentResult vanishing_exponent(const CurvatureRegime& regime, int m, int p, double d_f) {
    if (m < 2) throw InvalidParameter("vanishing exponent needs m >= 2");
    if (p < 1) throw DegreeZero("vanishing exponent needs p >= 1");
    if (!std::isfinite(d_f) || d_f <= 0.0)
        throw InadmissibleExponent("d_F must be finite and positive, got " + std::to_string(d_f));
    ExponentResult res;
    res.tag = regime.tag;
    switch (regime.tag) {
        case RegimeCase::PinchedNeg:
            res.value = m - 2.0 * p * (regime.alpha / regime.beta) * d_f;
            res.ratio_exponent = res.value;
            res.admissible = (m - 1) * regime.beta - 2.0 * p * regime.alpha * d_f >= 0.0;
            break;
        case RegimeCase::Flat:
            res.value = m - 2.0 * p * d_f;
            res.ratio_exponent = res.value;
            res.admissible = res.value > 0.0;
            break;
        case RegimeCase::EpsDecay:
            res.value = m - (m - 1) * regime.B / (2.0 * regime.eps) -
                        2.0 * p * std::exp(regime.A / (2.0 * regime.eps)) * d_f;
            res.ratio_exponent = res.value;
            res.admissible = res.value > 0.0;
            break;
        case RegimeCase::PolyNeg: {
            const double sa = std::sqrt(regime.A);
            res.value = (m - 1) * regime.b0 - 2.0 * p * d_f * sa * coth(sa);
            res.ratio_exponent = 1.0 + res.value;
            res.admissible = res.value >= 0.0;
            res.punctured = true;
            break;
        }
    }
    return res;
}

}  // namespace fenergy
