#pragma once

#include <functional>
#include <string>

#include "fenergy/errors.hpp"
#include "fenergy/numeric.hpp"

namespace fenergy {

/// Rotationally symmetric model manifold: metric dr^2 + f(r)^2 g_{S^{m-1}}
/// on (0, r_max) x S^{m-1}, with f(0)=0, f'(0)=1 for a smooth pole.
struct RadialManifold {
    std::string name;
    int m = 2;
    std::function<double(double)> warp;     // f
    std::function<double(double)> warp_d1;  // f'
    std::function<double(double)> warp_d2;  // f''
    double r_max = 1e6;
    bool pole_ok = false;  // pole conditions verified numerically

    static RadialManifold euclidean(int m);
    static RadialManifold hyperbolic(int m, double beta);
    static RadialManifold custom(std::string name, int m, std::function<double(double)> f,
                                 std::function<double(double)> f1,
                                 std::function<double(double)> f2, double r_max = 1e6);
};

/// Hess r principal factor f'(r)/f(r) (tangential directions).
/// Pre: 0 < r < r_max and pole conditions hold.
double hessian_factor(const RadialManifold& man, double r);

/// Radial sectional curvature K_r = -f''(r)/f(r).
double radial_curvature(const RadialManifold& man, double r);

enum class RegimeCase { PinchedNeg, Flat, EpsDecay, PolyNeg };

/// Curvature band hypotheses under which two-sided comparison bounds for
/// f'/f are available.
struct CurvatureRegime {
    RegimeCase tag = RegimeCase::Flat;
    // PinchedNeg: -alpha^2 <= K_r <= -beta^2 < 0
    double alpha = 0.0, beta = 0.0;
    // EpsDecay: -A/(1+r^2)^{1+eps} <= K_r <= B/(1+r^2)^{1+eps}
    double A = 0.0, B = 0.0, eps = 0.0;
    // PolyNeg: -A r^{2q} <= K_r <= -B r^{2q} for r >= 1
    double q = 0.0;
    double b0 = 0.0;  // PolyNeg: min{1, -(q+1)/2 + sqrt(B + ((q+1)/2)^2)}

    static CurvatureRegime pinched_neg(double alpha, double beta);
    static CurvatureRegime flat();
    static CurvatureRegime eps_decay(double A, double B, double eps);
    static CurvatureRegime poly_neg(double A, double B, double q);

    const char* case_name() const;
};

/// Two-sided comparison bounds (h1, h2) with h1 <= f'/f <= h2 for any warp
/// whose radial curvature sits in the regime band, and r h2(r) >= 1.
struct ComparisonBounds {
    double h1 = 0.0;
    double h2 = 0.0;
};
/// Pre: r > 0 (PolyNeg requires r >= 1, else OutOfRegimeRange).
ComparisonBounds comparison_bounds(const CurvatureRegime& regime, double r);

/// Vanishing/monotonicity exponent for a conservative p-form field with
/// profile degree d_F under the given regime.
///   PinchedNeg:  lambda = m - 2 p (alpha/beta) d_F,
///                admissible iff (m-1) beta - 2 p alpha d_F >= 0
///   Flat:        lambda = m - 2 p d_F, admissible iff > 0
///   EpsDecay:    lambda = m - (m-1)B/(2 eps) - 2 p e^{A/(2 eps)} d_F,
///                admissible iff > 0
///   PolyNeg:     delta  = (m-1) B0 - 2 p d_F sqrt(A) coth(sqrt(A)),
///                admissible iff >= 0; the ratio exponent is 1 + delta and
///                energies are taken over the annulus with base radius 1.
struct ExponentResult {
    RegimeCase tag = RegimeCase::Flat;
    double value = 0.0;           // lambda, or delta for PolyNeg
    double ratio_exponent = 0.0;  // lambda, or 1 + delta
    bool admissible = false;
    bool punctured = false;  // PolyNeg annulus variant
};
/// Throws InadmissibleExponent when d_F is not finite (profiles with
/// unbounded degree carry no polynomial exponent).
ExponentResult vanishing_exponent(const CurvatureRegime& regime, int m, int p, double d_f);

}  // namespace fenergy
