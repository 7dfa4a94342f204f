#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace fenergy {

/// Fixed-order pairwise summation.  Deterministic for a given input order and
/// accurate to ~1e-13 relative on desk-scale sums; every reduction in the
/// library funnels through this.
double pairwise_sum(std::span<const double> xs);

/// Adaptive composite Simpson on [a,b], relative tolerance via interval
/// halving.  Deterministic (no randomness, fixed recursion order).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-8, int max_depth = 30);

/// One Richardson step for central differences: D(t), D(t/2) with O(t^2)
/// leading error -> (4 D(t/2) - D(t)) / 3.
inline double richardson2(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

/// Least-squares slope/intercept of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// C-infinity bump on [-1,1]: exp(-1/(1-s^2)) scaled to bump(0)=1, exactly
/// zero for |s| >= 1.
inline double bump1(double s) {
    const double u = 1.0 - s * s;
    if (u <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / u);
}

inline double coth(double x) { return std::cosh(x) / std::sinh(x); }

/// Surface measure of the unit (m-1)-sphere in R^m: 2 pi^{m/2} / Gamma(m/2).
double unit_sphere_area(int m);

/// Volume of the unit ball in R^m: pi^{m/2} / Gamma(m/2 + 1).
double unit_ball_volume(int m);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace fenergy
