#include "fenergy/numeric.hpp"

#include <cmath>

namespace fenergy {

namespace {

double pairwise_sum_rec(const double* xs, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xs[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_rec(xs, half) + pairwise_sum_rec(xs + half, n - half);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double rel_tol, double scale,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * rel_tol * (std::abs(scale) + 1e-300))
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, rel_tol, scale, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, rel_tol, scale, depth - 1);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
    return pairwise_sum_rec(xs.data(), xs.size());
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, rel_tol, whole, max_depth);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    const double det = n * sxx - sx * sx;
    if (det != 0.0) {
        fit.slope = (n * sxy - sx * sy) / det;
        fit.intercept = (sy - fit.slope * sx) / n;
    }
    return fit;
}

double unit_sphere_area(int m) {
    return 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
}

double unit_ball_volume(int m) {
    return std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

}  // namespace fenergy
