#include "fenergy/variation.hpp"

#include <cmath>

#include "fenergy/numeric.hpp"
#include "fenergy/parallel.hpp"

namespace fenergy {

double field_energy(const GridField& sigma, const FProfile& profile) {
    const GridField ds = exterior_d(sigma);
    const std::ptrdiff_t nn = sigma.spec.nodes();
    std::vector<double> vals(static_cast<size_t>(nn));
    for (std::ptrdiff_t idx = 0; idx < nn; ++idx) {
        double s = 0.0;
        for (int c = 0; c < ds.ncomp(); ++c) s += ds.at(idx, c) * ds.at(idx, c);
        vals[static_cast<size_t>(idx)] = profile.eval(0.5 * s);
    }
    double cell = 1.0;
    for (int a = 0; a < sigma.spec.m; ++a) cell *= sigma.spec.h(a);
    return cell * pairwise_sum(vals);
}

namespace {

GridField axpy(const GridField& x, double t, const GridField& y) {
    GridField out = x;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += t * y.data[i];
    return out;
}

VariationReport variation_check_impl(const GridField& sigma, const GridField& eta,
                                     const FProfile& profile) {
    if (!sigma.spec.same_shape(eta.spec) || sigma.p != eta.p || sigma.k != eta.k)
        throw ShapeMismatch("variation operands");
    if (!supported_away_from_boundary(eta, 3))
        throw SupportViolation("variation direction must vanish on a 3-node margin");

    // central differences of the energy at three halved steps, then a
    // two-level Richardson table (t^2 then t^4 error cancellation)
    const double steps[3] = {1e-3, 5e-4, 2.5e-4};
    double d[3];
    for (int i = 0; i < 3; ++i) {
        const double t = steps[i];
        d[i] = (field_energy(axpy(sigma, t, eta), profile) -
                field_energy(axpy(sigma, -t, eta), profile)) /
               (2.0 * t);
    }
    const double r1 = richardson2(d[0], d[1]);
    const double r2 = richardson2(d[1], d[2]);
    VariationReport rep;
    rep.lhs = (16.0 * r2 - r1) / 15.0;
    rep.extrapolation_err = std::abs(rep.lhs - r2) + 1e-16 * std::abs(rep.lhs);

    // analytic side: -<tau_F(sigma), eta> integrated
    const GridField tau = el_tension(sigma, profile);
    rep.rhs = -grid_inner(tau, eta);
    rep.abs_err = std::abs(rep.lhs - rep.rhs);
    rep.rel_err = rep.abs_err / std::max(1.0, std::abs(rep.rhs));
    return rep;
}

}  // namespace

VariationReport first_variation_check(const GridField& sigma, const GridField& eta,
                                      const FProfile& profile) {
    return variation_check_impl(sigma, eta, profile);
}

VariationReport ym_first_variation_check(const GridField& A, const GridField& B,
                                         const FProfile& profile) {
    if (A.p != 1) throw DegreeOutOfRange("connection potential must be a 1-form");
    // d/dt YM_F(A + tB) = integral <delta(F' dA), B> = -integral <tau_F(A), B>;
    // the abelian curvature variation is d/dt d(A+tB) = dB, no bracket term
    return variation_check_impl(A, B, profile);
}

double bianchi_residual(const GridField& A) {
    if (A.p + 2 > A.spec.m) return 0.0;  // target degree exceeds m
    return max_interior_norm(exterior_d(exterior_d(A)), 2);
}

}  // namespace fenergy
