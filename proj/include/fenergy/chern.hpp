#pragma once

#include <array>
#include <vector>

#include "fenergy/energy.hpp"
#include "fenergy/grid.hpp"

namespace fenergy {

/// Flux-quantization diagnostics: the normalized boundary integral
///   c_est(r) = (oint_{S(x0,r)} i* star(dw / sqrt(1+|dw|^2))) / (omega_d r^d),
/// d = m - p, over circles (d=2) or spheres (d=3) in a coordinate plane,
/// with the universal obstruction |c| <= d/r.
struct FluxReport {
    std::vector<double> radii;
    std::vector<double> c_est;
    std::vector<double> bound;
    std::vector<bool> satisfied;       // |c_est| <= bound * (1 + 1e-6)
    std::vector<double> sup_gamma;     // spacelike variant only
    double extrapolated_c = 0.0;       // least-squares fit c + a/r
    bool gamma_sublinear = true;       // spacelike o(r) diagnostic
};

/// Supported cases: (m=2,p=0) circles, (m=3,p=0) spheres, (m=3,p=1) circles
/// in the coordinate plane spanned by plane_dims.  The sphere/circle around
/// x0 (plus one interpolation cell) must stay inside the grid box
/// (GridTooSmall otherwise).
FluxReport cmc_flux(const GridField& w, const std::array<int, 2>& plane_dims,
                    const std::array<double, 3>& x0, const std::vector<double>& radii);

/// Punctured/annulus variant for solutions off a bounded set inside B(x0,r0):
///   c_est(r) = |oint_r - oint_{r0}| / (omega_d (r^d - r0^d)),
///   bound(r) = (C1 2^d r^{d-1} + d r0^{d-1}) / (r^d - r0^d),
/// with C1 a free cutoff constant (reported, not asserted).
FluxReport punctured_flux(const GridField& w, const std::array<int, 2>& plane_dims,
                          const std::array<double, 3>& x0, double r0,
                          const std::vector<double>& radii, double C1 = 1.0);

/// Spacelike variant: integrand star(ds / sqrt(1-|ds|^2)); the bound is
/// weighted by the sampled sup of 1/sqrt(1-|ds|^2) on each sphere, and the
/// report carries the o(r) trend of that factor.  NotSpacelike when
/// |ds|^2 >= 1 anywhere sampled.
FluxReport spacelike_flux(const GridField& sigma, const std::array<int, 2>& plane_dims,
                          const std::array<double, 3>& x0, const std::vector<double>& radii);

/// Volume doubling along radii: ratios Vol(B_2r)/Vol(B_r) for a model
/// manifold, with a plateau test over the last decade (within 5%).
struct DoublingReport {
    std::vector<double> radii;
    std::vector<double> ratio;
    double sup_ratio = 0.0;
    bool bounded = false;
};
DoublingReport doubling_diagnostic(const RadialManifold& man, const std::vector<double>& radii);

}  // namespace fenergy
