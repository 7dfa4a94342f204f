#pragma once

#include <vector>

#include "fenergy/energy.hpp"
#include "fenergy/grid.hpp"

namespace fenergy {

enum class BiSign { Plus, Minus };

/// Rotationally symmetric solution of the Born-Infeld graph equations,
/// reduced by the first integral r^{m-1} u' / sqrt(1 +/- u'^2) = C:
///   Plus  (minimal graph):  u' = c_r / sqrt(1 - c_r^2),  c_r = C/r^{m-1},
///                           defined for r > |C|^{1/(m-1)}
///   Minus (maximal graph):  u' = c_r / sqrt(1 + c_r^2),  entire in r
struct RadialGraphSolution {
    int m = 2;
    BiSign sign = BiSign::Plus;
    double C = 0.0;
    std::vector<double> r;      // uniform nodes on [a,b]
    std::vector<double> u;      // u(a) = 0
    std::vector<double> slope;  // u'(r), closed form

    double slope_at(double rr) const;  // closed form at arbitrary radius
    double u_at(double rr) const;      // cumulative quadrature + local correction
};

/// Integrates the first-integral slope on [a,b] with n nodes (n >= 64).
/// Throws SingularRadius when a Plus solve touches r <= |C|^{1/(m-1)}.
RadialGraphSolution solve_radial(int m, BiSign sign, double C, double a, double b, int n);

/// Max |r^{m-1} u'/sqrt(1 +/- u'^2) - C| over the solution nodes.
double first_integral_residual(const RadialGraphSolution& sol);

/// Finite-difference residual of the full PDE in its exact radial reduction:
/// max over interior nodes of |(1/r^{m-1}) D_central[r^{m-1} u'/sqrt(1+/-u'^2)]|.
double pde_residual(const RadialGraphSolution& sol);

/// Sample u(|x|) as a 0-form on a grid (the grid box must avoid the
/// singular radius for Plus solutions).
GridField sample_graph(const RadialGraphSolution& sol, const GridSpec& spec);

/// Calabi-type duality for m=2, p=0: tau = sign * star(d w / sqrt(1+|dw|^2)),
/// sigma a primitive of tau by path integration from the grid corner
/// (rectangular grids are simply connected, so the primitive exists whenever
/// tau is closed).
struct DualityPair {
    GridField omega;  // 0-form, timelike side
    GridField sigma;  // 0-form, spacelike side
    int sign = +1;
    double closedness_residual = 0.0;  // max |d tau| over interior
    double relation_residual = 0.0;    // max ||dw|^2 - |ds|^2/(1-|ds|^2)| over nodes
};
DualityPair dualize(const GridField& omega, int sign = +1);

/// Pointwise energy-density identities on a duality pair:
///   max |(sqrt(1+|dw|^2)-1) - (1-sqrt(1-|ds|^2))/sqrt(1-|ds|^2)|   (relation)
///   max over nodes of the gap violation of
///   (1-sqrt(1-|ds|^2)) <= (sqrt(1+|dw|^2)-1)                        (inequality)
struct DualityDensityReport {
    double relation_residual = 0.0;
    double inequality_violation = 0.0;  // positive part; ~0 expected
};
DualityDensityReport duality_density_check(const DualityPair& pair);

/// Reconstruct dw from sigma through the inverse duality relation and
/// compare: max |dw_rec - dw| over nodes.
double duality_roundtrip_residual(const DualityPair& pair);

/// BI energy of a grid field's differential over the whole grid box:
/// integral of sqrt(1+|dw|^2)-1 (Plus) or 1-sqrt(1-|ds|^2) (Minus),
/// trapezoid weights.
double bi_energy(const GridField& w, BiSign sign);

/// Same energy for a radial solution over [a,b] by coarea quadrature.
double bi_energy_radial(const RadialGraphSolution& sol, double a, double b);

/// Graph energy bound: E_BI^+ of w over B^m(rho) intersect {|f^alpha| <= rho}
/// against m sqrt(k) omega_m rho^m.  Pre: w solves the Plus equation on its
/// grid (el_residual <= el_tol, NotASolution otherwise).
struct GraphBoundReport {
    double measured = 0.0;
    double bound = 0.0;
    bool ok = false;
};
GraphBoundReport graph_energy_bound_check(const GridField& w, double rho,
                                          double el_tol = 1e-3);
/// Radial specialization (handles the integrable slope singularity at the
/// inner rim by substitution).
GraphBoundReport graph_energy_bound_radial(const RadialGraphSolution& sol, double rho);

/// Spacelike pinching margin: sup |d sigma|^2 against the threshold
/// 1 - (q+1)^2/(m-q-1)^2 under which the m/(q+1)-exponent monotonicity
/// applies.  Pre: q < (m-2)/2 (DegreeOutOfRange otherwise).
struct PinchingReport {
    double threshold = 0.0;
    double sup_norm_sq = 0.0;
    double margin = 0.0;
    bool holds = false;
};
double pinching_threshold(int m, int q);
PinchingReport pinching_check(const GridField& sigma);
PinchingReport pinching_check_value(double sup_norm_sq, int m, int q);

}  // namespace fenergy
