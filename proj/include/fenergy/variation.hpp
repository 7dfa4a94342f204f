#pragma once

#include "fenergy/grid.hpp"

namespace fenergy {

/// Numeric-vs-analytic agreement for a first variation.
struct VariationReport {
    double lhs = 0.0;      // Richardson-extrapolated central difference of the energy
    double rhs = 0.0;      // quadrature of the analytic variation density
    double abs_err = 0.0;  // |lhs - rhs|
    double rel_err = 0.0;  // abs_err / max(1, |rhs|)
    double extrapolation_err = 0.0;  // Richardson tail estimate for lhs
};

/// Total F-energy of the discrete field: h^m sum_nodes F(|d sigma|^2/2).
double field_energy(const GridField& sigma, const FProfile& profile);

/// d/dt E(sigma + t eta) at t=0 versus -integral <tau_F(sigma), eta>.
/// The derivative is computed by central differences at steps
/// {1e-3, 5e-4, 2.5e-4} with Richardson extrapolation.  eta must vanish
/// identically on a 3-node margin (SupportViolation otherwise).
VariationReport first_variation_check(const GridField& sigma, const GridField& eta,
                                      const FProfile& profile);

/// Abelian Yang-Mills-type variation: d/dt YM_F(A + t B) at t=0 versus
/// +integral <delta(F'(|dA|^2/2) dA), B> for degree-1 potentials A, B
/// (curvature d(A+tB) = dA + t dB; the bracket term vanishes for an abelian
/// structure group).  Same stepping and support rule as above.
VariationReport ym_first_variation_check(const GridField& A, const GridField& B,
                                         const FProfile& profile);

/// Max interior form-norm of d(dA): the discrete Bianchi identity residual.
/// Exactly zero by construction when the target degree exceeds m.
double bianchi_residual(const GridField& A);

}  // namespace fenergy
