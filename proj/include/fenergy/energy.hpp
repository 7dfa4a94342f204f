#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fenergy/geometry.hpp"
#include "fenergy/grid.hpp"

namespace fenergy {

/// Rotationally symmetric p-form field on a model manifold, given by a
/// representative amplitude in the adapted orthonormal frame (the last axis
/// is the radial direction).  Only the frame coefficients as functions of r
/// enter the ball energies (coarea reduction).
struct RadialField {
    std::string name;
    RadialManifold man;
    int p = 1, k = 1;
    std::function<PointForm(double)> amplitude;
    /// Conservation certified analytically by the preset's construction.
    bool conservation_exact = false;
    /// Otherwise, a cartesian grid sampling used for the numeric pre-check.
    std::optional<GridField> conservation_sample;

    double norm_sq(double r) const;

    /// Zero field (trivially conservative).
    static RadialField zero(RadialManifold man, int p, int k);
    /// Constant-coefficient tangential 1-form of the given norm; exactly
    /// conservative on flat space (all derivatives vanish).
    static RadialField constant_norm(RadialManifold man, double norm);
    /// Tangential round field a(r) = c/f(r) spread over the m-1 sphere
    /// directions (k = m-1).  Exactly conservative on any model manifold and
    /// for any profile: the radial divergence component is
    /// F' (m-1) a (a' + (f'/f) a), which vanishes identically for a = c/f.
    static RadialField tangential_round(RadialManifold man, double c);
    /// Radial 1-form 3 r^2 dr (the gradient of r^3): deliberately
    /// non-conservative; carries a grid sampling for the pre-check.
    static RadialField radial_cubic(RadialManifold man, int sample_n = 65);
    /// Tabulated |w|^2(r): tangential representative by linear interpolation.
    /// Not certified; callers must either attach a sample or assert exactness.
    static RadialField from_norm_table(RadialManifold man, int p, int k,
                                       std::vector<std::pair<double, double>> table,
                                       bool assert_conservative);
};

/// E(rho) = vol(S^{m-1}) int_0^rho F(|w|^2(r)/2) f(r)^{m-1} dr by adaptive
/// Simpson (rel tol 1e-8); integration starts at r = 1e-8 to dodge the pole.
double ball_energy(const RadialField& fld, const FProfile& profile, double rho,
                   double base = 0.0);

struct MonotonicityReport {
    std::vector<double> radii;
    std::vector<double> energies;
    std::vector<double> ratios;        // E(rho)/rho^exponent (annulus-based for punctured)
    std::vector<double> dE_drho;       // analytic coarea integrand at rho
    std::vector<bool> zero_energy;     // flagged instead of dividing by zero
    ExponentResult exponent;
    bool monotone = false;             // ratios nondecreasing within slack 1e-8
    double worst_violation = 0.0;      // max relative drop between consecutive ratios
    bool differential_ok = false;      // rho E'(rho) >= lambda E(rho) at all radii
    double worst_differential = 0.0;   // min of rho E' - lambda E
    bool base_condition_ok = true;     // punctured variant: boundary term sign at r=1
};

/// Runs the ratio monotonicity experiment.  Throws InadmissibleExponent when
/// the regime's side condition fails (or d_F is not finite), and
/// ConservationPrecheckFailed when the field is neither certified exact nor
/// passes the sampled conservation residual test
/// (pre_tol = 10 h^2 max(1, |w|_inf)^2).
MonotonicityReport monotonicity_experiment(const RadialField& fld, const FProfile& profile,
                                           const CurvatureRegime& regime,
                                           const std::vector<double>& radii);

/// Integral identity check on a box: boundary integral of S(X, nu) versus
/// volume integral of <S, g> + (div S)(X) for the position field X = x
/// (flat space; the deformation of X is the metric).  Box faces must lie on
/// grid nodes.
struct StokesReport {
    double lhs = 0.0;  // boundary
    double rhs = 0.0;  // volume
    double rel_err = 0.0;
};
StokesReport stokes_identity_check(const GridField& w, const FProfile& profile,
                                   const std::array<double, 3>& box_lo,
                                   const std::array<double, 3>& box_hi);

/// Base-sphere boundary condition for the annulus monotonicity: at r = 1 the
/// integrand F - F' |i_r w|^2 of the base boundary term must be >= -1e-12.
bool boundary_condition_check(const RadialField& fld, const FProfile& profile);

/// Growth classification against a gauge psi and an exponent lambda.
enum class PsiVerdict { Diverging, Converging };
struct GrowthVerdict {
    PsiVerdict psi_divergence = PsiVerdict::Converging;
    double divergence_slope = 0.0;  // decade-increment log-log slope (heuristic)
    bool energy_over_psi_bounded = false;
    bool little_o_lambda = false;
};
/// E_samples: increasing (rho, E) pairs spanning >= 3 decades
/// (SpanTooShort otherwise).
///
/// The divergence test for int dr/(r psi) is a documented heuristic: the
/// integral is split into decades, and the least-squares slope of
/// ln(increment) against ln(ln r_mid) is compared to -1.5.  For
/// psi = (ln r)^q the slope is -q, so q = 1 classifies DIVERGING and q = 2
/// CONVERGING for any span, matching the analytic anchors.
GrowthVerdict growth_classify(const std::vector<std::pair<double, double>>& E_samples,
                              const std::function<double(double)>& psi, double lambda);

/// Volume of the geodesic ball of radius r (coarea quadrature).
double ball_volume(const RadialManifold& man, double r);

}  // namespace fenergy
