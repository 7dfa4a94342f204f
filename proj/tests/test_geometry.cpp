// Model manifolds, comparison bounds, vanishing exponents.

#include <cmath>

#include "checks.hpp"
#include "fenergy/geometry.hpp"

using namespace fenergy;

static void manifolds() {
    const RadialManifold e3 = RadialManifold::euclidean(3);
    CHECK(e3.pole_ok);
    CHECK_NEAR(hessian_factor(e3, 2.0), 0.5, 1e-15);
    CHECK_NEAR(radial_curvature(e3, 2.0), 0.0, 1e-15);

    const RadialManifold h4 = RadialManifold::hyperbolic(4, 2.0);
    CHECK(h4.pole_ok);
    CHECK_REL(h4.warp(1.0), std::sinh(2.0) / 2.0, 1e-14);
    CHECK_REL(hessian_factor(h4, 1.0), 2.0 * std::cosh(2.0) / std::sinh(2.0), 1e-14);
    CHECK_REL(radial_curvature(h4, 0.7), -4.0, 1e-12);
    CHECK_THROWS(InvalidParameter, RadialManifold::hyperbolic(3, 0.0));
    CHECK_THROWS(OutOfRegimeRange, hessian_factor(h4, 400.0));  // beyond r_max

    // cone warp r^2 violates the pole normalization
    const RadialManifold bad = RadialManifold::custom(
        "cone", 3, [](double r) { return r * r; }, [](double r) { return 2.0 * r; },
        [](double) { return 2.0; }, kInf);
    CHECK(!bad.pole_ok);
    CHECK_THROWS(PoleViolation, hessian_factor(bad, 1.0));
}

static void regimes() {
    CHECK_THROWS(InvalidParameter, CurvatureRegime::pinched_neg(1.0, 2.0));  // alpha < beta
    CHECK_THROWS(InvalidParameter, CurvatureRegime::pinched_neg(1.0, 0.0));
    CHECK_THROWS(InvalidParameter, CurvatureRegime::eps_decay(1.0, 3.0, 1.0));  // B >= 2 eps
    CHECK_THROWS(InvalidParameter, CurvatureRegime::poly_neg(1.0, 2.0, 1.0));   // A < B
    CHECK_THROWS(InvalidParameter, CurvatureRegime::poly_neg(1.0, 1.0, 0.0));

    const CurvatureRegime pn = CurvatureRegime::poly_neg(1.0, 1.0, 1.0);
    CHECK_REL(pn.b0, std::sqrt(2.0) - 1.0, 1e-14);
    const CurvatureRegime pn2 = CurvatureRegime::poly_neg(9.0, 9.0, 1.0);  // sqrt(9+1)-1 > 1
    CHECK(pn2.b0 == 1.0);
}

static void bounds() {
    const ComparisonBounds fl = comparison_bounds(CurvatureRegime::flat(), 4.0);
    CHECK_NEAR(fl.h1, 0.25, 1e-15);
    CHECK_NEAR(fl.h2, 0.25, 1e-15);

    // alpha = beta = 1 pinches to the hyperbolic value coth(r)
    const CurvatureRegime pinch = CurvatureRegime::pinched_neg(1.0, 1.0);
    CHECK_REL(comparison_bounds(pinch, 1.0).h1, 1.3130352854993313, 1e-14);
    CHECK_REL(comparison_bounds(pinch, 0.5).h2, 2.1639534137386528, 1e-14);

    const CurvatureRegime pinch2 = CurvatureRegime::pinched_neg(2.0, 1.0);
    const ComparisonBounds b2 = comparison_bounds(pinch2, 0.8);
    CHECK(b2.h1 <= b2.h2);
    CHECK_REL(b2.h1, coth(0.8), 1e-14);
    CHECK_REL(b2.h2, 2.0 * coth(1.6), 1e-14);

    const CurvatureRegime dec = CurvatureRegime::eps_decay(1.0, 1.0, 2.0);
    const ComparisonBounds bd = comparison_bounds(dec, 2.0);
    CHECK_REL(bd.h1, 0.75 / 2.0, 1e-14);
    CHECK_REL(bd.h2, std::exp(0.25) / 2.0, 1e-14);

    const CurvatureRegime pol = CurvatureRegime::poly_neg(1.0, 1.0, 1.0);
    CHECK_THROWS(OutOfRegimeRange, comparison_bounds(pol, 0.5));
    const ComparisonBounds bp = comparison_bounds(pol, 2.0);
    CHECK_REL(bp.h1, (std::sqrt(2.0) - 1.0) * 2.0, 1e-14);
    CHECK_REL(bp.h2, coth(1.0) * 2.0, 1e-14);

    // r h2(r) >= 1 across regimes and radii
    for (double r : {0.3, 1.0, 2.5, 7.0}) {
        CHECK(r * comparison_bounds(CurvatureRegime::flat(), r).h2 >= 1.0 - 1e-12);
        CHECK(r * comparison_bounds(pinch2, r).h2 >= 1.0 - 1e-12);
        CHECK(r * comparison_bounds(dec, r).h2 >= 1.0 - 1e-12);
        if (r >= 1.0) CHECK(r * comparison_bounds(pol, r).h2 >= 1.0 - 1e-12);
    }
}

static void exponents() {
    const ExponentResult fl = vanishing_exponent(CurvatureRegime::flat(), 4, 1, 1.0);
    CHECK(fl.value == 2.0);
    CHECK(fl.ratio_exponent == 2.0);
    CHECK(fl.admissible);
    CHECK(!fl.punctured);
    CHECK(!vanishing_exponent(CurvatureRegime::flat(), 2, 1, 1.0).admissible);

    const ExponentResult pi =
        vanishing_exponent(CurvatureRegime::pinched_neg(1.0, 1.0), 5, 1, 1.0);
    CHECK(pi.value == 3.0);
    CHECK(pi.admissible);  // (m-1) beta - 2 p alpha d_F = 2 >= 0
    const ExponentResult pi2 =
        vanishing_exponent(CurvatureRegime::pinched_neg(3.0, 1.0), 8, 1, 1.0);
    CHECK(pi2.value == 2.0);
    CHECK(pi2.admissible);  // 7 - 6 >= 0
    CHECK(!vanishing_exponent(CurvatureRegime::pinched_neg(3.0, 1.0), 6, 1, 1.0).admissible);

    const ExponentResult de =
        vanishing_exponent(CurvatureRegime::eps_decay(1.0, 1.0, 2.0), 4, 1, 1.0);
    CHECK_REL(de.value, 0.6819491666245170, 1e-14);
    CHECK(de.admissible);

    const ExponentResult po =
        vanishing_exponent(CurvatureRegime::poly_neg(1.0, 1.0, 1.0), 20, 1, 1.0);
    CHECK_REL(po.value, 5.2439871140901433, 1e-14);
    CHECK_REL(po.ratio_exponent, 6.2439871140901433, 1e-14);
    CHECK(po.admissible);
    CHECK(po.punctured);

    CHECK_THROWS(InvalidParameter, vanishing_exponent(CurvatureRegime::flat(), 1, 1, 1.0));
    CHECK_THROWS(DegreeZero, vanishing_exponent(CurvatureRegime::flat(), 4, 0, 1.0));
    CHECK_THROWS(InadmissibleExponent, vanishing_exponent(CurvatureRegime::flat(), 4, 1, kInf));
}

int main() {
    manifolds();
    regimes();
    bounds();
    exponents();
    return checks_summary("test_geometry");
}
