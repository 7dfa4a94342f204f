// Radial graph solves, duality, energies, the graph bound, pinching.

#include <cmath>

#include "checks.hpp"
#include "fenergy/born_infeld.hpp"

using namespace fenergy;

static const double kPi = 3.14159265358979323846;

static void radial_solutions() {
    // m=2 plus with C=1 is the catenoid profile u = arccosh(r)
    const RadialGraphSolution cat = solve_radial(2, BiSign::Plus, 1.0, 2.0, 4.0, 513);
    CHECK(first_integral_residual(cat) <= 1e-12);
    CHECK(pde_residual(cat) <= 1e-4);
    const double want = std::acosh(3.0) - std::acosh(2.0);
    CHECK_REL(cat.u_at(3.0), want, 1e-9);
    CHECK_REL(cat.slope_at(3.0), 1.0 / std::sqrt(8.0), 1e-13);

    // m=2 minus with C=1: u' = 1/sqrt(r^2+1), u = asinh(r) + const
    const RadialGraphSolution ms = solve_radial(2, BiSign::Minus, 1.0, 0.5, 2.0, 513);
    CHECK(first_integral_residual(ms) <= 1e-12);
    CHECK_REL(ms.u_at(1.5), std::asinh(1.5) - std::asinh(0.5), 1e-9);

    // m=3 solutions exist for both signs
    for (BiSign sign : {BiSign::Plus, BiSign::Minus}) {
        const RadialGraphSolution s3 = solve_radial(3, sign, 0.5, 2.0, 4.0, 257);
        CHECK(first_integral_residual(s3) <= 1e-12);
        CHECK(pde_residual(s3) <= 1e-4);
    }

    CHECK_THROWS(SingularRadius, solve_radial(2, BiSign::Plus, 1.0, 0.5, 2.0, 128));
    CHECK_THROWS(GridTooSmall, solve_radial(2, BiSign::Plus, 1.0, 2.0, 4.0, 32));
    CHECK_THROWS(InvalidParameter, solve_radial(2, BiSign::Plus, 1.0, 4.0, 2.0, 128));
    CHECK_THROWS(InvalidParameter, solve_radial(1, BiSign::Plus, 1.0, 2.0, 4.0, 128));
}

static void graph_sampling() {
    const RadialGraphSolution cat = solve_radial(2, BiSign::Plus, 1.0, 1.9, 7.0, 1025);
    GridSpec spec(2, {33, 33, 1}, {2.0, 2.0, 0.0}, {4.0, 4.0, 0.0});
    const GridField g = sample_graph(cat, spec);
    const auto x = spec.point(spec.flat(16, 16));
    const double r = std::hypot(x[0], x[1]);
    CHECK_REL(g.at(spec.flat(16, 16), 0),
              std::acosh(r) - std::acosh(1.9), 1e-7);
    GridSpec s3(3, {9, 9, 9}, {2, 2, 2}, {3, 3, 3});
    CHECK_THROWS(ShapeMismatch, sample_graph(cat, s3));
}

static GridField catenoid_field(int n) {
    GridSpec spec(2, {n, n, 1}, {1.4, -1.6, 0.0}, {4.6, 1.6, 0.0});
    return GridField::sample_scalar(spec, [](const std::array<double, 3>& x) {
        return std::acosh(std::hypot(x[0], x[1]));
    });
}

static void duality() {
    const GridField w = catenoid_field(129);
    const DualityPair pair = dualize(w);
    CHECK(pair.sign == 1);
    CHECK(pair.closedness_residual <= 2e-3);   // tau is closed for a solution
    CHECK(pair.relation_residual <= 0.02);
    CHECK(duality_roundtrip_residual(pair) <= 0.02);
    const DualityDensityReport dens = duality_density_check(pair);
    CHECK(dens.relation_residual <= 0.02);
    CHECK(dens.inequality_violation <= 1e-12);  // strict inequality analytically

    // the dual of the catenoid is the angular coordinate: a critical field of
    // the minus profile
    CHECK(el_residual(pair.sigma, FProfile::bi_minus()) <= 5e-3);

    // dualizing something that is not a solution leaves a visibly non-closed
    // tau, and the residuals say so
    GridSpec spec(2, {65, 65, 1}, {-1, -1, 0}, {1, 1, 0});
    const GridField junk = GridField::sample_scalar(spec, [](const std::array<double, 3>& x) {
        return 0.1 * std::sin(3.0 * x[0]) * x[1] * x[1];
    });
    const DualityPair jp = dualize(junk);
    CHECK(jp.closedness_residual > 0.1);

    // cranking the amplitude up drives the path-integrated primitive past the
    // light cone, and the dualizer refuses it
    const GridField steep = GridField::sample_scalar(spec, [](const std::array<double, 3>& x) {
        return std::sin(3.0 * x[0]) * x[1] * x[1];
    });
    CHECK_THROWS(NotSpacelike, dualize(steep));

    CHECK_THROWS(ShapeMismatch, dualize(GridField(spec, 1, 1)));
    CHECK_THROWS(InvalidParameter, dualize(junk, 2));
}

static void energies() {
    GridSpec spec(2, {33, 33, 1}, {-1, -1, 0}, {1, 1, 0});
    // trapezoid weighting, so a constant density integrates exactly over the box
    const GridField lin = GridField::sample_scalar(
        spec, [](const std::array<double, 3>& x) { return 3.0 * x[0]; });
    CHECK_REL(bi_energy(lin, BiSign::Plus), 4.0 * (std::sqrt(10.0) - 1.0), 1e-12);
    const GridField half = GridField::sample_scalar(
        spec, [](const std::array<double, 3>& x) { return 0.5 * x[0]; });
    CHECK_REL(bi_energy(half, BiSign::Minus), 4.0 * (1.0 - std::sqrt(0.75)), 1e-12);
    CHECK_THROWS(NotSpacelike, bi_energy(lin, BiSign::Minus));

    // catenoid ring energy against the closed form
    const RadialGraphSolution cat = solve_radial(2, BiSign::Plus, 1.0, 2.0, 4.0, 513);
    const double closed =
        2.0 * kPi *
        ((4.0 * std::sqrt(15.0) + std::acosh(4.0)) / 2.0 -
         (2.0 * std::sqrt(3.0) + std::acosh(2.0)) / 2.0 - 6.0);
    CHECK_REL(bi_energy_radial(cat, 2.0, 4.0), closed, 1e-8);
}

static void graph_bound() {
    RadialGraphSolution sol;
    sol.m = 2;
    sol.sign = BiSign::Plus;
    sol.C = 1.0;
    const GraphBoundReport r2 = graph_energy_bound_radial(sol, 2.0);
    CHECK_REL(r2.measured, 5.5953634787, 1e-6);
    CHECK_REL(r2.bound, 2.0 * kPi * 4.0, 1e-12);
    CHECK(r2.ok);
    const GraphBoundReport r4 = graph_energy_bound_radial(sol, 4.0);
    CHECK_REL(r4.measured, 8.0279330446, 1e-6);
    CHECK(r4.ok);
    const GraphBoundReport r8 = graph_energy_bound_radial(sol, 8.0);
    CHECK_REL(r8.measured, 10.2626119723, 1e-6);
    CHECK(r8.ok);

    sol.C = 0.0;  // flat solution through the whole ball
    const GraphBoundReport flat = graph_energy_bound_radial(sol, 3.0);
    CHECK(flat.measured == 0.0);
    CHECK(flat.ok);

    sol.sign = BiSign::Minus;
    CHECK_THROWS(InvalidParameter, graph_energy_bound_radial(sol, 2.0));

    // grid variant wants an actual solution
    GridSpec spec(2, {65, 65, 1}, {-1, -1, 0}, {1, 1, 0});
    const GridField junk = GridField::sample_scalar(spec, [](const std::array<double, 3>& x) {
        return x[0] * x[0] * x[1];
    });
    CHECK_THROWS(NotASolution, graph_energy_bound_check(junk, 0.5));
    const GridField flat_plane = GridField::sample_scalar(
        spec, [](const std::array<double, 3>& x) { return 0.2 * x[0] + 0.1 * x[1]; });
    const GraphBoundReport gp = graph_energy_bound_check(flat_plane, 0.5);
    CHECK(gp.ok);
    CHECK(gp.measured > 0.0);
    CHECK_THROWS(DegreeOutOfRange, graph_energy_bound_check(GridField(spec, 1, 1), 0.5));
}

static void pinching() {
    CHECK_NEAR(pinching_threshold(6, 1), 0.75, 1e-15);
    CHECK_NEAR(pinching_threshold(8, 1), 1.0 - 4.0 / 36.0, 1e-15);
    CHECK_THROWS(DegreeOutOfRange, pinching_threshold(4, 1));  // needs q < (m-2)/2
    CHECK_THROWS(DegreeOutOfRange, pinching_threshold(6, -1));

    const PinchingReport byval = pinching_check_value(0.5, 6, 1);
    CHECK(byval.holds);
    CHECK_NEAR(byval.margin, 0.25, 1e-15);
    CHECK(!pinching_check_value(0.76, 6, 1).holds);

    // grid scalar on flat 3-space: q = 0, threshold 1 - 1/(m-1)^2 = 0.75
    GridSpec s3(3, {12, 12, 12}, {-1, -1, -1}, {1, 1, 1});
    const GridField shallow = GridField::sample_scalar(
        s3, [](const std::array<double, 3>& x) { return 0.2 * x[0] + 0.1 * x[2]; });
    const PinchingReport pg = pinching_check(shallow);
    CHECK_NEAR(pg.threshold, 0.75, 1e-15);
    CHECK_NEAR(pg.sup_norm_sq, 0.05, 1e-12);
    CHECK(pg.holds);
    const GridField steep = GridField::sample_scalar(
        s3, [](const std::array<double, 3>& x) { return 2.0 * x[0]; });
    CHECK(!pinching_check(steep).holds);
}

int main() {
    radial_solutions();
    graph_sampling();
    duality();
    energies();
    graph_bound();
    pinching();
    return checks_summary("test_born_infeld");
}
