// Flux estimates against closed-form anchors, plus volume doubling.

#include <cmath>

#include "checks.hpp"
#include "fenergy/chern.hpp"

using namespace fenergy;

// spherical dome of radius R sampled as a graph; gamma grad(u) . nu = -r/R,
// so c_est is exactly -2/R (circles, m=2) or -3/R (spheres, m=3)
static GridField dome2(double R, int n) {
    GridSpec spec(2, {n, n, 1}, {-1.7, -1.7, 0.0}, {1.7, 1.7, 0.0});
    return GridField::sample_scalar(spec, [R](const std::array<double, 3>& x) {
        return std::sqrt(std::max(R * R - x[0] * x[0] - x[1] * x[1], 0.04));
    });
}

static void dome_circle_flux() {
    const GridField w = dome2(2.0, 257);
    const FluxReport rep = cmc_flux(w, {0, 1}, {0.0, 0.0, 0.0}, {0.5, 0.8, 1.1});
    for (size_t i = 0; i < rep.radii.size(); ++i) {
        CHECK_REL(rep.c_est[i], -1.0, 0.02);
        CHECK(rep.satisfied[i]);
        CHECK_NEAR(rep.bound[i], 2.0 / rep.radii[i], 1e-12);
    }
    CHECK_NEAR(rep.extrapolated_c, -1.0, 0.05);
}

static void dome_sphere_flux() {
    GridSpec spec(3, {65, 65, 65}, {-1.2, -1.2, -1.2}, {1.2, 1.2, 1.2});
    const GridField w = GridField::sample_scalar(spec, [](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return std::sqrt(std::max(4.0 - r2, 0.04));
    });
    const FluxReport rep = cmc_flux(w, {0, 1}, {0.0, 0.0, 0.0}, {0.6, 0.9});
    for (size_t i = 0; i < rep.radii.size(); ++i) {
        CHECK_REL(rep.c_est[i], -1.5, 0.02);
        CHECK(rep.satisfied[i]);
        CHECK_NEAR(rep.bound[i], 3.0 / rep.radii[i], 1e-12);
    }
}

static void winding_flux() {
    // catenoid graph away from the neck: flux around the origin is 2 pi, so
    // c_est = 2/r^2, right at the border of the obstruction 2/r for r >= 1
    GridSpec spec(2, {257, 257, 1}, {-4.0, -4.0, 0.0}, {4.0, 4.0, 0.0});
    const GridField w = GridField::sample_scalar(spec, [](const std::array<double, 3>& x) {
        return std::acosh(std::max(std::hypot(x[0], x[1]), 1.05));
    });
    const FluxReport rep = cmc_flux(w, {0, 1}, {0.0, 0.0, 0.0}, {2.5, 3.0});
    for (size_t i = 0; i < rep.radii.size(); ++i) {
        const double r = rep.radii[i];
        CHECK_REL(rep.c_est[i], 2.0 / (r * r), 0.02);
        CHECK(rep.satisfied[i]);
    }

    // two concentric loops carry the same flux, so the annulus estimate is
    // near zero
    const FluxReport pun = punctured_flux(w, {0, 1}, {0.0, 0.0, 0.0}, 2.0, {2.5, 3.0}, 1.0);
    for (size_t i = 0; i < pun.radii.size(); ++i) {
        CHECK(std::abs(pun.c_est[i]) <= 0.05);
        CHECK(pun.bound[i] > 0.0);
    }
    CHECK_THROWS(InvalidParameter,
                 punctured_flux(w, {0, 1}, {0.0, 0.0, 0.0}, 3.0, {2.5}, 1.0));
}

static void flat_and_spacelike() {
    GridSpec spec(2, {129, 129, 1}, {-2.0, -2.0, 0.0}, {2.0, 2.0, 0.0});
    const GridField zero(spec, 0, 1);
    const FluxReport rz = cmc_flux(zero, {0, 1}, {0.0, 0.0, 0.0}, {0.5, 1.0});
    CHECK(std::abs(rz.c_est[0]) <= 1e-12);
    CHECK(std::abs(rz.extrapolated_c) <= 1e-12);

    const GridField tilt = GridField::sample_scalar(
        spec, [](const std::array<double, 3>& x) { return 0.3 * x[0]; });
    const FluxReport rs = spacelike_flux(tilt, {0, 1}, {0.0, 0.0, 0.0}, {0.5, 1.0, 1.5});
    for (size_t i = 0; i < rs.radii.size(); ++i) {
        CHECK(std::abs(rs.c_est[i]) <= 1e-10);  // constant integrand closes up
        CHECK_REL(rs.sup_gamma[i], 1.0 / std::sqrt(1.0 - 0.09), 1e-9);
        CHECK(rs.satisfied[i]);
    }
    CHECK(rs.gamma_sublinear);

    const GridField steep = GridField::sample_scalar(
        spec, [](const std::array<double, 3>& x) { return 1.1 * x[0]; });
    CHECK_THROWS(NotSpacelike, spacelike_flux(steep, {0, 1}, {0.0, 0.0, 0.0}, {0.5}));
}

static void three_d_one_form() {
    GridSpec spec(3, {33, 33, 33}, {-1, -1, -1}, {1, 1, 1});
    // w = sin(z) dz has a constant-in-(x,y) differential: zero circulation
    const GridField w = GridField::sample(spec, 1, 1, [](const std::array<double, 3>& x) {
        PointForm f(3, 1, 1);
        f.at(2, 0) = std::sin(x[2]);
        return f;
    });
    const FluxReport rep = cmc_flux(w, {0, 1}, {0.0, 0.0, 0.2}, {0.4, 0.6});
    for (double c : rep.c_est) CHECK(std::abs(c) <= 1e-10);
}

static void guards() {
    GridSpec spec(2, {33, 33, 1}, {-1, -1, 0}, {1, 1, 0});
    const GridField u(spec, 0, 1);
    CHECK_THROWS(GridTooSmall, cmc_flux(u, {0, 1}, {0.0, 0.0, 0.0}, {0.999}));
    CHECK_THROWS(InvalidParameter, cmc_flux(u, {0, 0}, {0.0, 0.0, 0.0}, {0.5}));
    CHECK_THROWS(InvalidParameter, cmc_flux(u, {0, 1}, {0.0, 0.0, 0.0}, {}));
    CHECK_THROWS(InvalidParameter, cmc_flux(u, {0, 1}, {0.0, 0.0, 0.0}, {0.5, 0.4}));
    CHECK_THROWS(ShapeMismatch, cmc_flux(GridField(spec, 1, 1), {0, 1}, {0, 0, 0}, {0.5}));
}

static void doubling() {
    std::vector<double> radii;
    for (int i = 0; i < 12; ++i) radii.push_back(0.5 * std::pow(10.0, i / 11.0));
    const DoublingReport e3 = doubling_diagnostic(RadialManifold::euclidean(3), radii);
    for (double rr : e3.ratio) CHECK_REL(rr, 8.0, 1e-9);
    CHECK(e3.bounded);
    CHECK_REL(e3.sup_ratio, 8.0, 1e-9);

    const DoublingReport h2 = doubling_diagnostic(RadialManifold::hyperbolic(2, 1.0), radii);
    CHECK(!h2.bounded);
    CHECK(h2.ratio.back() > h2.ratio.front());

    CHECK_THROWS(OutOfRegimeRange,
                 doubling_diagnostic(RadialManifold::hyperbolic(2, 1.0), {100.0, 400.0}));
    CHECK_THROWS(InvalidParameter, doubling_diagnostic(RadialManifold::euclidean(3), {}));
}

int main() {
    dome_circle_flux();
    dome_sphere_flux();
    winding_flux();
    flat_and_spacelike();
    three_d_one_form();
    guards();
    return checks_summary("test_chern");
}
