// Discrete exterior calculus: stencil exactness on polynomials, convergence
// orders, adjointness, nilpotency, the two divergence evaluations, and the
// serial reference kernels.

#include <cmath>
#include <random>

#include "checks.hpp"
#include "fenergy/grid.hpp"
#include "fenergy/numeric.hpp"

using namespace fenergy;

static void spec_basics() {
    GridSpec s(2, {9, 17, 1}, {-1.0, 0.0, 0.0}, {1.0, 2.0, 0.0});
    CHECK(s.nodes() == 9 * 17);
    CHECK_NEAR(s.h(0), 0.25, 1e-15);
    CHECK_NEAR(s.h(1), 0.125, 1e-15);
    const auto ijk = s.unflat(s.flat(3, 11));
    CHECK(ijk[0] == 3 && ijk[1] == 11 && ijk[2] == 0);
    CHECK_NEAR(s.coord(0, 4), 0.0, 1e-15);
    CHECK_THROWS(GridTooSmall, GridSpec(2, {4, 9, 1}, {0, 0, 0}, {1, 1, 0}));
    CHECK_THROWS(ShapeMismatch, GridSpec(4, {9, 9, 9}, {0, 0, 0}, {1, 1, 1}));
    CHECK_THROWS(ShapeMismatch, GridSpec(2, {9, 9, 1}, {0, 0, 0}, {-1, 1, 0}));
}

// All stencils are exact on quadratics, so d of a polynomial 1-form of
// degree <= 2 must come out exact at every node, boundary included.
static void d_exact_on_quadratics() {
    GridSpec s(3, {9, 10, 11}, {-1, -1, -1}, {1, 1.5, 1});
    const GridField w = GridField::sample(s, 1, 1, [](const std::array<double, 3>& x) {
        PointForm f(3, 1, 1);
        f.at(0, 0) = x[1] * x[2];       // y z dx
        f.at(2, 0) = x[0] * x[0];       // x^2 dz
        return f;
    });
    const GridField dw = exterior_d(w);
    CHECK(dw.p == 2);
    double worst = 0.0;
    for (std::ptrdiff_t nd = 0; nd < s.nodes(); ++nd) {
        const auto x = s.point(nd);
        worst = std::max(worst, std::abs(dw.at(nd, 0) - (-x[2])));        // dx^dy
        worst = std::max(worst, std::abs(dw.at(nd, 1) - (2 * x[0] - x[1])));  // dx^dz
        worst = std::max(worst, std::abs(dw.at(nd, 2) - 0.0));            // dy^dz
    }
    CHECK(worst <= 1e-12);
}

static double d_error(int n) {
    GridSpec s(2, {n, n, 1}, {-1, -1, 0}, {1, 1, 0});
    const GridField u = GridField::sample_scalar(
        s, [](const std::array<double, 3>& x) { return std::sin(x[0]) * std::cos(x[1]); });
    const GridField du = exterior_d(u);
    double worst = 0.0;
    for (std::ptrdiff_t nd = 0; nd < s.nodes(); ++nd) {
        const auto x = s.point(nd);
        worst = std::max(worst, std::abs(du.at(nd, 0) - std::cos(x[0]) * std::cos(x[1])));
        worst = std::max(worst, std::abs(du.at(nd, 1) + std::sin(x[0]) * std::sin(x[1])));
    }
    return worst;
}

static void d_second_order() {
    const double e1 = d_error(17), e2 = d_error(33);
    CHECK(e2 < e1);
    CHECK(e1 / e2 > 3.2);  // h^2 would give 4
}

static GridField random_smooth(const GridSpec& s, int p, int k, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(16), b(16), c(16);
    for (auto* v : {&a, &b, &c})
        for (double& x : *v) x = u(rng);
    int ncomp = static_cast<int>(binomial(s.m, p)) * k;
    return GridField::sample(s, p, k, [&](const std::array<double, 3>& x) {
        PointForm f(s.m, p, k);
        for (int cix = 0; cix < ncomp; ++cix)
            f.coeffs[cix] = std::sin(a[cix] + 2 * b[cix] * x[0] + c[cix] * x[1]) *
                            std::cos(b[cix] * x[2] - a[cix] * x[0] * 0.5);
        return f;
    });
}

static void nilpotency() {
    GridSpec s(3, {12, 12, 12}, {-1, -1, -1}, {1, 1, 1});
    const GridField w = random_smooth(s, 0, 2, 11);
    const GridField ddw = exterior_d(exterior_d(w));
    double worst = 0.0;
    for (double v : ddw.data) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-12);

    const GridField v1 = random_smooth(s, 1, 1, 12);
    const GridField ddv = exterior_d(exterior_d(v1));
    worst = 0.0;
    for (double x : ddv.data) worst = std::max(worst, std::abs(x));
    CHECK(worst <= 1e-12);

    const GridField w2 = random_smooth(s, 2, 1, 13);
    const GridField ddel = codifferential(codifferential(w2));
    worst = 0.0;
    for (double x : ddel.data) worst = std::max(worst, std::abs(x));
    CHECK(worst <= 1e-12);

    CHECK_THROWS(DegreeOutOfRange, exterior_d(random_smooth(s, 3, 1, 14)));
    CHECK_THROWS(DegreeZero, codifferential(random_smooth(s, 0, 1, 15)));
}

// With both fields supported two nodes off the boundary, summation by parts
// is exact for the central stencils: <dw, v> = <w, delta v> to rounding.
static void adjointness() {
    GridSpec s(2, {33, 33, 1}, {-1, -1, 0}, {1, 1, 0});
    const double s0 = 1.0 - 2.5 * s.h(0);
    const GridField w = GridField::sample_scalar(s, [&](const std::array<double, 3>& x) {
        return bump1(x[0] / s0) * bump1(x[1] / s0) * std::sin(3 * x[0] + x[1]);
    });
    const GridField v = GridField::sample(s, 1, 1, [&](const std::array<double, 3>& x) {
        PointForm f(2, 1, 1);
        const double b = bump1(x[0] / s0) * bump1(x[1] / s0);
        f.at(0, 0) = b * std::cos(x[0] - 2 * x[1]);
        f.at(1, 0) = b * std::sin(x[0] * x[1]);
        return f;
    });
    const double lhs = grid_inner(exterior_d(w), v);
    const double rhs = grid_inner(w, codifferential(v));
    CHECK_NEAR(lhs, rhs, 1e-13 * std::max(1.0, std::abs(lhs)));

    // and delta(du) = -Laplacian(u): exact for a quadratic
    const GridField q = GridField::sample_scalar(s, [](const std::array<double, 3>& x) {
        return x[0] * x[0] + 3.0 * x[1] * x[1] - 2.0 * x[0] * x[1];
    });
    const GridField lap = codifferential(exterior_d(q));
    for (std::ptrdiff_t nd = 0; nd < s.nodes(); ++nd) CHECK_NEAR(lap.at(nd, 0), -8.0, 1e-11);
}

// Conservation-law formula against the direct stencil divergence of the
// sampled stress tensor, on a generic smooth field.
static void divergence_formulas() {
    for (int n : {33, 65}) {
        GridSpec s(2, {n, n, 1}, {-1, -1, 0}, {1, 1, 0});
        const GridField w = GridField::sample(s, 1, 1, [](const std::array<double, 3>& x) {
            PointForm f(2, 1, 1);
            f.at(0, 0) = std::sin(x[0] + 2 * x[1]);
            f.at(1, 0) = std::cos(2 * x[0] - x[1]) + 0.3 * x[0];
            return f;
        });
        const FProfile prof = FProfile::bi_plus();
        const GridField a = div_stress(w, prof);
        const GridField b = div_stress_direct(w, prof);
        double scale = max_interior_norm(b, 2);
        GridField diff = a;
        for (size_t i = 0; i < diff.data.size(); ++i) diff.data[i] -= b.data[i];
        const double rel = max_interior_norm(diff, 2) / scale;
        CHECK(rel < (n == 33 ? 0.05 : 0.02));
    }
}

// Gradient of a harmonic quadratic is exactly conservative for the identity
// profile, and x^3 is visibly not.
static void conservation() {
    GridSpec s(2, {65, 65, 1}, {-1, -1, 0}, {1, 1, 0});
    const GridField harm = GridField::sample(s, 1, 1, [](const std::array<double, 3>& x) {
        PointForm f(2, 1, 1);
        f.at(0, 0) = 2.0 * x[0];
        f.at(1, 0) = -2.0 * x[1];
        return f;
    });
    CHECK(conservation_residual(harm, FProfile::identity()) <= 1e-12);

    const GridField cubic = GridField::sample(s, 1, 1, [](const std::array<double, 3>& x) {
        PointForm f(2, 1, 1);
        f.at(0, 0) = 3.0 * x[0] * x[0];
        return f;
    });
    CHECK(conservation_residual(cubic, FProfile::identity()) > 1.0);
}

static void el_operators() {
    // el_tension of a scalar with identity profile is -delta d = Laplacian-like
    GridSpec s(2, {33, 33, 1}, {-1, -1, 0}, {1, 1, 0});
    const GridField q = GridField::sample_scalar(s, [](const std::array<double, 3>& x) {
        return x[0] * x[0] - x[1] * x[1];
    });
    CHECK(el_residual(q, FProfile::identity()) <= 1e-11);  // harmonic
    const GridField g = GridField::sample_scalar(s, [](const std::array<double, 3>& x) {
        return x[0] * x[0] + x[1] * x[1];
    });
    const GridField tau = el_tension(g, FProfile::identity());
    for (std::ptrdiff_t nd = 0; nd < s.nodes(); ++nd) CHECK_NEAR(tau.at(nd, 0), 4.0, 1e-11);
    CHECK_REL(el_residual(g, FProfile::identity()), 4.0, 1e-11);
}

static void interpolation() {
    GridSpec s(2, {17, 17, 1}, {0, 0, 0}, {1, 1, 0});
    const GridField u = GridField::sample_scalar(s, [](const std::array<double, 3>& x) {
        return 2.0 + 3.0 * x[0] - x[1] + 5.0 * x[0] * x[1];  // multilinear: exact
    });
    CHECK_REL(interpolate(u, 0, {0.3713, 0.642, 0.0}),
              2.0 + 3.0 * 0.3713 - 0.642 + 5.0 * 0.3713 * 0.642, 1e-13);
    CHECK_THROWS(GridTooSmall, interpolate(u, 0, {1.2, 0.5, 0.0}));
}

static void support_and_norms() {
    GridSpec s(2, {17, 17, 1}, {-1, -1, 0}, {1, 1, 0});
    GridField w(s, 0, 1);
    w.at(s.flat(8, 8), 0) = 3.0;
    CHECK(supported_away_from_boundary(w, 3));
    CHECK(max_interior_norm(w, 2) == 3.0);
    w.at(s.flat(2, 8), 0) = 1.0;
    CHECK(!supported_away_from_boundary(w, 3));
    CHECK(supported_away_from_boundary(w, 2));
}

static void reference_kernels_agree() {
    GridSpec s(3, {14, 13, 12}, {-1, -1, -1}, {1, 1, 1});
    const GridField w = random_smooth(s, 1, 2, 77);
    const GridField d1 = exterior_d(w), d2 = ref::exterior_d(w);
    CHECK(d1.data == d2.data);  // bit-identical
    const GridField c1 = codifferential(w), c2 = ref::codifferential(w);
    CHECK(c1.data == c2.data);
    const GridField w1 = random_smooth(s, 1, 1, 78);
    const GridField v1 = div_stress(w1, FProfile::bi_plus());
    const GridField v2 = ref::div_stress(w1, FProfile::bi_plus());
    CHECK(v1.data == v2.data);
}

static void inner_and_sum() {
    GridSpec s(2, {65, 65, 1}, {0, 0, 0}, {1, 1, 0});
    const GridField one = GridField::sample_scalar(s, [](const std::array<double, 3>&) {
        return 1.0;
    });
    // h^2 per node, 65^2 nodes
    CHECK_REL(grid_inner(one, one), 65.0 * 65.0 / (64.0 * 64.0), 1e-13);
    CHECK_THROWS(ShapeMismatch,
                 grid_inner(one, GridField(GridSpec(2, {9, 9, 1}, {0, 0, 0}, {1, 1, 0}), 0, 1)));
}

int main() {
    spec_basics();
    d_exact_on_quadratics();
    d_second_order();
    nilpotency();
    adjointness();
    divergence_formulas();
    conservation();
    el_operators();
    interpolation();
    support_and_norms();
    reference_kernels_agree();
    inner_and_sum();
    return checks_summary("test_grid");
}
