#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "fenergy/forms.hpp"

namespace fenergy {

/// Uniform rectangular grid on a box in R^m, m in {2,3}.  Spacing per axis is
/// (max-min)/(n-1); nodes sit on the box boundary.
struct GridSpec {
    int m = 2;
    std::array<int, 3> n{8, 8, 1};
    std::array<double, 3> lo{0.0, 0.0, 0.0};
    std::array<double, 3> hi{1.0, 1.0, 0.0};

    GridSpec() = default;
    GridSpec(int m_, std::array<int, 3> n_, std::array<double, 3> lo_, std::array<double, 3> hi_);

    double h(int axis) const { return (hi[axis] - lo[axis]) / (n[axis] - 1); }
    std::ptrdiff_t nodes() const;
    std::ptrdiff_t flat(int i, int j, int kk = 0) const;
    std::array<int, 3> unflat(std::ptrdiff_t idx) const;
    double coord(int axis, int i) const { return lo[axis] + i * h(axis); }
    std::array<double, 3> point(std::ptrdiff_t idx) const;
    bool same_shape(const GridSpec& o) const;
};

/// Vector-bundle-valued p-form sampled at grid nodes (trivial R^k bundle,
/// flat connection).  Components stored node-major, then tuple rank, then
/// fiber: data[node*ncomp + rank*k + a].
struct GridField {
    GridSpec spec;
    int p = 0, k = 1;
    std::vector<double> data;

    GridField() = default;
    GridField(GridSpec spec_, int p_, int k_);

    int ncomp() const { return static_cast<int>(binomial(spec.m, p)) * k; }
    double& at(std::ptrdiff_t node, int comp) { return data[node * ncomp() + comp]; }
    double at(std::ptrdiff_t node, int comp) const { return data[node * ncomp() + comp]; }

    PointForm form_at(std::ptrdiff_t node) const;
    void set_form(std::ptrdiff_t node, const PointForm& w);

    /// Sample an analytic field.
    static GridField sample(const GridSpec& spec, int p, int k,
                            const std::function<PointForm(const std::array<double, 3>&)>& fn);
    /// Sample a scalar function as a 0-form (k=1).
    static GridField sample_scalar(const GridSpec& spec,
                                   const std::function<double(const std::array<double, 3>&)>& fn);
};

// -- discrete exterior calculus (central differences, one-sided
//    second-order stencils on the boundary faces) ---------------------------

/// d: p-forms -> (p+1)-forms.  Pre: p < m.
GridField exterior_d(const GridField& w);

/// delta: p-forms -> (p-1)-forms, the formal adjoint of d with the sign
/// convention delta(d u) = -Laplacian(u) on functions.  Pre: p >= 1.
GridField codifferential(const GridField& w);

/// Pointwise |w|^2/2 as a 0-form field.
GridField half_norm_sq_field(const GridField& w);

/// Divergence of the stress-energy tensor evaluated through the conservation
/// law formula, componentwise in the direction of each coordinate axis:
///   (div S)(e_j) = F' <delta w, i_{e_j} w> + F' <i_{e_j} d w, w>
///                  - <i_{grad F'} w, i_{e_j} w>,
/// with grad F' = F''(|w|^2/2) grad(|w|^2/2) by the chain rule (F'' from
/// differencing F').  Output is a 1-form, k=1.
GridField div_stress(const GridField& w, const FProfile& profile);

/// Max pointwise form-norm of div_stress over the interior (2-node margin).
double conservation_residual(const GridField& w, const FProfile& profile);

/// Euler-Lagrange tension tau_F(sigma) = -delta(F'(|d sigma|^2/2) d sigma);
/// same degree and fiber as sigma.
GridField el_tension(const GridField& sigma, const FProfile& profile);

/// Max pointwise form-norm of tau_F over the interior (2-node margin).
/// Doubles as the residual evaluator for the minimal/maximal graph and
/// Born-Infeld equations under the BI profiles.
double el_residual(const GridField& sigma, const FProfile& profile);

/// Direct stencil divergence of the sampled stress tensor field:
/// (div S)(e_j) = sum_i D_i S_{ij}.  Used as the independent check against
/// div_stress.
GridField div_stress_direct(const GridField& w, const FProfile& profile);

/// Max pointwise form-norm over the interior with the given margin.
double max_interior_norm(const GridField& w, int margin);

/// Plain h^m-weighted inner product sum_nodes <a,b> (pairwise-summed).
double grid_inner(const GridField& a, const GridField& b);

/// Multiply each node's components by a scalar 0-form field.
GridField scalar_multiply(const GridField& scalar, const GridField& w);

/// Multilinear interpolation of one component at a point inside the box.
double interpolate(const GridField& w, int comp, const std::array<double, 3>& x);

/// True if every component vanishes identically on the closed margin of the
/// given width along all axes.
bool supported_away_from_boundary(const GridField& w, int margin);

namespace ref {
/// Serial reference kernels: same stencils, straightforward loops, no
/// threading.  Kept for testing the parallel paths and for the kernel
/// benchmark.
GridField exterior_d(const GridField& w);
GridField codifferential(const GridField& w);
GridField div_stress(const GridField& w, const FProfile& profile);
}  // namespace ref

}  // namespace fenergy
