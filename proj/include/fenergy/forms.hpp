#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fenergy/errors.hpp"
#include "fenergy/profile.hpp"

namespace fenergy {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxDeg = 4;

long binomial(int n, int k);

/// Increasing index tuples of size p drawn from {0..m-1}, in lexicographic
/// order, plus rank lookup by bitmask.  Cached per (m,p).
struct TupleTable {
    int m = 0, p = 0;
    std::vector<std::array<int, kMaxDeg>> tuples;  // only first p entries used
    std::vector<std::uint16_t> masks;              // bitmask per tuple
    std::vector<int> rank_by_mask;                 // 1<<m entries, -1 if not a p-tuple

    int count() const { return static_cast<int>(tuples.size()); }
    int rank(std::uint16_t mask) const { return rank_by_mask[mask]; }

    static const TupleTable& get(int m, int p);
};

/// Alternating p-form at a point with values in a trivial R^k fiber.
/// Coefficients are stored densely over increasing tuples (lexicographic),
/// fiber-minor: coeffs[rank*k + a].
struct PointForm {
    int m = 0, p = 0, k = 1;
    std::vector<double> coeffs;

    PointForm() = default;
    PointForm(int m_, int p_, int k_);

    int ncomp() const { return static_cast<int>(coeffs.size()); }
    double& at(int rank, int a) { return coeffs[static_cast<size_t>(rank) * k + a]; }
    double at(int rank, int a) const { return coeffs[static_cast<size_t>(rank) * k + a]; }

    /// Coefficient for an arbitrary index sequence (not necessarily sorted);
    /// antisymmetrizes, zero on repeated indices.  For tests and small-scale
    /// use.
    double eval(const std::vector<int>& idx, int a) const;
};

/// Symmetric 2-tensor at a point (dense m x m storage).
struct SymTensor2 {
    int m = 0;
    std::vector<double> a;  // row-major m*m

    SymTensor2() = default;
    explicit SymTensor2(int m_) : m(m_), a(static_cast<size_t>(m_) * m_, 0.0) {}
    double& at(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }
    void set_sym(int i, int j, double v) { at(i, j) = v; at(j, i) = v; }
    double trace() const;
};

/// <a, b>: sum over increasing tuples of the fiber inner product.
double form_inner(const PointForm& a, const PointForm& b);

/// i_X w for a vector X (length m).  Degree drops by one; p = 1 contracts to
/// a 0-form (the fiber vector).  Throws DegreeZero for p = 0.
PointForm interior_mult(const std::vector<double>& X, const PointForm& w);

/// (w (.) w)(X,Y) = <i_X w, i_Y w> over the coordinate frame.
SymTensor2 double_contract(const PointForm& w);

/// Stress-energy tensor S = F(|w|^2/2) g - F'(|w|^2/2) (w (.) w).
SymTensor2 stress_energy(const FProfile& profile, const PointForm& w);

double tensor_inner(const SymTensor2& s, const SymTensor2& t);

/// Radial pairing <S_{F,w}, Hess(r^2/2)-type deformation> for a rotationally
/// symmetric comparison factor h at radius r, with the last coordinate axis
/// playing the radial direction:
///   F * (1 + (m-1) r h) - F' * r h * sum_{i<m} (w(.)w)(e_i,e_i)
///                       - F' * (w(.)w)(e_r,e_r).
double radial_pairing(const FProfile& profile, const PointForm& w, double h, double r);

}  // namespace fenergy
