#include "fenergy/energy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fenergy/errors.hpp"
#include "fenergy/numeric.hpp"

namespace fenergy {

double RadialField::norm_sq(double r) const {
    const PointForm w = amplitude(r);
    return form_inner(w, w);
}

RadialField RadialField::zero(RadialManifold man, int p, int k) {
    RadialField fld;
    fld.name = "zero";
    fld.man = std::move(man);
    fld.p = p;
    fld.k = k;
    const int m = fld.man.m;
    fld.amplitude = [m, p, k](double) { return PointForm(m, p, k); };
    fld.conservation_exact = true;
    return fld;
}

RadialField RadialField::constant_norm(RadialManifold man, double norm) {
    RadialField fld;
    fld.name = "constant_norm";
    fld.man = std::move(man);
    fld.p = 1;
    fld.k = 1;
    const int m = fld.man.m;
    fld.amplitude = [m, norm](double) {
        PointForm w(m, 1, 1);
        w.at(0, 0) = norm;  // first tangential axis
        return w;
    };
    // constant-coefficient 1-form: parallel, d w = 0, delta w = 0, F' constant
    fld.conservation_exact = true;
    return fld;
}

RadialField RadialField::tangential_round(RadialManifold man, double c) {
    RadialField fld;
    fld.name = "tangential_round";
    fld.man = std::move(man);
    const int m = fld.man.m;
    fld.p = 1;
    fld.k = m - 1;
    const auto f = fld.man.warp;
    fld.amplitude = [m, c, f](double r) {
        PointForm w(m, 1, m - 1);
        const double a = c / f(r);
        for (int i = 0; i + 1 < m; ++i) w.at(i, i) = a;  // theta^i tensor eps_i
        return w;
    };
    // s_r = F, s_t = F - F' a^2 in the adapted frame; the radial divergence
    // component is F'(m-1) a (a' + (f'/f) a), identically zero for a = c/f
    fld.conservation_exact = true;
    return fld;
}

RadialField RadialField::radial_cubic(RadialManifold man, int sample_n) {
    RadialField fld;
    fld.name = "radial_cubic";
    fld.man = std::move(man);
    const int m = fld.man.m;
    fld.p = 1;
    fld.k = 1;
    fld.amplitude = [m](double r) {
        PointForm w(m, 1, 1);
        w.at(m - 1, 0) = 3.0 * r * r;  // last axis is radial
        return w;
    };
    fld.conservation_exact = false;
    // plane slice of grad |x|^3 for the numeric pre-check; its stress
    // divergence is O(r) and does not pass any refinement-scaled gate
    GridSpec spec(2, {sample_n, sample_n, 1}, {-1.0, -1.0, 0.0}, {1.0, 1.0, 0.0});
    fld.conservation_sample = GridField::sample(
        spec, 1, 1, [](const std::array<double, 3>& x) {
            PointForm w(2, 1, 1);
            const double r = std::hypot(x[0], x[1]);
            w.at(0, 0) = 3.0 * r * x[0];
            w.at(1, 0) = 3.0 * r * x[1];
            return w;
        });
    return fld;
}

RadialField RadialField::from_norm_table(RadialManifold man, int p, int k,
                                         std::vector<std::pair<double, double>> table,
                                         bool assert_conservative) {
    if (table.size() < 2) throw InvalidParameter("norm table needs at least two rows");
    for (size_t i = 0; i + 1 < table.size(); ++i)
        if (!(table[i].first < table[i + 1].first))
            throw InvalidParameter("norm table radii must increase");
    for (const auto& row : table)
        if (row.second < 0.0) throw InvalidParameter("norm table values must be >= 0");
    RadialField fld;
    fld.name = "table";
    fld.man = std::move(man);
    fld.p = p;
    fld.k = k;
    const int m = fld.man.m;
    auto tab = std::move(table);
    fld.amplitude = [m, p, k, tab](double r) {
        double v;
        if (r <= tab.front().first) {
            v = tab.front().second;
        } else if (r >= tab.back().first) {
            v = tab.back().second;
        } else {
            auto it = std::upper_bound(tab.begin(), tab.end(), r,
                                       [](double a, const std::pair<double, double>& b) {
                                           return a < b.first;
                                       });
            const auto hi = *it;
            const auto lo = *(it - 1);
            const double t = (r - lo.first) / (hi.first - lo.first);
            v = (1.0 - t) * lo.second + t * hi.second;
        }
        PointForm w(m, p, k);
        w.at(0, 0) = std::sqrt(std::max(v, 0.0));
        return w;
    };
    fld.conservation_exact = assert_conservative;
    return fld;
}

double ball_energy(const RadialField& fld, const FProfile& profile, double rho,
                   double base) {
    const int m = fld.man.m;
    const double area = unit_sphere_area(m);
    const double start = std::max(base, 1e-8);
    if (!(rho > start)) return 0.0;
    auto integrand = [&](double r) {
        return profile.eval(fld.norm_sq(r) / 2.0) * std::pow(fld.man.warp(r), m - 1);
    };
    return area * adaptive_simpson(integrand, start, rho, 1e-8);
}

MonotonicityReport monotonicity_experiment(const RadialField& fld, const FProfile& profile,
                                           const CurvatureRegime& regime,
                                           const std::vector<double>& radii) {
    if (radii.size() < 2) throw InvalidParameter("need at least two radii");
    for (size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1])) throw InvalidParameter("radii must increase");
    if (!(radii.front() > 0.0)) throw InvalidParameter("radii must be positive");

    MonotonicityReport rep;
    rep.exponent = vanishing_exponent(regime, fld.man.m, fld.p, f_degree(profile).value);
    if (!rep.exponent.admissible)
        throw InadmissibleExponent(std::string(regime.case_name()) +
                                   ": exponent side condition fails");

    // conservation gate: an analytic certificate from the preset, or the
    // sampled residual under a refinement-scaled tolerance
    if (!fld.conservation_exact) {
        if (!fld.conservation_sample)
            throw ConservationPrecheckFailed(fld.name + ": no conservation certificate");
        const GridField& s = *fld.conservation_sample;
        double hmax = 0.0;
        for (int a = 0; a < s.spec.m; ++a) hmax = std::max(hmax, s.spec.h(a));
        const double wmax = max_interior_norm(s, 2);
        const double pre_tol = 10.0 * hmax * hmax * std::max(1.0, wmax) * std::max(1.0, wmax);
        const double res = conservation_residual(s, profile);
        if (res > pre_tol)
            throw ConservationPrecheckFailed(fld.name + ": sampled residual " +
                                             std::to_string(res) + " exceeds gate " +
                                             std::to_string(pre_tol));
    }

    const double base = rep.exponent.punctured ? 1.0 : 0.0;
    if (rep.exponent.punctured && !(radii.front() > 1.0))
        throw OutOfRegimeRange("annulus radii must exceed the base radius 1");
    if (rep.exponent.punctured)
        rep.base_condition_ok = boundary_condition_check(fld, profile);

    const int m = fld.man.m;
    const double area = unit_sphere_area(m);
    const double lam = rep.exponent.ratio_exponent;

    rep.radii = radii;
    double acc = ball_energy(fld, profile, radii.front(), base);
    double prev_r = radii.front();
    for (size_t i = 0; i < radii.size(); ++i) {
        const double rho = radii[i];
        if (i > 0) {
            auto integrand = [&](double r) {
                return profile.eval(fld.norm_sq(r) / 2.0) * std::pow(fld.man.warp(r), m - 1);
            };
            acc += area * adaptive_simpson(integrand, prev_r, rho, 1e-8);
            prev_r = rho;
        }
        rep.energies.push_back(acc);
        rep.dE_drho.push_back(area * profile.eval(fld.norm_sq(rho) / 2.0) *
                              std::pow(fld.man.warp(rho), m - 1));
        const bool zero = acc <= 1e-300;
        rep.zero_energy.push_back(zero);
        rep.ratios.push_back(zero ? 0.0 : acc / std::pow(rho, lam));
    }

    rep.worst_violation = 0.0;
    rep.monotone = true;
    for (size_t i = 0; i + 1 < rep.ratios.size(); ++i) {
        if (rep.zero_energy[i] || rep.zero_energy[i + 1]) continue;
        const double drop = (rep.ratios[i] - rep.ratios[i + 1]) / rep.ratios[i];
        rep.worst_violation = std::max(rep.worst_violation, drop);
    }
    rep.monotone = rep.worst_violation <= 1e-8;

    rep.worst_differential = kInf;
    rep.differential_ok = true;
    for (size_t i = 0; i < rep.radii.size(); ++i) {
        const double gap = rep.radii[i] * rep.dE_drho[i] - lam * rep.energies[i];
        rep.worst_differential = std::min(rep.worst_differential, gap);
        if (gap < -1e-8 * std::max(1.0, lam * rep.energies[i])) rep.differential_ok = false;
    }
    return rep;
}

namespace {

// trapezoid weight along one axis of a node range [i0, i1]
double trap_w(int i, int i0, int i1) { return (i == i0 || i == i1) ? 0.5 : 1.0; }

int node_index_on(const GridSpec& spec, int axis, double c) {
    const double h = spec.h(axis);
    const int i = static_cast<int>(std::lround((c - spec.lo[axis]) / h));
    if (i < 0 || i >= spec.n[axis] || std::abs(spec.coord(axis, i) - c) > 1e-6 * h)
        throw InvalidParameter("box face must lie on grid nodes");
    return i;
}

}  // namespace

StokesReport stokes_identity_check(const GridField& w, const FProfile& profile,
                                   const std::array<double, 3>& box_lo,
                                   const std::array<double, 3>& box_hi) {
    const GridSpec& spec = w.spec;
    const int m = spec.m;
    std::array<int, 3> i0{0, 0, 0}, i1{0, 0, 0};
    for (int a = 0; a < m; ++a) {
        i0[a] = node_index_on(spec, a, box_lo[a]);
        i1[a] = node_index_on(spec, a, box_hi[a]);
        if (i1[a] < i0[a] + 1) throw InvalidParameter("degenerate box");
        if (i0[a] < 2 || i1[a] > spec.n[a] - 3)
            throw GridTooSmall("box must sit in the two-node interior");
    }

    const GridField divs = div_stress(w, profile);

    auto stress_at = [&](std::ptrdiff_t node) { return stress_energy(profile, w.form_at(node)); };

    // boundary side: sum over the 2m faces of S(X, nu), X the position field
    double lhs = 0.0;
    for (int axis = 0; axis < m; ++axis) {
        const double face_cell = [&] {
            double c = 1.0;
            for (int a = 0; a < m; ++a)
                if (a != axis) c *= spec.h(a);
            return c;
        }();
        for (int side = 0; side < 2; ++side) {
            const int iface = (side == 0) ? i0[axis] : i1[axis];
            const double sign = (side == 0) ? -1.0 : 1.0;
            std::array<int, 3> idx{0, 0, 0};
            idx[axis] = iface;
            std::vector<double> vals;
            // iterate the remaining axes
            const int a1 = (axis == 0) ? 1 : 0;
            const int a2 = (m == 3) ? 3 - axis - a1 : -1;
            const int b1_lo = i0[a1], b1_hi = i1[a1];
            const int b2_lo = (m == 3) ? i0[a2] : 0, b2_hi = (m == 3) ? i1[a2] : 0;
            for (int j2 = b2_lo; j2 <= b2_hi; ++j2) {
                for (int j1 = b1_lo; j1 <= b1_hi; ++j1) {
                    idx[a1] = j1;
                    if (m == 3) idx[a2] = j2;
                    const std::ptrdiff_t node = spec.flat(idx[0], idx[1], idx[2]);
                    const auto x = spec.point(node);
                    const SymTensor2 S = stress_at(node);
                    double sxn = 0.0;
                    for (int i = 0; i < m; ++i) sxn += S.at(i, axis) * x[i];
                    double wgt = trap_w(j1, b1_lo, b1_hi);
                    if (m == 3) wgt *= trap_w(j2, b2_lo, b2_hi);
                    vals.push_back(sign * sxn * wgt);
                }
            }
            lhs += face_cell * pairwise_sum(vals);
        }
    }

    // volume side: <S, grad X> + (div S)(X); grad of the position field is
    // the metric, so the first term is the trace
    double cell = 1.0;
    for (int a = 0; a < m; ++a) cell *= spec.h(a);
    std::vector<double> vals;
    for (int kk = (m == 3 ? i0[2] : 0); kk <= (m == 3 ? i1[2] : 0); ++kk) {
        for (int j = i0[1]; j <= i1[1]; ++j) {
            for (int i = i0[0]; i <= i1[0]; ++i) {
                const std::ptrdiff_t node = spec.flat(i, j, kk);
                const auto x = spec.point(node);
                const SymTensor2 S = stress_at(node);
                double v = S.trace();
                for (int a = 0; a < m; ++a) v += divs.at(node, a) * x[a];
                double wgt = trap_w(i, i0[0], i1[0]) * trap_w(j, i0[1], i1[1]);
                if (m == 3) wgt *= trap_w(kk, i0[2], i1[2]);
                vals.push_back(v * wgt);
            }
        }
    }
    const double rhs = cell * pairwise_sum(vals);

    StokesReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    const double denom = std::max(std::abs(lhs), std::abs(rhs));
    rep.rel_err = denom < 1e-14 ? 0.0 : std::abs(lhs - rhs) / denom;
    return rep;
}

bool boundary_condition_check(const RadialField& fld, const FProfile& profile) {
    const PointForm w = fld.amplitude(1.0);
    const double t = form_inner(w, w) / 2.0;
    std::vector<double> er(static_cast<size_t>(fld.man.m), 0.0);
    er.back() = 1.0;
    const PointForm irw = interior_mult(er, w);
    const double val = profile.eval(t) - profile.eval_prime(t) * form_inner(irw, irw);
    return val >= -1e-12;
}

GrowthVerdict growth_classify(const std::vector<std::pair<double, double>>& E_samples,
                              const std::function<double(double)>& psi, double lambda) {
    if (E_samples.size() < 4) throw SpanTooShort("need at least four samples");
    for (size_t i = 0; i + 1 < E_samples.size(); ++i)
        if (!(E_samples[i].first < E_samples[i + 1].first))
            throw SpanTooShort("sample radii must increase");
    const double r_first = E_samples.front().first;
    const double r_last = E_samples.back().first;
    if (!(r_first > 0.0) || r_last / r_first < 1e3 * (1.0 - 1e-9))
        throw SpanTooShort("samples must span at least three decades");

    GrowthVerdict v;

    // divergence heuristic for int dr/(r psi): split ln r into log-equal
    // segments, composite Simpson per segment, then the log-log slope of the
    // increments against ln(ln r_mid).  For psi = (ln r)^q the increments
    // scale like (ln r_mid)^{-q}, so the slope recovers -q for any span.
    {
        const double r_lo = std::max(r_first, 10.0);
        if (r_last < 10.0 * r_lo) throw SpanTooShort("gauge span too short above r=10");
        const double x_lo = std::log(r_lo), x_hi = std::log(r_last);
        const int K = 8, nsimp = 32;
        std::vector<double> u, li;
        for (int kk = 0; kk < K; ++kk) {
            const double a = x_lo + (x_hi - x_lo) * kk / K;
            const double b = x_lo + (x_hi - x_lo) * (kk + 1) / K;
            const double hstep = (b - a) / nsimp;
            double s = 0.0;
            for (int i = 0; i <= nsimp; ++i) {
                const double x = a + i * hstep;
                const double pv = psi(std::exp(x));
                if (!(pv > 0.0)) throw InvalidParameter("gauge must be positive");
                const double wgt = (i == 0 || i == nsimp) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                s += wgt / pv;
            }
            const double inc = s * hstep / 3.0;
            if (inc > 0.0) {
                u.push_back(std::log(0.5 * (a + b)));
                li.push_back(std::log(inc));
            }
        }
        v.divergence_slope = fit_line(u, li).slope;
        v.psi_divergence =
            v.divergence_slope >= -1.5 ? PsiVerdict::Diverging : PsiVerdict::Converging;
    }

    // E/psi trend over the last decade (log-log slope <= small)
    {
        std::vector<double> lx, ly;
        for (const auto& [rho, E] : E_samples) {
            if (rho < r_last / 10.0 * (1.0 - 1e-12) || E <= 0.0) continue;
            const double pv = psi(rho);
            if (!(pv > 0.0)) throw InvalidParameter("gauge must be positive");
            lx.push_back(std::log(rho));
            ly.push_back(std::log(E / pv));
        }
        v.energy_over_psi_bounded = lx.size() < 2 || fit_line(lx, ly).slope <= 0.05;
    }

    // little-o test: E/rho^lambda nonincreasing across the last decade
    {
        std::vector<double> g;
        for (const auto& [rho, E] : E_samples) {
            if (rho < r_last / 10.0 * (1.0 - 1e-12)) continue;
            g.push_back(E / std::pow(rho, lambda));
        }
        bool dec = g.size() >= 2;
        for (size_t i = 0; i + 1 < g.size(); ++i)
            if (g[i + 1] > g[i] * (1.0 + 1e-9) + 1e-300) dec = false;
        v.little_o_lambda = dec;
    }
    return v;
}

double ball_volume(const RadialManifold& man, double r) {
    if (!(r > 0.0)) return 0.0;
    const int m = man.m;
    auto integrand = [&](double s) { return std::pow(man.warp(s), m - 1); };
    return unit_sphere_area(m) * adaptive_simpson(integrand, 0.0, r, 1e-10);
}

}  // namespace fenergy
