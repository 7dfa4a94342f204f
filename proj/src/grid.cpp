#include "fenergy/grid.hpp"

#include <cmath>

#include "fenergy/numeric.hpp"
#include "fenergy/parallel.hpp"

namespace fenergy {

GridSpec::GridSpec(int m_, std::array<int, 3> n_, std::array<double, 3> lo_,
                   std::array<double, 3> hi_)
    : m(m_), n(n_), lo(lo_), hi(hi_) {
    if (m != 2 && m != 3) throw ShapeMismatch("grid dimension m must be 2 or 3");
    for (int a = 0; a < m; ++a) {
        if (n[a] < 8) throw GridTooSmall("axis " + std::to_string(a) + " has n < 8");
        if (!(hi[a] > lo[a])) throw ShapeMismatch("axis " + std::to_string(a) + " has hi <= lo");
    }
    if (m == 2) {
        n[2] = 1;
        lo[2] = hi[2] = 0.0;
    }
}

std::ptrdiff_t GridSpec::nodes() const {
    return static_cast<std::ptrdiff_t>(n[0]) * n[1] * n[2];
}

std::ptrdiff_t GridSpec::flat(int i, int j, int kk) const {
    return i + static_cast<std::ptrdiff_t>(n[0]) * (j + static_cast<std::ptrdiff_t>(n[1]) * kk);
}

std::array<int, 3> GridSpec::unflat(std::ptrdiff_t idx) const {
    const int i = static_cast<int>(idx % n[0]);
    const int j = static_cast<int>((idx / n[0]) % n[1]);
    const int kk = static_cast<int>(idx / (static_cast<std::ptrdiff_t>(n[0]) * n[1]));
    return {i, j, kk};
}

std::array<double, 3> GridSpec::point(std::ptrdiff_t idx) const {
    const auto c = unflat(idx);
    return {coord(0, c[0]), coord(1, c[1]), m == 3 ? coord(2, c[2]) : 0.0};
}

bool GridSpec::same_shape(const GridSpec& o) const {
    return m == o.m && n == o.n && lo == o.lo && hi == o.hi;
}

GridField::GridField(GridSpec spec_, int p_, int k_) : spec(std::move(spec_)), p(p_), k(k_) {
    if (p < 0 || p > spec.m) throw DegreeOutOfRange("grid field degree p = " + std::to_string(p));
    if (k < 1) throw ShapeMismatch("grid field fiber rank k = " + std::to_string(k));
    data.assign(static_cast<size_t>(spec.nodes()) * ncomp(), 0.0);
}

PointForm GridField::form_at(std::ptrdiff_t node) const {
    PointForm w(spec.m, p, k);
    for (int c = 0; c < ncomp(); ++c) w.coeffs[c] = at(node, c);
    return w;
}

void GridField::set_form(std::ptrdiff_t node, const PointForm& w) {
    if (w.m != spec.m || w.p != p || w.k != k) throw ShapeMismatch("set_form operand");
    for (int c = 0; c < ncomp(); ++c) at(node, c) = w.coeffs[c];
}

GridField GridField::sample(const GridSpec& spec, int p, int k,
                            const std::function<PointForm(const std::array<double, 3>&)>& fn) {
    GridField out(spec, p, k);
    const std::ptrdiff_t nn = spec.nodes();
    for (std::ptrdiff_t idx = 0; idx < nn; ++idx) out.set_form(idx, fn(spec.point(idx)));
    return out;
}

GridField GridField::sample_scalar(const GridSpec& spec,
                                   const std::function<double(const std::array<double, 3>&)>& fn) {
    GridField out(spec, 0, 1);
    const std::ptrdiff_t nn = spec.nodes();
    for (std::ptrdiff_t idx = 0; idx < nn; ++idx) out.at(idx, 0) = fn(spec.point(idx));
    return out;
}

namespace {

inline std::ptrdiff_t axis_stride(const GridSpec& s, int axis) {
    switch (axis) {
        case 0: return 1;
        case 1: return s.n[0];
        default: return static_cast<std::ptrdiff_t>(s.n[0]) * s.n[1];
    }
}

/// O(h^2) derivative of one component along one axis: central in the
/// interior, one-sided three-point on the boundary faces.
inline double axis_deriv(const GridField& f, int comp, std::ptrdiff_t node, int pos, int axis) {
    const std::ptrdiff_t st = axis_stride(f.spec, axis);
    const double inv2h = 0.5 / f.spec.h(axis);
    const int n = f.spec.n[axis];
    if (pos == 0)
        return (-3.0 * f.at(node, comp) + 4.0 * f.at(node + st, comp) - f.at(node + 2 * st, comp)) *
               inv2h;
    if (pos == n - 1)
        return (3.0 * f.at(node, comp) - 4.0 * f.at(node - st, comp) + f.at(node - 2 * st, comp)) *
               inv2h;
    return (f.at(node + st, comp) - f.at(node - st, comp)) * inv2h;
}

struct DTerm {
    int out_rank;
    int in_rank;
    int axis;
    double sign;
};

/// Exterior derivative stencil plan: for each output tuple T (size p+1),
/// (dw)_T = sum_l (-1)^l d_{T[l]} w_{T minus T[l]}.
std::vector<DTerm> d_plan(int m, int p) {
    const auto& out_tab = TupleTable::get(m, p + 1);
    const auto& in_tab = TupleTable::get(m, p);
    std::vector<DTerm> plan;
    for (int r = 0; r < out_tab.count(); ++r) {
        const auto& tup = out_tab.tuples[r];
        const std::uint16_t mask = out_tab.masks[r];
        for (int l = 0; l <= p; ++l) {
            const int axis = tup[l];
            const int in_rank = in_tab.rank(static_cast<std::uint16_t>(mask & ~(1u << axis)));
            plan.push_back({r, in_rank, axis, (l % 2 == 0) ? 1.0 : -1.0});
        }
    }
    return plan;
}

/// Codifferential stencil plan: for each output tuple J (size p-1),
/// (delta w)_J = -sum_{i not in J} sign(i,J) d_i w_{sorted(i,J)}, where
/// sign(i,J) = (-1)^{number of J entries below i}.
std::vector<DTerm> delta_plan(int m, int p) {
    const auto& out_tab = TupleTable::get(m, p - 1);
    const auto& in_tab = TupleTable::get(m, p);
    std::vector<DTerm> plan;
    for (int r = 0; r < out_tab.count(); ++r) {
        const std::uint16_t mask = out_tab.masks[r];
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) continue;
            int below = 0;
            for (int l = 0; l < p - 1; ++l)
                if (out_tab.tuples[r][l] < i) ++below;
            const int in_rank = in_tab.rank(static_cast<std::uint16_t>(mask | (1u << i)));
            plan.push_back({r, in_rank, i, (below % 2 == 0) ? -1.0 : 1.0});
        }
    }
    return plan;
}

template <class ForEach>
GridField apply_plan(const GridField& w, int out_p, const std::vector<DTerm>& plan,
                     const ForEach& for_each) {
    GridField out(w.spec, out_p, w.k);
    const std::ptrdiff_t nn = w.spec.nodes();
    for_each(nn, [&](std::ptrdiff_t idx) {
        const auto c = w.spec.unflat(idx);
        for (const auto& t : plan) {
            const int pos = c[t.axis];
            for (int a = 0; a < w.k; ++a) {
                const double d = axis_deriv(w, t.in_rank * w.k + a, idx, pos, t.axis);
                out.at(idx, t.out_rank * w.k + a) += t.sign * d;
            }
        }
    });
    return out;
}

const auto par_loop = [](std::ptrdiff_t n, auto&& body) { parallel_for(n, body); };
const auto ser_loop = [](std::ptrdiff_t n, auto&& body) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
};

/// Contraction plan per direction j: i_{e_j} w entries
/// (out_rank over (p-1)-tuples, in_rank, sign).
struct CTerm {
    int out_rank;
    int in_rank;
    double sign;
};
std::vector<std::vector<CTerm>> contraction_plan(int m, int p) {
    const auto& tab = TupleTable::get(m, p);
    const auto& sub = TupleTable::get(m, p - 1);
    std::vector<std::vector<CTerm>> plan(m);
    for (int r = 0; r < tab.count(); ++r) {
        const auto& tup = tab.tuples[r];
        const std::uint16_t mask = tab.masks[r];
        for (int l = 0; l < p; ++l) {
            const int j = tup[l];
            const int orank = sub.rank(static_cast<std::uint16_t>(mask & ~(1u << j)));
            plan[j].push_back({orank, r, (l % 2 == 0) ? 1.0 : -1.0});
        }
    }
    return plan;
}

template <class ForEach>
GridField div_stress_impl(const GridField& w, const FProfile& profile, const ForEach& for_each) {
    if (w.p < 1) throw DegreeZero("div_stress needs degree >= 1");
    const int m = w.spec.m, p = w.p, k = w.k;

    const GridField dw = (p < m) ? apply_plan(w, p + 1, d_plan(m, p), for_each)
                                 : GridField(w.spec, 0, k);  // unused placeholder
    const GridField delw = apply_plan(w, p - 1, delta_plan(m, p), for_each);

    // t = |w|^2/2 and the profile derivative fields
    const std::ptrdiff_t nn = w.spec.nodes();
    GridField tf(w.spec, 0, 1);
    for_each(nn, [&](std::ptrdiff_t idx) {
        double s = 0.0;
        for (int c = 0; c < w.ncomp(); ++c) s += w.at(idx, c) * w.at(idx, c);
        tf.at(idx, 0) = 0.5 * s;
    });
    GridField fp(w.spec, 0, 1), fpp(w.spec, 0, 1);
    for (std::ptrdiff_t idx = 0; idx < nn; ++idx) {  // may throw DomainExceeded: keep serial
        fp.at(idx, 0) = profile.eval_prime(tf.at(idx, 0));
        fpp.at(idx, 0) = profile.second_derivative(tf.at(idx, 0));
    }

    const auto cplan = contraction_plan(m, p);
    const auto cplan_d = (p < m) ? contraction_plan(m, p + 1) : std::vector<std::vector<CTerm>>{};
    const int nsub = static_cast<int>(binomial(m, p - 1)) * k;

    GridField out(w.spec, 1, 1);
    for_each(nn, [&](std::ptrdiff_t idx) {
        const auto c = w.spec.unflat(idx);
        // grad F' = F'' grad t
        double gradfp[3] = {0.0, 0.0, 0.0};
        for (int a = 0; a < m; ++a)
            gradfp[a] = fpp.at(idx, 0) * axis_deriv(tf, 0, idx, c[a], a);

        // i_{e_j} w for all j, flattened (p-1)-form comps
        thread_local std::vector<double> contr;
        contr.assign(static_cast<size_t>(m) * nsub, 0.0);
        for (int j = 0; j < m; ++j)
            for (const auto& t : cplan[j])
                for (int a = 0; a < k; ++a)
                    contr[static_cast<size_t>(j) * nsub + t.out_rank * k + a] +=
                        t.sign * w.at(idx, t.in_rank * k + a);

        const double fpv = fp.at(idx, 0);
        for (int j = 0; j < m; ++j) {
            // F' <delta w, i_j w>
            double t1 = 0.0;
            for (int cidx = 0; cidx < nsub; ++cidx)
                t1 += delw.at(idx, cidx) * contr[static_cast<size_t>(j) * nsub + cidx];
            // F' <i_j dw, w>
            double t2 = 0.0;
            if (p < m)
                for (const auto& t : cplan_d[j])
                    for (int a = 0; a < k; ++a)
                        t2 += t.sign * dw.at(idx, t.in_rank * k + a) * w.at(idx, t.out_rank * k + a);
            // <i_{grad F'} w, i_j w>
            double t3 = 0.0;
            for (int aa = 0; aa < m; ++aa) {
                if (gradfp[aa] == 0.0) continue;
                double dot = 0.0;
                for (int cidx = 0; cidx < nsub; ++cidx)
                    dot += contr[static_cast<size_t>(aa) * nsub + cidx] *
                           contr[static_cast<size_t>(j) * nsub + cidx];
                t3 += gradfp[aa] * dot;
            }
            out.at(idx, j) = fpv * t1 + fpv * t2 - t3;
        }
    });
    return out;
}

}  // namespace

GridField exterior_d(const GridField& w) {
    if (w.p >= w.spec.m) throw DegreeOutOfRange("exterior_d needs p < m");
    return apply_plan(w, w.p + 1, d_plan(w.spec.m, w.p), par_loop);
}

GridField codifferential(const GridField& w) {
    if (w.p < 1) throw DegreeZero("codifferential needs p >= 1");
    return apply_plan(w, w.p - 1, delta_plan(w.spec.m, w.p), par_loop);
}

GridField half_norm_sq_field(const GridField& w) {
    GridField out(w.spec, 0, 1);
    const std::ptrdiff_t nn = w.spec.nodes();
    parallel_for(nn, [&](std::ptrdiff_t idx) {
        double s = 0.0;
        for (int c = 0; c < w.ncomp(); ++c) s += w.at(idx, c) * w.at(idx, c);
        out.at(idx, 0) = 0.5 * s;
    });
    return out;
}

GridField div_stress(const GridField& w, const FProfile& profile) {
    return div_stress_impl(w, profile, par_loop);
}

double conservation_residual(const GridField& w, const FProfile& profile) {
    return max_interior_norm(div_stress(w, profile), 2);
}

GridField el_tension(const GridField& sigma, const FProfile& profile) {
    if (sigma.p >= sigma.spec.m)
        throw DegreeOutOfRange("el_tension needs the potential degree below m");
    GridField ds = exterior_d(sigma);
    const GridField tf = half_norm_sq_field(ds);
    GridField fp(sigma.spec, 0, 1);
    const std::ptrdiff_t nn = sigma.spec.nodes();
    for (std::ptrdiff_t idx = 0; idx < nn; ++idx)
        fp.at(idx, 0) = profile.eval_prime(tf.at(idx, 0));
    GridField tau = codifferential(scalar_multiply(fp, ds));
    for (auto& v : tau.data) v = -v;
    return tau;
}

double el_residual(const GridField& sigma, const FProfile& profile) {
    return max_interior_norm(el_tension(sigma, profile), 2);
}

GridField div_stress_direct(const GridField& w, const FProfile& profile) {
    const int m = w.spec.m;
    const std::ptrdiff_t nn = w.spec.nodes();
    // sampled stress tensor, m*m scalar components per node
    GridField sfield(w.spec, 0, m * m);
    parallel_for(nn, [&](std::ptrdiff_t idx) {
        const SymTensor2 s = stress_energy(profile, w.form_at(idx));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) sfield.at(idx, i * m + j) = s.at(i, j);
    });
    GridField out(w.spec, 1, 1);
    parallel_for(nn, [&](std::ptrdiff_t idx) {
        const auto c = w.spec.unflat(idx);
        for (int j = 0; j < m; ++j) {
            double v = 0.0;
            for (int i = 0; i < m; ++i) v += axis_deriv(sfield, i * m + j, idx, c[i], i);
            out.at(idx, j) = v;
        }
    });
    return out;
}

double max_interior_norm(const GridField& w, int margin) {
    const auto& s = w.spec;
    double best = 0.0;
    const std::ptrdiff_t nn = s.nodes();
    std::vector<double> norms(static_cast<size_t>(nn), 0.0);
    parallel_for(nn, [&](std::ptrdiff_t idx) {
        const auto c = s.unflat(idx);
        for (int a = 0; a < s.m; ++a)
            if (c[a] < margin || c[a] >= s.n[a] - margin) return;
        double sum = 0.0;
        for (int comp = 0; comp < w.ncomp(); ++comp) sum += w.at(idx, comp) * w.at(idx, comp);
        norms[static_cast<size_t>(idx)] = sum;
    });
    for (double v : norms) best = std::max(best, v);
    return std::sqrt(best);
}

double grid_inner(const GridField& a, const GridField& b) {
    if (!a.spec.same_shape(b.spec) || a.p != b.p || a.k != b.k)
        throw ShapeMismatch("grid_inner operands");
    const std::ptrdiff_t nn = a.spec.nodes();
    std::vector<double> prods(static_cast<size_t>(nn));
    parallel_for(nn, [&](std::ptrdiff_t idx) {
        double s = 0.0;
        for (int c = 0; c < a.ncomp(); ++c) s += a.at(idx, c) * b.at(idx, c);
        prods[static_cast<size_t>(idx)] = s;
    });
    double cell = 1.0;
    for (int ax = 0; ax < a.spec.m; ++ax) cell *= a.spec.h(ax);
    return cell * pairwise_sum(prods);
}

GridField scalar_multiply(const GridField& scalar, const GridField& w) {
    if (!scalar.spec.same_shape(w.spec) || scalar.p != 0 || scalar.k != 1)
        throw ShapeMismatch("scalar_multiply needs a matching 0-form scalar");
    GridField out = w;
    const std::ptrdiff_t nn = w.spec.nodes();
    parallel_for(nn, [&](std::ptrdiff_t idx) {
        const double s = scalar.at(idx, 0);
        for (int c = 0; c < w.ncomp(); ++c) out.at(idx, c) = s * w.at(idx, c);
    });
    return out;
}

double interpolate(const GridField& w, int comp, const std::array<double, 3>& x) {
    const auto& s = w.spec;
    int cell[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < s.m; ++a) {
        const double t = (x[a] - s.lo[a]) / s.h(a);
        if (t < -1e-9 || t > s.n[a] - 1 + 1e-9)
            throw GridTooSmall("interpolation point outside the grid box");
        int c = static_cast<int>(std::floor(t));
        c = std::max(0, std::min(c, s.n[a] - 2));
        cell[a] = c;
        frac[a] = t - c;
    }
    double val = 0.0;
    const int corners = 1 << s.m;
    for (int bit = 0; bit < corners; ++bit) {
        double wgt = 1.0;
        int ic[3] = {cell[0], cell[1], cell[2]};
        for (int a = 0; a < s.m; ++a) {
            if (bit & (1 << a)) {
                wgt *= frac[a];
                ic[a] += 1;
            } else {
                wgt *= 1.0 - frac[a];
            }
        }
        val += wgt * w.at(s.flat(ic[0], ic[1], ic[2]), comp);
    }
    return val;
}

bool supported_away_from_boundary(const GridField& w, int margin) {
    const auto& s = w.spec;
    const std::ptrdiff_t nn = s.nodes();
    for (std::ptrdiff_t idx = 0; idx < nn; ++idx) {
        const auto c = s.unflat(idx);
        bool in_margin = false;
        for (int a = 0; a < s.m; ++a)
            if (c[a] < margin || c[a] >= s.n[a] - margin) in_margin = true;
        if (!in_margin) continue;
        for (int comp = 0; comp < w.ncomp(); ++comp)
            if (w.at(idx, comp) != 0.0) return false;
    }
    return true;
}

namespace ref {

GridField exterior_d(const GridField& w) {
    if (w.p >= w.spec.m) throw DegreeOutOfRange("exterior_d needs p < m");
    return apply_plan(w, w.p + 1, d_plan(w.spec.m, w.p), ser_loop);
}

GridField codifferential(const GridField& w) {
    if (w.p < 1) throw DegreeZero("codifferential needs p >= 1");
    return apply_plan(w, w.p - 1, delta_plan(w.spec.m, w.p), ser_loop);
}

GridField div_stress(const GridField& w, const FProfile& profile) {
    return div_stress_impl(w, profile, ser_loop);
}

}  // namespace ref

}  // namespace fenergy
