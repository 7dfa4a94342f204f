#include "fenergy/forms.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

namespace fenergy {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

const TupleTable& TupleTable::get(int m, int p) {
    static std::map<std::pair<int, int>, TupleTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({m, p});
    if (it != cache.end()) return it->second;

    TupleTable tab;
    tab.m = m;
    tab.p = p;
    tab.rank_by_mask.assign(std::size_t(1) << m, -1);
    std::array<int, kMaxDeg> idx{};
    // lexicographic enumeration of increasing p-tuples
    std::vector<int> cur(p);
    for (int i = 0; i < p; ++i) cur[i] = i;
    if (p == 0) {
        tab.tuples.push_back(idx);
        tab.masks.push_back(0);
        tab.rank_by_mask[0] = 0;
    } else {
        while (true) {
            std::uint16_t mask = 0;
            for (int i = 0; i < p; ++i) {
                idx[i] = cur[i];
                mask = static_cast<std::uint16_t>(mask | (1u << cur[i]));
            }
            tab.rank_by_mask[mask] = static_cast<int>(tab.tuples.size());
            tab.tuples.push_back(idx);
            tab.masks.push_back(mask);
            int pos = p - 1;
            while (pos >= 0 && cur[pos] == m - p + pos) --pos;
            if (pos < 0) break;
            ++cur[pos];
            for (int i = pos + 1; i < p; ++i) cur[i] = cur[i - 1] + 1;
        }
    }
    return cache.emplace(std::make_pair(m, p), std::move(tab)).first->second;
}

PointForm::PointForm(int m_, int p_, int k_) : m(m_), p(p_), k(k_) {
    if (m < 1 || m > kMaxDim) throw ShapeMismatch("point form dimension m = " + std::to_string(m));
    if (p < 0 || p > kMaxDeg || p > m)
        throw DegreeOutOfRange("point form degree p = " + std::to_string(p));
    if (k < 1) throw ShapeMismatch("fiber rank k = " + std::to_string(k));
    coeffs.assign(static_cast<size_t>(binomial(m, p)) * k, 0.0);
}

double PointForm::eval(const std::vector<int>& idx, int a) const {
    if (static_cast<int>(idx.size()) != p) throw ShapeMismatch("eval index count");
    std::vector<int> sorted = idx;
    int sign = 1;
    // insertion sort, tracking the permutation parity
    for (size_t i = 1; i < sorted.size(); ++i) {
        for (size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) {
            std::swap(sorted[j - 1], sorted[j]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return 0.0;
    std::uint16_t mask = 0;
    for (int i : sorted) mask = static_cast<std::uint16_t>(mask | (1u << i));
    const auto& tab = TupleTable::get(m, p);
    return sign * at(tab.rank(mask), a);
}

double SymTensor2::trace() const {
    double tr = 0.0;
    for (int i = 0; i < m; ++i) tr += at(i, i);
    return tr;
}

double form_inner(const PointForm& a, const PointForm& b) {
    if (a.m != b.m || a.p != b.p || a.k != b.k) throw ShapeMismatch("form_inner operands");
    double s = 0.0;
    for (int i = 0; i < a.ncomp(); ++i) s += a.coeffs[i] * b.coeffs[i];
    return s;
}

PointForm interior_mult(const std::vector<double>& X, const PointForm& w) {
    if (static_cast<int>(X.size()) != w.m) throw ShapeMismatch("interior_mult vector length");
    if (w.p == 0) throw DegreeZero("interior multiplication of a 0-form");
    PointForm out(w.m, w.p - 1, w.k);
    const auto& tab = TupleTable::get(w.m, w.p);
    const auto& out_tab = TupleTable::get(w.m, w.p - 1);
    for (int r = 0; r < tab.count(); ++r) {
        const auto& tup = tab.tuples[r];
        const std::uint16_t mask = tab.masks[r];
        for (int l = 0; l < w.p; ++l) {
            const int i = tup[l];
            const double xi = X[i];
            if (xi == 0.0) continue;
            const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
            const int orank = out_tab.rank(static_cast<std::uint16_t>(mask & ~(1u << i)));
            for (int a = 0; a < w.k; ++a) out.at(orank, a) += sgn * xi * w.at(r, a);
        }
    }
    return out;
}

SymTensor2 double_contract(const PointForm& w) {
    SymTensor2 s(w.m);
    if (w.p == 0) return s;  // i_X of a 0-form vanishes
    const auto& tab = TupleTable::get(w.m, w.p);
    const auto& sub = TupleTable::get(w.m, w.p - 1);
    // accumulate i_{e_i} w for all i, then pair them up
    std::vector<std::vector<double>> contr(w.m,
                                           std::vector<double>(sub.count() * w.k, 0.0));
    for (int r = 0; r < tab.count(); ++r) {
        const auto& tup = tab.tuples[r];
        const std::uint16_t mask = tab.masks[r];
        for (int l = 0; l < w.p; ++l) {
            const int i = tup[l];
            const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
            const int orank = sub.rank(static_cast<std::uint16_t>(mask & ~(1u << i)));
            for (int a = 0; a < w.k; ++a)
                contr[i][static_cast<size_t>(orank) * w.k + a] += sgn * w.at(r, a);
        }
    }
    for (int i = 0; i < w.m; ++i)
        for (int j = i; j < w.m; ++j) {
            double v = 0.0;
            for (size_t c = 0; c < contr[i].size(); ++c) v += contr[i][c] * contr[j][c];
            s.set_sym(i, j, v);
        }
    return s;
}

SymTensor2 stress_energy(const FProfile& profile, const PointForm& w) {
    const double t = 0.5 * form_inner(w, w);
    const double ft = profile.eval(t);
    const double fpt = profile.eval_prime(t);
    SymTensor2 s = double_contract(w);
    for (int i = 0; i < w.m; ++i)
        for (int j = 0; j < w.m; ++j) s.at(i, j) = -fpt * s.at(i, j);
    for (int i = 0; i < w.m; ++i) s.at(i, i) += ft;
    return s;
}

double tensor_inner(const SymTensor2& s, const SymTensor2& t) {
    if (s.m != t.m) throw ShapeMismatch("tensor_inner operands");
    double v = 0.0;
    for (size_t i = 0; i < s.a.size(); ++i) v += s.a[i] * t.a[i];
    return v;
}

double radial_pairing(const FProfile& profile, const PointForm& w, double h, double r) {
    const double t = 0.5 * form_inner(w, w);
    const double ft = profile.eval(t);
    const double fpt = profile.eval_prime(t);
    const SymTensor2 ww = double_contract(w);
    double tang = 0.0;
    for (int i = 0; i + 1 < w.m; ++i) tang += ww.at(i, i);
    const double rad = ww.at(w.m - 1, w.m - 1);
    return ft * (1.0 + (w.m - 1) * r * h) - fpt * r * h * tang - fpt * rad;
}

}  // namespace fenergy
