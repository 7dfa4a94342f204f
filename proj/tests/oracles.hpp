#pragma once
// Brute-force reference implementations for the form algebra, written the
// slow way (full ordered-tuple sums, explicit antisymmetrization) so the
// library's rank tables and sign bookkeeping are checked against something
// that shares none of that code.

#include <cmath>
#include <functional>
#include <vector>

#include "fenergy/forms.hpp"

namespace oracle {

// All increasing p-tuples from {0..m-1} in lexicographic order.
inline std::vector<std::vector<int>> increasing_tuples(int m, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(p);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == p) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < m; ++v) {
            cur[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    if (p == 0)
        out.push_back({});
    else
        rec(0, 0);
    return out;
}

// Coefficient of w on an arbitrary ordered tuple: sort with swap counting,
// look the sorted tuple up by linear search.
inline double coeff(const fenergy::PointForm& w, std::vector<int> idx, int a) {
    int swaps = 0;
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                ++swaps;
            }
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1]) return 0.0;
    const auto tuples = increasing_tuples(w.m, w.p);
    int rank = -1;
    for (size_t r = 0; r < tuples.size(); ++r)
        if (tuples[r] == idx) {
            rank = static_cast<int>(r);
            break;
        }
    if (rank < 0) return 0.0;
    return (swaps % 2 ? -1.0 : 1.0) * w.at(rank, a);
}

// Walks every ordered p-tuple (m^p of them).
template <class Fn>
inline void for_each_ordered(int m, int p, Fn&& fn) {
    std::vector<int> idx(p, 0);
    while (true) {
        fn(idx);
        int pos = p - 1;
        while (pos >= 0 && ++idx[pos] == m) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// <a,b> = (1/p!) sum over all ordered tuples of the antisymmetric extensions.
inline double inner(const fenergy::PointForm& a, const fenergy::PointForm& b) {
    if (a.p == 0) {
        double s = 0.0;
        for (int f = 0; f < a.k; ++f) s += a.at(0, f) * b.at(0, f);
        return s;
    }
    double s = 0.0;
    for_each_ordered(a.m, a.p, [&](const std::vector<int>& idx) {
        for (int f = 0; f < a.k; ++f) s += coeff(a, idx, f) * coeff(b, idx, f);
    });
    return s / factorial(a.p);
}

// w(X_1,...,X_p) for one fiber slot, by the full ordered sum.
inline double eval_on_vectors(const fenergy::PointForm& w,
                              const std::vector<std::vector<double>>& X, int a) {
    double s = 0.0;
    for_each_ordered(w.m, w.p, [&](const std::vector<int>& idx) {
        double prod = coeff(w, idx, a);
        for (int j = 0; j < w.p; ++j) prod *= X[j][idx[j]];
        s += prod;
    });
    return s;
}

// i_X w, assembled tuple by tuple through eval_on_vectors.
inline fenergy::PointForm interior(const std::vector<double>& X, const fenergy::PointForm& w) {
    fenergy::PointForm out(w.m, w.p - 1, w.k);
    const auto tuples = increasing_tuples(w.m, w.p - 1);
    for (size_t r = 0; r < tuples.size(); ++r) {
        std::vector<std::vector<double>> args;
        args.push_back(X);
        for (int idx : tuples[r]) {
            std::vector<double> e(w.m, 0.0);
            e[idx] = 1.0;
            args.push_back(e);
        }
        for (int a = 0; a < w.k; ++a) out.at(static_cast<int>(r), a) = eval_on_vectors(w, args, a);
    }
    return out;
}

// (w (.) w)(e_i, e_j) through the oracle interior product.
inline fenergy::SymTensor2 double_contract(const fenergy::PointForm& w) {
    fenergy::SymTensor2 s(w.m);
    std::vector<fenergy::PointForm> slots;
    for (int i = 0; i < w.m; ++i) {
        std::vector<double> e(w.m, 0.0);
        e[i] = 1.0;
        slots.push_back(interior(e, w));
    }
    for (int i = 0; i < w.m; ++i)
        for (int j = 0; j < w.m; ++j) s.at(i, j) = inner(slots[i], slots[j]);
    return s;
}

inline fenergy::SymTensor2 stress(const fenergy::FProfile& prof, const fenergy::PointForm& w) {
    const double t = 0.5 * inner(w, w);
    const double F = prof.eval(t), Fp = prof.eval_prime(t);
    fenergy::SymTensor2 s = oracle::double_contract(w);
    for (int i = 0; i < w.m; ++i)
        for (int j = 0; j < w.m; ++j) s.at(i, j) = (i == j ? F : 0.0) - Fp * s.at(i, j);
    return s;
}

}  // namespace oracle
