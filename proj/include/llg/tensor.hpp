#pragma once

#include <cassert>
#include <functional>

#include "connection.hpp"

namespace llg {

inline size_t pow_size(int n, int rank) {
    size_t s = 1;
    for (int i = 0; i < rank; ++i) s *= static_cast<size_t>(n);
    return s;
}

/// Runs fn over all index tuples of the given rank with entries in 0..n-1,
/// in row-major order (first index slowest).
inline void for_each_index(int n, int rank, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(rank, 0);
    while (true) {
        fn(idx);
        int u = rank - 1;
        while (u >= 0 && ++idx[u] == n) idx[u--] = 0;
        if (u < 0) break;
    }
}

/// A tensor field on the chart with `up` upper and `lo` lower indices,
/// components expressions in the x block, stored flat in row-major index
/// order (upper indices first).
struct TensorField {
    int dim = 0;
    int up = 0;
    int lo = 0;
    std::vector<Expr> comp;

    static TensorField zeros(int dim, int up, int lo) {
        return {dim, up, lo, std::vector<Expr>(pow_size(dim, up + lo), cst(0))};
    }

    size_t flat(const std::vector<int>& idx) const {
        assert(static_cast<int>(idx.size()) == up + lo);
        size_t f = 0;
        for (int v : idx) f = f * static_cast<size_t>(dim) + static_cast<size_t>(v);
        return f;
    }

    const Expr& at(const std::vector<int>& idx) const { return comp[flat(idx)]; }
    Expr& at(const std::vector<int>& idx) { return comp[flat(idx)]; }
};

inline TensorField tensor_from_coeffs(const Coeffs& c) {
    const int n = static_cast<int>(c.size());
    TensorField t = TensorField::zeros(n, 1, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) t.at({i, j, k}) = c[i][j][k];
    return t;
}

/// Covariant derivative with the given coefficients; the direction index is
/// prepended as the first lower index of the result:
///   (D t)^I_{j A} = d_j t^I_A - sum_u gamma^{i_u}_{j b} t^{I[u->b]}_A
///                             + sum_u gamma^b_{j a_u} t^I_{A[u->b]}.
inline TensorField covariant_derivative(const TensorField& t, const Coeffs& gamma) {
    const int n = t.dim;
    TensorField out = TensorField::zeros(n, t.up, t.lo + 1);
    for_each_index(n, t.up + t.lo, [&](const std::vector<int>& idx) {
        for (int j = 0; j < n; ++j) {
            Expr acc = diff(t.at(idx), point_var(0, j + 1));
            std::vector<int> sub = idx;
            for (int u = 0; u < t.up; ++u) {
                const int iu = idx[u];
                for (int b = 0; b < n; ++b) {
                    sub[u] = b;
                    acc = acc - gamma[iu][j][b] * t.at(sub);
                }
                sub[u] = iu;
            }
            for (int u = t.up; u < t.up + t.lo; ++u) {
                const int au = idx[u];
                for (int b = 0; b < n; ++b) {
                    sub[u] = b;
                    acc = acc + gamma[b][j][au] * t.at(sub);
                }
                sub[u] = au;
            }
            std::vector<int> oidx(idx.begin(), idx.begin() + t.up);
            oidx.push_back(j);
            oidx.insert(oidx.end(), idx.begin() + t.up, idx.end());
            out.at(oidx) = acc;
        }
    });
    return out;
}

/// Lie derivative along the vector field X (components in the x block):
///   (L_X t)^I_A = X^m d_m t^I_A - sum_u d_m X^{i_u} t^{I[u->m]}_A
///                              + sum_u d_{a_u} X^m t^I_{A[u->m]}.
inline TensorField lie_derivative(const TensorField& t, const std::vector<Expr>& X) {
    const int n = t.dim;
    TensorField out = TensorField::zeros(n, t.up, t.lo);
    for_each_index(n, t.up + t.lo, [&](const std::vector<int>& idx) {
        Expr acc = cst(0);
        for (int m = 0; m < n; ++m) acc = acc + X[m] * diff(t.at(idx), point_var(0, m + 1));
        std::vector<int> sub = idx;
        for (int u = 0; u < t.up; ++u) {
            const int iu = idx[u];
            for (int m = 0; m < n; ++m) {
                sub[u] = m;
                acc = acc - diff(X[iu], point_var(0, m + 1)) * t.at(sub);
            }
            sub[u] = iu;
        }
        for (int u = t.up; u < t.up + t.lo; ++u) {
            const int au = idx[u];
            for (int m = 0; m < n; ++m) {
                sub[u] = m;
                acc = acc + diff(X[m], point_var(0, au + 1)) * t.at(sub);
            }
            sub[u] = au;
        }
        out.at(idx) = acc;
    });
    return out;
}

inline std::vector<Expr> bracket(const std::vector<Expr>& X, const std::vector<Expr>& Y) {
    const int n = static_cast<int>(X.size());
    std::vector<Expr> out(n, cst(0));
    for (int i = 0; i < n; ++i) {
        Expr acc = cst(0);
        for (int m = 0; m < n; ++m)
            acc = acc + X[m] * diff(Y[i], point_var(0, m + 1)) -
                  Y[m] * diff(X[i], point_var(0, m + 1));
        out[i] = acc;
    }
    return out;
}

/// The frame of invariant vector fields through base: field a has components
/// eps^i_a(base, x), so it equals the coordinate basis at base and is
/// invariant under the splitting's family of translations.
inline std::vector<std::vector<Expr>> invariant_frame(const Splitting& s,
                                                      const std::vector<Rat>& base) {
    auto mat = eps_subst(s, const_point(base), block_vars(Block::Point, 0, s.dim));
    std::vector<std::vector<Expr>> frame(s.dim, std::vector<Expr>(s.dim));
    for (int a = 0; a < s.dim; ++a)
        for (int i = 0; i < s.dim; ++i) frame[a][i] = mat[i][a];
    return frame;
}

/// The dual coframe: covector field a has components eps^a_i(x, base); by
/// the composition axiom it pairs with the frame to the identity.
inline std::vector<std::vector<Expr>> invariant_coframe(const Splitting& s,
                                                        const std::vector<Rat>& base) {
    auto mat = eps_subst(s, block_vars(Block::Point, 0, s.dim), const_point(base));
    std::vector<std::vector<Expr>> co(s.dim, std::vector<Expr>(s.dim));
    for (int a = 0; a < s.dim; ++a)
        for (int i = 0; i < s.dim; ++i) co[a][i] = mat[a][i];
    return co;
}

/// c[k][a][b]: component k of [frame_a, frame_b] evaluated at base, where
/// the frame through base reduces to the coordinate basis.
inline std::vector<std::vector<std::vector<Rat>>> structure_constants(
    const Splitting& s, const std::vector<Rat>& base) {
    const int n = s.dim;
    auto frame = invariant_frame(s, base);
    Assignment at;
    for (int i = 0; i < n; ++i) at[point_var(0, i + 1)] = base[i];
    std::vector<std::vector<std::vector<Rat>>> c(
        n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto br = bracket(frame[a], frame[b]);
            for (int k = 0; k < n; ++k) c[k][a][b] = eval_exact(br[k], at);
        }
    return c;
}

inline bool jacobi_holds(const std::vector<std::vector<std::vector<Rat>>>& c) {
    const int n = static_cast<int>(c.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc)
                for (int e = 0; e < n; ++e) {
                    Rat acc(0);
                    for (int d = 0; d < n; ++d)
                        acc += c[d][a][b] * c[e][d][cc] + c[d][b][cc] * c[e][d][a] +
                               c[d][cc][a] * c[e][d][b];
                    if (acc != 0) return false;
                }
    return true;
}

/// The correspondence at base between the two families: sends a translation
/// to the unique translation of the other family agreeing with it at base.
inline TranslationMap correspondence_translation(const GroupLaw& g, const TranslationMap& f,
                                                 const std::vector<Rat>& base) {
    auto fb = f.eval(g, base);
    if (f.family == TranslationMap::Family::Left)
        return {TranslationMap::Family::Right, mul_points(g, inv_point(g, base), fb)};
    return {TranslationMap::Family::Left, mul_points(g, fb, inv_point(g, base))};
}

/// Derivative of the correspondence at base on vector fields: the result is
/// the other family's invariant field with the same value at base.
/// other_splitting must be the splitting of the output family.
inline std::vector<Expr> correspondence_vector(const Splitting& other_splitting,
                                               const std::vector<Rat>& base,
                                               const std::vector<Expr>& xi) {
    const int n = other_splitting.dim;
    Assignment at;
    for (int i = 0; i < n; ++i) at[point_var(0, i + 1)] = base[i];
    auto frame = invariant_frame(other_splitting, base);
    std::vector<Expr> out(n, cst(0));
    for (int a = 0; a < n; ++a) {
        Rat v = eval_exact(xi[a], at);
        if (v == 0) continue;
        for (int i = 0; i < n; ++i) out[i] = out[i] + cst(v) * frame[a][i];
    }
    return out;
}

/// Pushforward of a tensor field along one translation of the family the
/// splitting belongs to: upper indices contract with the Jacobian
/// eps(f^{-1} x, x), lower ones with its inverse eps(x, f^{-1} x), and
/// components are pulled back through f^{-1}.
inline TensorField pushforward(const GroupLaw& g, const Splitting& s, const TranslationMap& f,
                               const TensorField& t) {
    assert((f.family == TranslationMap::Family::Left) == (s.variant == Variant::Tilde));
    const int n = t.dim;
    auto xv = block_vars(Block::Point, 0, n);
    auto finv = f.inverse_map(g).body(g);
    auto A = eps_subst(s, finv, xv);
    auto B = eps_subst(s, xv, finv);

    std::map<VarRef, Expr> pull;
    map_block(pull, Block::Point, 0, finv);

    TensorField out = TensorField::zeros(n, t.up, t.lo);
    for_each_index(n, t.up + t.lo, [&](const std::vector<int>& idx) {
        Expr acc = cst(0);
        for_each_index(n, t.up + t.lo, [&](const std::vector<int>& src) {
            Expr term = subst(t.at(src), pull);
            for (int u = 0; u < t.up; ++u) term = term * A[idx[u]][src[u]];
            for (int u = t.up; u < t.up + t.lo; ++u) term = term * B[src[u]][idx[u]];
            acc = acc + term;
        });
        out.at(idx) = acc;
    });
    return out;
}

inline std::vector<Rat> eval_tensor(const TensorField& t, const std::vector<Rat>& p) {
    Assignment at;
    for (int i = 0; i < t.dim; ++i) at[point_var(0, i + 1)] = p[i];
    std::unordered_map<const Node*, Rat> memo;
    std::vector<Rat> out;
    out.reserve(t.comp.size());
    for (const auto& e : t.comp) out.push_back(detail::eval_exact_rec(e, at, memo));
    return out;
}

}  // namespace llg
