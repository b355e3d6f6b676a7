#pragma once

#include "forms.hpp"

namespace llg {

/// Everything the operators need about one chart: the group law, both
/// derived splittings and the connection pair.
struct ChartOps {
    GroupLaw group;
    Splitting tilde_split;
    Splitting hat_split;
    ConnectionPair conn;

    const Splitting& split(Variant v) const { return v == Variant::Tilde ? tilde_split : hat_split; }
    const Coeffs& gamma(Variant v) const { return conn.of(v); }
    Variant other(Variant v) const { return v == Variant::Tilde ? Variant::Hat : Variant::Tilde; }

    std::vector<Expr> constraints_for(int copies) const {
        return constraints_for_copies(group, copies);
    }
};

inline ChartOps make_chart_ops(const GroupLaw& g) {
    ChartOps ops;
    ops.group = g;
    ops.tilde_split = splitting_from_group(g, Variant::Tilde);
    ops.hat_split = splitting_from_group(g, Variant::Hat);
    ops.conn = connection_pair(ops.tilde_split);
    return ops;
}

namespace detail {

/// The splitting matrices eps(x, y_c) for the extra point copies c >= 1,
/// indexed [c-1][row][col].
inline std::vector<std::vector<std::vector<Expr>>> copy_transports(const Splitting& s,
                                                                   int copies) {
    std::vector<std::vector<std::vector<Expr>>> out;
    auto xv = block_vars(Block::Point, 0, s.dim);
    for (int c = 1; c < copies; ++c)
        out.push_back(eps_subst(s, xv, block_vars(Block::Point, c, s.dim)));
    return out;
}

/// Point-and-slot derivative in chart direction r: the x-derivative, plus
/// every extra copy moved in parallel through `eps_c`, plus the slot
/// variables rotated by `gamma` (vector slots with a plus sign, covector
/// slots with a minus sign).
inline Expr directional(const Expr& w, int r, int dim, int vslots, int cslots,
                        const std::vector<std::vector<std::vector<Expr>>>& eps_c,
                        const Coeffs& gamma) {
    Expr acc = diff(w, point_var(0, r + 1));
    for (std::size_t c = 0; c < eps_c.size(); ++c)
        for (int a = 0; a < dim; ++a) {
            Expr dw = diff(w, point_var(static_cast<int>(c) + 1, a + 1));
            if (!is_zero(dw)) acc = add(acc, mul(dw, eps_c[c][a][r]));
        }
    for (int s = 0; s < vslots; ++s)
        for (int a = 0; a < dim; ++a) {
            Expr dw = diff(w, fiber_var(s, a + 1));
            if (is_zero(dw)) continue;
            for (int b = 0; b < dim; ++b)
                acc = add(acc, mul(mul(dw, gamma[a][r][b]), var(fiber_var(s, b + 1))));
        }
    for (int s = 0; s < cslots; ++s)
        for (int a = 0; a < dim; ++a) {
            Expr dw = diff(w, cofiber_var(s, a + 1));
            if (is_zero(dw)) continue;
            for (int b = 0; b < dim; ++b)
                acc = sub(acc, mul(mul(dw, gamma[b][r][a]), var(cofiber_var(s, b + 1))));
        }
    return acc;
}

}  // namespace detail

/// Horizontal exterior differential of the chosen variant:
///   (d w)_J = sum_p (-1)^p D_{j_p} w_{J minus j_p},
/// with D built from that variant's own splitting and connection.
inline HorizontalForm horizontal_differential(const ChartOps& ops, Variant v,
                                              const HorizontalForm& f) {
    const auto eps_c = detail::copy_transports(ops.split(v), f.copies);
    const Coeffs& gamma = ops.gamma(v);
    HorizontalForm out =
        HorizontalForm::zeros(f.dim, f.copies, f.vslots, f.cslots, f.degree + 1);
    for (std::size_t J = 0; J < out.tuples.size(); ++J) {
        const auto& t = out.tuples[J];
        Expr acc = cst(0);
        for (std::size_t p = 0; p < t.size(); ++p) {
            Expr dcomp = detail::directional(f.at(tuple_without(t, p)), t[p], f.dim, f.vslots,
                                             f.cslots, eps_c, gamma);
            acc = p % 2 == 0 ? add(acc, dcomp) : sub(acc, dcomp);
        }
        out.comp[J] = acc;
    }
    return out;
}

/// Componentwise invariance operator of the chosen variant, one form per
/// chart direction.  Index and slot terms rotate by the variant's own
/// connection; the extra copies move along the diagonal leaves, whose
/// tangent transport is the other variant's splitting.  A form is invariant
/// under the variant's family of translations exactly when every returned
/// component vanishes.
inline std::vector<HorizontalForm> invariance_defect(const ChartOps& ops, Variant v,
                                                     const HorizontalForm& f) {
    const auto eps_c = detail::copy_transports(ops.split(ops.other(v)), f.copies);
    const Coeffs& gamma = ops.gamma(v);
    std::vector<HorizontalForm> out;
    for (int r = 0; r < f.dim; ++r) {
        HorizontalForm g = HorizontalForm::zeros(f.dim, f.copies, f.vslots, f.cslots, f.degree);
        for (std::size_t I = 0; I < f.tuples.size(); ++I) {
            const auto& t = f.tuples[I];
            Expr acc = detail::directional(f.comp[I], r, f.dim, f.vslots, f.cslots, eps_c, gamma);
            for (std::size_t u = 0; u < t.size(); ++u)
                for (int a = 0; a < f.dim; ++a) {
                    if (is_zero(gamma[a][r][t[u]])) continue;
                    std::vector<int> swapped = t;
                    swapped[u] = a;
                    Expr c = f.signed_at(swapped);
                    if (!is_zero(c)) acc = add(acc, mul(gamma[a][r][t[u]], c));
                }
            g.comp[I] = acc;
        }
        out.push_back(std::move(g));
    }
    return out;
}

/// All components of all directional defects, for feeding a zero check.
inline std::vector<Expr> flatten_defect(const std::vector<HorizontalForm>& defect) {
    std::vector<Expr> out;
    for (const auto& f : defect)
        for (const auto& c : f.comp) out.push_back(c);
    return out;
}

inline EquivResult is_invariant(const ChartOps& ops, Variant v, const HorizontalForm& f,
                                const EquivOptions& opt = {}) {
    return equiv_zero_many(flatten_defect(invariance_defect(ops, v, f)),
                           ops.constraints_for(f.copies), opt);
}

/// Group coboundary: adds a fresh first point, transporting the form
/// indices from the old first point back to it through the given splitting,
/// and alternates over omitted points:
///   (delta w)_I(p0..pm) = sum_A prod_u eps^{A_u}_{I_u}(p0, p1) w_A(p1..pm)
///                       + sum_{i=1..m} (-1)^i w_I(p0,.. omit p_i ..,pm).
inline HorizontalForm coboundary(const HorizontalForm& f, const Splitting& s) {
    const int n = f.dim;
    const int m = f.copies;
    HorizontalForm out = HorizontalForm::zeros(n, m + 1, f.vslots, f.cslots, f.degree);

    std::map<VarRef, Expr> shift_all;
    for (int c = 0; c < m; ++c)
        map_block(shift_all, Block::Point, c, block_vars(Block::Point, c + 1, n));

    std::vector<std::map<VarRef, Expr>> shift_from(m + 1);
    for (int i = 1; i <= m; ++i)
        for (int c = 0; c < m; ++c)
            map_block(shift_from[i], Block::Point, c,
                      block_vars(Block::Point, c >= i ? c + 1 : c, n));

    // Transported-and-shifted components, indexed over full tuples A.
    std::vector<Expr> shifted(f.comp.size());
    for (std::size_t i = 0; i < f.comp.size(); ++i) shifted[i] = subst(f.comp[i], shift_all);

    for (std::size_t I = 0; I < out.tuples.size(); ++I) {
        const auto& t = out.tuples[I];
        const int k = f.degree;
        Expr acc = cst(0);
        std::vector<int> A(k, 0);
        while (true) {
            std::vector<int> sortedA = A;
            int sgn = sign_sort(sortedA);
            if (sgn != 0) {
                Expr term = sgn == 1 ? shifted[f.index_of(sortedA)]
                                     : neg(shifted[f.index_of(sortedA)]);
                if (!is_zero(term)) {
                    for (int u = 0; u < k; ++u) term = mul(term, s.eps[A[u]][t[u]]);
                    acc = add(acc, term);
                }
            }
            int u = k - 1;
            while (u >= 0 && ++A[u] == n) A[u--] = 0;
            if (u < 0) break;
        }
        for (int i = 1; i <= m; ++i) {
            Expr term = subst(f.comp[I], shift_from[i]);
            acc = i % 2 == 0 ? add(acc, term) : sub(acc, term);
        }
        out.comp[I] = acc;
    }
    return out;
}

inline HorizontalForm coboundary(const ChartOps& ops, const HorizontalForm& f) {
    return coboundary(f, ops.tilde_split);
}

/// Linearization: differentiates each extra point copy at the diagonal
/// against a fresh vector slot.  An m-copy form becomes a one-point form
/// with m-1 extra vector slots appended after any existing ones.
inline HorizontalForm linearize(const HorizontalForm& f) {
    assert(f.copies >= 2);
    const int n = f.dim;
    const int m = f.copies;
    HorizontalForm out = HorizontalForm::zeros(n, 1, f.vslots + m - 1, f.cslots, f.degree);

    std::map<VarRef, Expr> to_diagonal;
    for (int c = 1; c < m; ++c)
        map_block(to_diagonal, Block::Point, c, block_vars(Block::Point, 0, n));

    for (std::size_t I = 0; I < f.comp.size(); ++I) {
        Expr acc = f.comp[I];
        for (int c = 1; c < m; ++c) {
            Expr lin = cst(0);
            for (int a = 0; a < n; ++a) {
                Expr d = diff(acc, point_var(c, a + 1));
                if (!is_zero(d))
                    lin = add(lin, mul(d, var(fiber_var(f.vslots + c - 1, a + 1))));
            }
            acc = lin;
        }
        out.comp[I] = subst(acc, to_diagonal);
    }
    return out;
}

}  // namespace llg
