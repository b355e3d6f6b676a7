#pragma once

#include "operators.hpp"

namespace llg {

namespace detail {

/// Slot substitution transporting every slot argument from x to base:
/// vector slots through eps(x, base), covector slots through eps(base, x).
inline std::map<VarRef, Expr> slot_transport(const Splitting& s, const std::vector<Rat>& base,
                                             int vslots, int cslots) {
    const int n = s.dim;
    auto xv = block_vars(Block::Point, 0, n);
    auto E = eps_subst(s, xv, const_point(base));
    auto E2 = eps_subst(s, const_point(base), xv);
    std::map<VarRef, Expr> with;
    for (int sl = 0; sl < vslots; ++sl)
        for (int b = 0; b < n; ++b) {
            Expr acc = cst(0);
            for (int a = 0; a < n; ++a) acc = add(acc, mul(E[b][a], var(fiber_var(sl, a + 1))));
            with[fiber_var(sl, b + 1)] = acc;
        }
    for (int sl = 0; sl < cslots; ++sl)
        for (int b = 0; b < n; ++b) {
            Expr acc = cst(0);
            for (int a = 0; a < n; ++a) acc = add(acc, mul(E2[a][b], var(cofiber_var(sl, a + 1))));
            with[cofiber_var(sl, b + 1)] = acc;
        }
    return with;
}

/// Contracts the transported seed against the index transport eps(x, base):
///   out_I = sum_A prod_u E[A_u][I_u] * seed_A.
inline HorizontalForm contract_indices(const Splitting& s, const std::vector<Rat>& base,
                                       const HorizontalForm& shape, const std::vector<Expr>& seedc,
                                       const HorizontalForm& seed_lookup) {
    const int n = s.dim;
    const int k = shape.degree;
    auto E = eps_subst(s, block_vars(Block::Point, 0, n), const_point(base));
    HorizontalForm out = shape;
    for (std::size_t I = 0; I < out.tuples.size(); ++I) {
        const auto& t = out.tuples[I];
        Expr acc = cst(0);
        std::vector<int> A(k, 0);
        while (true) {
            std::vector<int> sortedA = A;
            int sgn = sign_sort(sortedA);
            if (sgn != 0) {
                const Expr& c = seedc[seed_lookup.index_of(sortedA)];
                if (!is_zero(c)) {
                    Expr term = sgn == 1 ? c : neg(c);
                    for (int u = 0; u < k; ++u) term = mul(term, E[A[u]][t[u]]);
                    acc = add(acc, term);
                }
            }
            int u = k - 1;
            while (u >= 0 && ++A[u] == n) A[u--] = 0;
            if (u < 0) break;
        }
        out.comp[I] = acc;
    }
    return out;
}

}  // namespace detail

/// The unique form invariant under the splitting's family of translations
/// with the given value at base.  The seed is a one-point form whose
/// components depend only on slot variables; the result transports indices
/// and slots from x back to base and evaluates the seed there.
inline HorizontalForm invariant_extension(const Splitting& s, const std::vector<Rat>& base,
                                          const HorizontalForm& seed) {
    assert(seed.copies == 1);
    auto with = detail::slot_transport(s, base, seed.vslots, seed.cslots);
    std::vector<Expr> transported(seed.comp.size());
    for (std::size_t i = 0; i < seed.comp.size(); ++i) transported[i] = subst(seed.comp[i], with);
    HorizontalForm shape =
        HorizontalForm::zeros(s.dim, 1, seed.vslots, seed.cslots, seed.degree);
    return detail::contract_indices(s, base, shape, transported, seed);
}

/// Multi-point version: the seed is an m-copy form whose components depend
/// on the extra copies only (blocks 1..m-1) plus slot variables; the first
/// point is pinned to base.  Each extra copy argument q is pulled back
/// through the family transformation taking x to base: for the left family
/// q -> m(m(base, inv x), q), for the right family q -> m(q, m(inv x, base)).
inline HorizontalForm invariant_extension_multi(const GroupLaw& g, const Splitting& s,
                                                const std::vector<Rat>& base,
                                                const HorizontalForm& seed) {
    assert(seed.copies >= 2);
    const int n = g.dim;
    auto xv = block_vars(Block::Point, 0, n);
    auto b = const_point(base);

    std::map<VarRef, Expr> with = detail::slot_transport(s, base, seed.vslots, seed.cslots);
    for (int c = 1; c < seed.copies; ++c) {
        auto qc = block_vars(Block::Point, c, n);
        std::vector<Expr> pulled =
            s.variant == Variant::Tilde
                ? group_mul(g, group_mul(g, b, group_inv(g, xv)), qc)
                : group_mul(g, qc, group_mul(g, group_inv(g, xv), b));
        map_block(with, Block::Point, c, pulled);
    }

    std::vector<Expr> transported(seed.comp.size());
    for (std::size_t i = 0; i < seed.comp.size(); ++i) transported[i] = subst(seed.comp[i], with);
    HorizontalForm shape =
        HorizontalForm::zeros(n, seed.copies, seed.vslots, seed.cslots, seed.degree);
    return detail::contract_indices(s, base, shape, transported, seed);
}

/// Pins the first point of a form to base.
inline HorizontalForm restrict_to_base(const HorizontalForm& f, const std::vector<Rat>& base) {
    std::map<VarRef, Expr> with;
    map_block(with, Block::Point, 0, const_point(base));
    HorizontalForm out = f;
    for (auto& c : out.comp) c = subst(c, with);
    return out;
}

}  // namespace llg
