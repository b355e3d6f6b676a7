#pragma once

#include "ce.hpp"
#include "invariant.hpp"

namespace llg {

/// Basis bookkeeping for seed forms of one slot signature.  A basis element
/// is a pair (index tuple, value monomial); the column index is
/// tuple_index * dim_v + value_index with the value index fastest.  A value
/// index encodes one variable choice per slot, covector slots first, last
/// slot fastest, matching the flat value indexing of the algebra modules.
struct SeedBasis {
    int dim = 0;
    int vslots = 0;
    int cslots = 0;
    int degree = 0;
    std::vector<std::vector<int>> tuples;
    std::size_t dimv = 1;
    std::size_t cols = 0;

    SeedBasis(int dim, int vslots, int cslots, int degree)
        : dim(dim), vslots(vslots), cslots(cslots), degree(degree), tuples(k_tuples(dim, degree)) {
        dimv = pow_size(dim, vslots + cslots);
        cols = tuples.size() * dimv;
    }

    SeedBasis(int dim, const CoefficientModule& mod, int degree)
        : SeedBasis(dim, mod.vector_slots(), mod.cofiber_slots(), degree) {}

    /// Per-slot variable indices of a value monomial, covector slots first.
    std::vector<int> value_digits(std::size_t value) const {
        std::vector<int> d(static_cast<std::size_t>(vslots + cslots), 0);
        for (std::size_t u = d.size(); u-- > 0;) {
            d[u] = static_cast<int>(value % static_cast<std::size_t>(dim));
            value /= static_cast<std::size_t>(dim);
        }
        return d;
    }

    Expr value_monomial(std::size_t value) const {
        auto dg = value_digits(value);
        Expr m = cst(1);
        for (int u = 0; u < cslots; ++u) m = mul(m, var(cofiber_var(u, dg[u] + 1)));
        for (int s = 0; s < vslots; ++s) m = mul(m, var(fiber_var(s, dg[cslots + s] + 1)));
        return m;
    }

    HorizontalForm seed(std::size_t col) const {
        HorizontalForm f = HorizontalForm::zeros(dim, 1, vslots, cslots, degree);
        f.comp[col / dimv] = value_monomial(col % dimv);
        return f;
    }

    /// Coefficient of one value monomial in an expression that depends on
    /// slot variables only: differentiate once per slot, then drop whatever
    /// slot dependence remains.
    Rat coefficient(const Expr& comp, std::size_t value) const {
        auto dg = value_digits(value);
        Expr e = comp;
        for (int u = 0; u < cslots; ++u) e = diff(e, cofiber_var(u, dg[u] + 1));
        for (int s = 0; s < vslots; ++s) e = diff(e, fiber_var(s, dg[cslots + s] + 1));
        std::map<VarRef, Expr> zero;
        for (int u = 0; u < cslots; ++u)
            for (int i = 1; i <= dim; ++i) zero[cofiber_var(u, i)] = cst(0);
        for (int s = 0; s < vslots; ++s)
            for (int i = 1; i <= dim; ++i) zero[fiber_var(s, i)] = cst(0);
        return eval_exact(subst(e, zero), {});
    }
};

/// Value of a one-point form at base, written out in the given basis.
inline std::vector<Rat> localize_form(const HorizontalForm& f, const std::vector<Rat>& base,
                                      const SeedBasis& rows) {
    assert(f.copies == 1 && f.degree == rows.degree);
    HorizontalForm pinned = restrict_to_base(f, base);
    std::vector<Rat> out(rows.cols, Rat(0));
    for (std::size_t T = 0; T < rows.tuples.size(); ++T)
        for (std::size_t v = 0; v < rows.dimv; ++v)
            out[T * rows.dimv + v] = rows.coefficient(pinned.comp[T], v);
    return out;
}

/// The invariant complex of one family in matrix form: degree k columns are
/// seed basis elements, the map takes a seed to its invariant extension,
/// applies the hat differential and reads the result back off at base.
inline Complex localized_complex(const ChartOps& ops, const CoefficientModule& mod,
                                 Variant ext_variant, const std::vector<Rat>& base) {
    const int n = ops.group.dim;
    Complex cx;
    for (int k = 0; k <= n; ++k) cx.space_dims.push_back(SeedBasis(n, mod, k).cols);
    for (int k = 0; k < n; ++k) {
        SeedBasis cb(n, mod, k);
        SeedBasis rb(n, mod, k + 1);
        QMatrix B(rb.cols, cb.cols);
        for (std::size_t col = 0; col < cb.cols; ++col) {
            HorizontalForm ext = invariant_extension(ops.split(ext_variant), base, cb.seed(col));
            HorizontalForm d = horizontal_differential(ops, Variant::Hat, ext);
            auto v = localize_form(d, base, rb);
            for (std::size_t row = 0; row < rb.cols; ++row) B.at(row, col) = v[row];
        }
        cx.maps.push_back(std::move(B));
    }
    return cx;
}

/// Left-family invariance operator on right-family extensions, localized:
/// one block of rows per chart direction.  Its kernel picks out the seeds
/// whose extensions are invariant under both families.
inline QMatrix localized_invariance(const ChartOps& ops, const CoefficientModule& mod,
                                    const std::vector<Rat>& base, int k) {
    const int n = ops.group.dim;
    SeedBasis sb(n, mod, k);
    QMatrix B(static_cast<std::size_t>(n) * sb.cols, sb.cols);
    for (std::size_t col = 0; col < sb.cols; ++col) {
        HorizontalForm ext = invariant_extension(ops.hat_split, base, sb.seed(col));
        auto defect = invariance_defect(ops, Variant::Tilde, ext);
        for (int r = 0; r < n; ++r) {
            auto v = localize_form(defect[r], base, sb);
            for (std::size_t row = 0; row < sb.cols; ++row)
                B.at(static_cast<std::size_t>(r) * sb.cols + row, col) = v[row];
        }
    }
    return B;
}

/// Algebra-side counterpart: stacked equivariance operators, one block per
/// generator e_i, acting on k-cochains with values in the module:
///   (Theta_i w)(T) = rho(e_i) w(T) - sum_u w(.., [e_i, e_{T_u}], ..).
inline QMatrix algebra_invariance(const StructureConstants& sc, const CoefficientModule& mod,
                                  int k) {
    const int n = sc.dim;
    auto rho = module_actions(sc, mod);
    auto tuples = k_tuples(n, k);
    auto col_of = tuple_index_map(tuples);
    const std::size_t dv = mod.dim_v(n);
    const std::size_t block = tuples.size() * dv;
    QMatrix B(static_cast<std::size_t>(n) * block, block);
    for (int i = 0; i < n; ++i) {
        const std::size_t off = static_cast<std::size_t>(i) * block;
        for (std::size_t R = 0; R < tuples.size(); ++R) {
            const auto& T = tuples[R];
            for (std::size_t w = 0; w < dv; ++w)
                for (std::size_t v = 0; v < dv; ++v)
                    if (rho[i].at(w, v) != 0) B.at(off + R * dv + w, R * dv + v) += rho[i].at(w, v);
            for (std::size_t u = 0; u < T.size(); ++u)
                for (int a = 0; a < n; ++a) {
                    const Rat& cv = sc.c[a][i][T[u]];
                    if (cv == 0) continue;
                    std::vector<int> swapped = T;
                    swapped[u] = a;
                    int sgn = sign_sort(swapped);
                    if (sgn == 0) continue;
                    const std::size_t cJ = col_of.at(swapped);
                    for (std::size_t v = 0; v < dv; ++v)
                        B.at(off + R * dv + v, cJ * dv + v) -= sgn * cv;
                }
        }
    }
    return B;
}

/// Kernel basis as a matrix whose columns are the basis vectors.
inline QMatrix kernel_matrix(const QMatrix& m) {
    auto basis = m.kernel_basis();
    QMatrix K(m.cols(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) K.at(i, j) = basis[j][i];
    return K;
}

/// Solves K R = B column by column; throws if some column of B is outside
/// the column space of K.
inline QMatrix solve_in_basis(const QMatrix& K, const QMatrix& B) {
    assert(K.rows() == B.rows());
    QMatrix aug(K.rows(), K.cols() + B.cols());
    for (std::size_t i = 0; i < K.rows(); ++i) {
        for (std::size_t j = 0; j < K.cols(); ++j) aug.at(i, j) = K.at(i, j);
        for (std::size_t j = 0; j < B.cols(); ++j) aug.at(i, K.cols() + j) = B.at(i, j);
    }
    auto pivots = aug.rref();
    QMatrix R(K.cols(), B.cols());
    for (std::size_t p = 0; p < pivots.size(); ++p) {
        if (pivots[p] >= K.cols())
            throw EvalError("restriction does not stay inside the subspace");
        for (std::size_t j = 0; j < B.cols(); ++j) R.at(pivots[p], j) = aug.at(p, K.cols() + j);
    }
    return R;
}

/// Restriction of a complex to compatible subspaces: kernels[k] holds the
/// inclusion of the degree-k subspace as columns.
inline Complex restricted_complex(const std::vector<QMatrix>& kernels,
                                  const std::vector<QMatrix>& maps) {
    assert(kernels.size() == maps.size() + 1);
    Complex cx;
    for (const auto& K : kernels) cx.space_dims.push_back(K.cols());
    for (std::size_t k = 0; k < maps.size(); ++k)
        cx.maps.push_back(solve_in_basis(kernels[k + 1], maps[k].mul(kernels[k])));
    return cx;
}

/// Structure constants of the chart at base, read off the left-family frame.
inline StructureConstants algebra_of(const ChartOps& ops, const std::vector<Rat>& base) {
    StructureConstants sc = StructureConstants::zeros(ops.group.name, ops.group.dim);
    sc.c = structure_constants(ops.tilde_split, base);
    return sc;
}

/// The complex of forms invariant under both families, in two matrix
/// routes: the geometric one restricts the localized right-family complex
/// to the kernel of the left-family invariance operator; the algebra one
/// restricts the coefficient complex to its equivariant part.
inline Complex biinvariant_complex_geometric(const ChartOps& ops, const CoefficientModule& mod,
                                             const std::vector<Rat>& base) {
    const int n = ops.group.dim;
    Complex full = localized_complex(ops, mod, Variant::Hat, base);
    std::vector<QMatrix> kernels;
    for (int k = 0; k <= n; ++k) kernels.push_back(kernel_matrix(localized_invariance(ops, mod, base, k)));
    return restricted_complex(kernels, full.maps);
}

inline Complex biinvariant_complex_algebra(const StructureConstants& sc,
                                           const CoefficientModule& mod) {
    Complex full = algebra_complex(sc, mod);
    std::vector<QMatrix> kernels;
    for (int k = 0; k <= sc.dim; ++k) kernels.push_back(kernel_matrix(algebra_invariance(sc, mod, k)));
    return restricted_complex(kernels, full.maps);
}

}  // namespace llg
