#pragma once

#include <string>
#include <vector>

#include "group.hpp"

namespace llg {

enum class Variant { Tilde, Hat };

inline const char* variant_name(Variant v) { return v == Variant::Tilde ? "tilde" : "hat"; }

/// A horizontal splitting in coordinates: an invertible matrix field
/// eps[i][j](x, y) over pairs of chart points (blocks x = copy 0, y = copy 1)
/// satisfying the diagonal, composition and inversion axioms.  The tilde
/// variant transports along graphs of left translations, the hat variant
/// along right translations.  chart_constraints are in block x only.
struct Splitting {
    Variant variant = Variant::Tilde;
    int dim = 0;
    std::vector<std::vector<Expr>> eps;
    std::vector<Expr> chart_constraints;

    std::vector<Expr> constraints_for_copies(int copies) const {
        std::vector<Expr> out;
        for (int c = 0; c < copies; ++c) {
            std::map<VarRef, Expr> with;
            map_block(with, Block::Point, 0, block_vars(Block::Point, c, dim));
            for (const auto& e : chart_constraints) out.push_back(subst(e, with));
        }
        return out;
    }
};

/// eps with the two point blocks replaced by arbitrary component lists.
inline std::vector<std::vector<Expr>> eps_subst(const Splitting& s, const std::vector<Expr>& xargs,
                                                const std::vector<Expr>& yargs) {
    std::map<VarRef, Expr> with;
    map_block(with, Block::Point, 0, xargs);
    map_block(with, Block::Point, 1, yargs);
    std::vector<std::vector<Expr>> out(s.dim, std::vector<Expr>(s.dim));
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) out[i][j] = subst(s.eps[i][j], with);
    return out;
}

/// Derives the splitting of a group chart.  The tilde transport from x to y
/// is the Jacobian at x of the left translation taking x to y, i.e. of
/// z -> m(c, z) with c = m(y, inv x); the hat transport uses the right
/// translation z -> m(z, c) with c = m(inv x, y).
inline Splitting splitting_from_group(const GroupLaw& g, Variant variant) {
    Splitting s;
    s.variant = variant;
    s.dim = g.dim;
    s.chart_constraints = g.constraints;

    auto xv = block_vars(Block::Point, 0, g.dim);
    auto yv = block_vars(Block::Point, 1, g.dim);
    auto zv = block_vars(Block::Point, 2, g.dim);

    std::vector<Expr> body;
    if (variant == Variant::Tilde) {
        auto c = group_mul(g, yv, group_inv(g, xv));
        body = group_mul(g, c, zv);
    } else {
        auto c = group_mul(g, group_inv(g, xv), yv);
        body = group_mul(g, zv, c);
    }

    std::map<VarRef, Expr> z_to_x;
    map_block(z_to_x, Block::Point, 2, xv);

    s.eps.assign(g.dim, std::vector<Expr>(g.dim));
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j)
            s.eps[i][j] = subst(diff(body[i], point_var(2, j + 1)), z_to_x);
    return s;
}

/// Splitting axioms, checked on random in-chart points.
inline std::vector<NamedCheck> verify_splitting_axioms(const Splitting& s,
                                                       const EquivOptions& opt = {}) {
    std::vector<NamedCheck> out;
    const int n = s.dim;
    auto xv = block_vars(Block::Point, 0, n);
    auto yv = block_vars(Block::Point, 1, n);
    auto zv = block_vars(Block::Point, 2, n);

    {
        auto diag = eps_subst(s, xv, xv);
        std::vector<Expr> lhs, rhs;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                lhs.push_back(diag[i][j]);
                rhs.push_back(cst(i == j ? 1 : 0));
            }
        out.push_back({"diagonal: eps(x,x) = id",
                       equiv_random_many(lhs, rhs, s.constraints_for_copies(1), opt)});
    }
    {
        auto e_xy = eps_subst(s, xv, yv);
        auto e_yz = eps_subst(s, yv, zv);
        auto e_xz = eps_subst(s, xv, zv);
        std::vector<Expr> lhs, rhs;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Expr acc = cst(0);
                for (int a = 0; a < n; ++a) acc = acc + e_yz[i][a] * e_xy[a][j];
                lhs.push_back(acc);
                rhs.push_back(e_xz[i][j]);
            }
        out.push_back({"composition: eps(y,z) eps(x,y) = eps(x,z)",
                       equiv_random_many(lhs, rhs, s.constraints_for_copies(3), opt)});
    }
    {
        auto e_xy = eps_subst(s, xv, yv);
        auto e_yx = eps_subst(s, yv, xv);
        std::vector<Expr> lhs, rhs;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Expr acc = cst(0);
                for (int a = 0; a < n; ++a) acc = acc + e_yx[i][a] * e_xy[a][j];
                lhs.push_back(acc);
                rhs.push_back(cst(i == j ? 1 : 0));
            }
        out.push_back({"inversion: eps(y,x) eps(x,y) = id",
                       equiv_random_many(lhs, rhs, s.constraints_for_copies(2), opt)});
    }
    return out;
}

/// Two-point curvature of a splitting,
///   cal_R^a_{sr}(x,y) = d_{x^s} eps^a_r - d_{x^r} eps^a_s
///                     + (d_{y^b} eps^a_r) eps^b_s - (d_{y^b} eps^a_s) eps^b_r,
/// indexed [a][s][r].  Vanishes exactly when the splitting is integrable,
/// in particular for every splitting derived from a group chart.
inline std::vector<std::vector<std::vector<Expr>>> curvature_two_point(const Splitting& s) {
    const int n = s.dim;
    std::vector<std::vector<std::vector<Expr>>> R(
        n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
    for (int a = 0; a < n; ++a)
        for (int ss = 0; ss < n; ++ss)
            for (int r = 0; r < n; ++r) {
                Expr acc = diff(s.eps[a][r], point_var(0, ss + 1)) -
                           diff(s.eps[a][ss], point_var(0, r + 1));
                for (int b = 0; b < n; ++b)
                    acc = acc + diff(s.eps[a][r], point_var(1, b + 1)) * s.eps[b][ss] -
                          diff(s.eps[a][ss], point_var(1, b + 1)) * s.eps[b][r];
                R[a][ss][r] = acc;
            }
    return R;
}

}  // namespace llg
