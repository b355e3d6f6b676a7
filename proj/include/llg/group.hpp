#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "equiv.hpp"
#include "parser.hpp"

namespace llg {

/// A local multiplication in coordinates: m components in point blocks x
/// (copy 0) and y (copy 1), inverse in block x, a rational identity point,
/// and constraint expressions (in block x) that must stay nonzero on the
/// chart.
struct GroupLaw {
    std::string name;
    int dim = 0;
    std::vector<Expr> mult;
    std::vector<Expr> inverse;
    std::vector<Rat> identity;
    std::vector<Expr> constraints;
};

/// Substitutes argument component lists into an expression vector.
inline std::vector<Expr> apply_map(const std::vector<Expr>& body,
                                   const std::vector<std::pair<int, std::vector<Expr>>>& copy_args) {
    std::map<VarRef, Expr> with;
    for (const auto& [copy, args] : copy_args) map_block(with, Block::Point, copy, args);
    std::vector<Expr> out;
    out.reserve(body.size());
    for (const auto& e : body) out.push_back(subst(e, with));
    return out;
}

/// m(a, b) with symbolic arguments.
inline std::vector<Expr> group_mul(const GroupLaw& g, const std::vector<Expr>& a,
                                   const std::vector<Expr>& b) {
    return apply_map(g.mult, {{0, a}, {1, b}});
}

inline std::vector<Expr> group_inv(const GroupLaw& g, const std::vector<Expr>& a) {
    return apply_map(g.inverse, {{0, a}});
}

inline std::vector<Expr> identity_exprs(const GroupLaw& g) { return const_point(g.identity); }

/// Evaluates a point map exactly at a rational point.
inline std::vector<Rat> eval_point(const GroupLaw& g, const std::vector<Expr>& body,
                                   const std::vector<Rat>& at) {
    Assignment a;
    for (int i = 0; i < g.dim; ++i) a[point_var(0, i + 1)] = at[i];
    std::vector<Rat> out;
    out.reserve(body.size());
    for (const auto& e : body) out.push_back(eval_exact(e, a));
    return out;
}

inline std::vector<Rat> mul_points(const GroupLaw& g, const std::vector<Rat>& a,
                                   const std::vector<Rat>& b) {
    Assignment at;
    for (int i = 0; i < g.dim; ++i) {
        at[point_var(0, i + 1)] = a[i];
        at[point_var(1, i + 1)] = b[i];
    }
    std::vector<Rat> out;
    out.reserve(g.mult.size());
    for (const auto& e : g.mult) out.push_back(eval_exact(e, at));
    return out;
}

inline std::vector<Rat> inv_point(const GroupLaw& g, const std::vector<Rat>& a) {
    return eval_point(g, g.inverse, a);
}

/// Instantiates the chart constraints for every point copy in 0..copies-1.
inline std::vector<Expr> constraints_for_copies(const GroupLaw& g, int copies) {
    std::vector<Expr> out;
    for (int c = 0; c < copies; ++c) {
        std::map<VarRef, Expr> with;
        map_block(with, Block::Point, 0, block_vars(Block::Point, c, g.dim));
        for (const auto& e : g.constraints) out.push_back(subst(e, with));
    }
    return out;
}

struct NamedCheck {
    std::string name;
    EquivResult result;
};

/// Local group axioms, checked on random in-chart points: two-sided
/// identity, two-sided inverse, associativity, and identity-in-domain.
inline std::vector<NamedCheck> verify_group_axioms(const GroupLaw& g, const EquivOptions& opt = {}) {
    std::vector<NamedCheck> out;
    auto x = block_vars(Block::Point, 0, g.dim);
    auto y = block_vars(Block::Point, 1, g.dim);
    auto z = block_vars(Block::Point, 2, g.dim);
    auto e = identity_exprs(g);

    auto check_pointwise = [&](const std::string& name, const std::vector<Expr>& lhs,
                               const std::vector<Expr>& rhs, int copies) {
        out.push_back({name, equiv_random_many(lhs, rhs, constraints_for_copies(g, copies), opt)});
    };

    check_pointwise("right identity: m(x, e) = x", group_mul(g, x, e), x, 1);
    check_pointwise("left identity: m(e, y) = y", group_mul(g, e, y),
                    block_vars(Block::Point, 1, g.dim), 2);
    check_pointwise("right inverse: m(x, inv(x)) = e", group_mul(g, x, group_inv(g, x)), e, 1);
    check_pointwise("left inverse: m(inv(x), x) = e", group_mul(g, group_inv(g, x), x), e, 1);
    check_pointwise("associativity: m(m(x,y),z) = m(x,m(y,z))",
                    group_mul(g, group_mul(g, x, y), z), group_mul(g, x, group_mul(g, y, z)), 3);

    NamedCheck id_domain{"identity point satisfies chart constraints", {}};
    Assignment at;
    for (int i = 0; i < g.dim; ++i) at[point_var(0, i + 1)] = g.identity[i];
    for (const auto& c : g.constraints) {
        try {
            bool zero = opt.mode == EvalMode::Exact ? eval_exact(c, at) == 0
                                                    : std::abs(eval_float(c, at)) < 1e-6;
            if (zero) {
                id_domain.result.ok = false;
                id_domain.result.message = "identity violates constraint " + to_string(c);
            }
        } catch (const std::exception& err) {
            id_domain.result.ok = false;
            id_domain.result.message = err.what();
        }
    }
    out.push_back(std::move(id_domain));
    return out;
}

/// One translation of the chart: the left family z -> m(c, z) (graphs of the
/// first pseudogroup) or the right family z -> m(z, c) (the second).
struct TranslationMap {
    enum class Family { Left, Right };
    Family family = Family::Left;
    std::vector<Rat> c;

    std::vector<Expr> body(const GroupLaw& g) const {
        auto zv = block_vars(Block::Point, 0, g.dim);
        auto cc = const_point(c);
        return family == Family::Left ? group_mul(g, cc, zv) : group_mul(g, zv, cc);
    }

    TranslationMap inverse_map(const GroupLaw& g) const { return {family, inv_point(g, c)}; }

    TranslationMap compose(const GroupLaw& g, const TranslationMap& then) const {
        // (then o this): for left translations c' = m(then.c, this.c); for
        // right translations c' = m(this.c, then.c).
        assert(family == then.family);
        return {family, family == Family::Left ? mul_points(g, then.c, c) : mul_points(g, c, then.c)};
    }

    std::vector<Rat> eval(const GroupLaw& g, const std::vector<Rat>& p) const {
        return family == Family::Left ? mul_points(g, c, p) : mul_points(g, p, c);
    }
};

/// The unique left-family transformation sending a to b: z -> m(m(b, inv a), z).
inline TranslationMap translation_left(const GroupLaw& g, const std::vector<Rat>& a,
                                       const std::vector<Rat>& b) {
    return {TranslationMap::Family::Left, mul_points(g, b, inv_point(g, a))};
}

/// The unique right-family transformation sending a to b: z -> m(z, m(inv a, b)).
inline TranslationMap translation_right(const GroupLaw& g, const std::vector<Rat>& a,
                                        const std::vector<Rat>& b) {
    return {TranslationMap::Family::Right, mul_points(g, inv_point(g, a), b)};
}

// ---- builtin group laws ----

inline GroupLaw builtin_abelian(int n) {
    GroupLaw g;
    g.name = "abelian:" + std::to_string(n);
    g.dim = n;
    for (int i = 1; i <= n; ++i) {
        g.mult.push_back(add(var(point_var(0, i)), var(point_var(1, i))));
        g.inverse.push_back(neg(var(point_var(0, i))));
        g.identity.push_back(Rat(0));
    }
    return g;
}

inline GroupLaw builtin_heisenberg3() {
    GroupLaw g;
    g.name = "heisenberg3";
    g.dim = 3;
    auto X = [](int i) { return var(point_var(0, i)); };
    auto Y = [](int i) { return var(point_var(1, i)); };
    g.mult = {X(1) + Y(1), X(2) + Y(2), X(3) + Y(3) + X(1) * Y(2)};
    g.inverse = {neg(X(1)), neg(X(2)), neg(X(3)) + X(1) * X(2)};
    g.identity = {Rat(0), Rat(0), Rat(0)};
    return g;
}

inline GroupLaw builtin_affine2() {
    GroupLaw g;
    g.name = "affine2";
    g.dim = 2;
    auto X = [](int i) { return var(point_var(0, i)); };
    auto Y = [](int i) { return var(point_var(1, i)); };
    g.mult = {X(1) * Y(1), X(1) * Y(2) + X(2)};
    g.inverse = {cst(1) / X(1), neg(X(2)) / X(1)};
    g.identity = {Rat(1), Rat(0)};
    g.constraints = {X(1)};
    return g;
}

inline GroupLaw builtin_uppertriangular3() {
    GroupLaw g;
    g.name = "uppertriangular3";
    g.dim = 3;
    auto X = [](int i) { return var(point_var(0, i)); };
    auto Y = [](int i) { return var(point_var(1, i)); };
    // Invertible upper-triangular 2x2 matrices [[x1, x3], [0, x2]].
    g.mult = {X(1) * Y(1), X(2) * Y(2), X(1) * Y(3) + X(3) * Y(2)};
    g.inverse = {cst(1) / X(1), cst(1) / X(2), neg(X(3)) / (X(1) * X(2))};
    g.identity = {Rat(1), Rat(1), Rat(0)};
    g.constraints = {X(1), X(2)};
    return g;
}

inline std::optional<GroupLaw> builtin_group(const std::string& name) {
    if (name.rfind("abelian:", 0) == 0) {
        int n = std::stoi(name.substr(8));
        if (n < 1 || n > 4) throw ParseError("abelian dimension must be 1..4");
        return builtin_abelian(n);
    }
    if (name == "heisenberg3") return builtin_heisenberg3();
    if (name == "affine2") return builtin_affine2();
    if (name == "uppertriangular3") return builtin_uppertriangular3();
    return std::nullopt;
}

}  // namespace llg
