#pragma once

#include <map>
#include <unordered_map>

#include "expr.hpp"

namespace llg {

namespace detail {

inline Expr diff_rec(const Expr& e, const VarRef& v,
                     std::unordered_map<const Node*, Expr>& memo) {
    auto hit = memo.find(e.get());
    if (hit != memo.end()) return hit->second;
    Expr out;
    switch (e->op) {
        case Op::Const: out = cst(0); break;
        case Op::Var: out = cst(e->var == v ? 1 : 0); break;
        case Op::Add: out = add(diff_rec(e->a, v, memo), diff_rec(e->b, v, memo)); break;
        case Op::Sub: out = sub(diff_rec(e->a, v, memo), diff_rec(e->b, v, memo)); break;
        case Op::Mul:
            out = add(mul(diff_rec(e->a, v, memo), e->b), mul(e->a, diff_rec(e->b, v, memo)));
            break;
        case Op::Div: {
            // (a/b)' = a'/b - a*b'/b^2
            Expr da = diff_rec(e->a, v, memo);
            Expr db = diff_rec(e->b, v, memo);
            out = sub(div(da, e->b), div(mul(e->a, db), pow(e->b, 2)));
            break;
        }
        case Op::Pow:
            out = mul(mul(cst(e->expo), pow(e->a, e->expo - 1)), diff_rec(e->a, v, memo));
            break;
        case Op::Exp: out = mul(func(Op::Exp, e->a), diff_rec(e->a, v, memo)); break;
        case Op::Log: out = div(diff_rec(e->a, v, memo), e->a); break;
        case Op::Sin: out = mul(func(Op::Cos, e->a), diff_rec(e->a, v, memo)); break;
        case Op::Cos: out = neg(mul(func(Op::Sin, e->a), diff_rec(e->a, v, memo))); break;
    }
    memo.emplace(e.get(), out);
    return out;
}

inline Expr subst_rec(const Expr& e, const std::map<VarRef, Expr>& with,
                      std::unordered_map<const Node*, Expr>& memo) {
    auto hit = memo.find(e.get());
    if (hit != memo.end()) return hit->second;
    Expr out;
    switch (e->op) {
        case Op::Const: out = e; break;
        case Op::Var: {
            auto it = with.find(e->var);
            out = it == with.end() ? e : it->second;
            break;
        }
        case Op::Add: out = add(subst_rec(e->a, with, memo), subst_rec(e->b, with, memo)); break;
        case Op::Sub: out = sub(subst_rec(e->a, with, memo), subst_rec(e->b, with, memo)); break;
        case Op::Mul: out = mul(subst_rec(e->a, with, memo), subst_rec(e->b, with, memo)); break;
        case Op::Div: out = div(subst_rec(e->a, with, memo), subst_rec(e->b, with, memo)); break;
        case Op::Pow: out = pow(subst_rec(e->a, with, memo), e->expo); break;
        default: out = func(e->op, subst_rec(e->a, with, memo));
    }
    memo.emplace(e.get(), out);
    return out;
}

}  // namespace detail

inline Expr diff(const Expr& e, const VarRef& v) {
    std::unordered_map<const Node*, Expr> memo;
    return detail::diff_rec(e, v, memo);
}

/// Capture-free simultaneous substitution of whole variables.
inline Expr subst(const Expr& e, const std::map<VarRef, Expr>& with) {
    if (with.empty()) return e;
    std::unordered_map<const Node*, Expr> memo;
    return detail::subst_rec(e, with, memo);
}

/// Substitution map sending one whole block/copy to given component
/// expressions (components[i] replaces component i+1).
inline void map_block(std::map<VarRef, Expr>& out, Block block, int copy,
                      const std::vector<Expr>& components) {
    for (std::size_t i = 0; i < components.size(); ++i) {
        VarRef v{block, static_cast<std::uint8_t>(copy), static_cast<std::uint16_t>(i + 1)};
        out[v] = components[i];
    }
}

inline std::vector<Expr> block_vars(Block block, int copy, int dim) {
    std::vector<Expr> out;
    out.reserve(dim);
    for (int i = 1; i <= dim; ++i)
        out.push_back(var(VarRef{block, static_cast<std::uint8_t>(copy), static_cast<std::uint16_t>(i)}));
    return out;
}

inline std::vector<Expr> const_point(const std::vector<Rat>& values) {
    std::vector<Expr> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(cst(v));
    return out;
}

}  // namespace llg
