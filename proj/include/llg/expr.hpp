#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rational.hpp"

namespace llg {

/// Variable blocks. Point copies are the manifold coordinates of the first,
/// second, ... argument slot (x, y, z, w). Fiber slots are tangent-vector
/// arguments (xi, eta, zeta); CoFiber slots are covector arguments (th, ph).
/// Param is the scalar deformation parameter t.
enum class Block : std::uint8_t { Point, Fiber, CoFiber, Param };

struct VarRef {
    Block block = Block::Point;
    std::uint8_t copy = 0;  // which point copy / fiber slot
    std::uint16_t comp = 1; // 1-based component index

    friend bool operator==(const VarRef& a, const VarRef& b) {
        return a.block == b.block && a.copy == b.copy && a.comp == b.comp;
    }
    friend bool operator<(const VarRef& a, const VarRef& b) {
        if (a.block != b.block) return a.block < b.block;
        if (a.copy != b.copy) return a.copy < b.copy;
        return a.comp < b.comp;
    }
};

inline VarRef point_var(int copy, int comp) {
    return VarRef{Block::Point, static_cast<std::uint8_t>(copy), static_cast<std::uint16_t>(comp)};
}
inline VarRef fiber_var(int slot, int comp) {
    return VarRef{Block::Fiber, static_cast<std::uint8_t>(slot), static_cast<std::uint16_t>(comp)};
}
inline VarRef cofiber_var(int slot, int comp) {
    return VarRef{Block::CoFiber, static_cast<std::uint8_t>(slot), static_cast<std::uint16_t>(comp)};
}
inline VarRef param_var() { return VarRef{Block::Param, 0, 1}; }

/// External variable spelling. Point copies 0..3 are x,y,z,w; fiber slots
/// 0..2 are xi,eta,zeta; cofiber slots 0..1 are th,ph.
inline std::string var_name(const VarRef& v) {
    static const char* kPoint[] = {"x", "y", "z", "w"};
    static const char* kFiber[] = {"xi", "eta", "zeta"};
    static const char* kCoFiber[] = {"th", "ph"};
    switch (v.block) {
        case Block::Point:
            assert(v.copy < 4);
            return std::string(kPoint[v.copy]) + std::to_string(v.comp);
        case Block::Fiber:
            assert(v.copy < 3);
            return std::string(kFiber[v.copy]) + std::to_string(v.comp);
        case Block::CoFiber:
            assert(v.copy < 2);
            return std::string(kCoFiber[v.copy]) + std::to_string(v.comp);
        case Block::Param:
            return "t";
    }
    return "?";
}

enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Pow, Exp, Log, Sin, Cos };

inline bool is_func(Op op) { return op == Op::Exp || op == Op::Log || op == Op::Sin || op == Op::Cos; }

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Immutable expression node. Subtrees are shared; all construction goes
/// through the factory functions below, which apply only local rewrites
/// (0+e, e*1, 0*e, e^0, constant folding) so the tree stays readable.
struct Node {
    Op op;
    Rat value;   // Const
    VarRef var;  // Var
    long expo = 0;  // Pow exponent
    Expr a, b;   // children (a only for Pow and functions)
};

inline Expr cst(Rat v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = std::move(v);
    return n;
}

inline Expr cst(long v) { return cst(Rat(v)); }

inline Expr var(VarRef v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->var = v;
    return n;
}

inline bool is_const(const Expr& e, const Rat* want = nullptr) {
    return e->op == Op::Const && (!want || e->value == *want);
}
inline bool is_zero(const Expr& e) { return e->op == Op::Const && e->value == 0; }
inline bool is_one(const Expr& e) { return e->op == Op::Const && e->value == 1; }

inline Expr make_binary(Op op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return n;
}

inline Expr add(Expr lhs, Expr rhs) {
    if (is_zero(lhs)) return rhs;
    if (is_zero(rhs)) return lhs;
    if (lhs->op == Op::Const && rhs->op == Op::Const) return cst(Rat(lhs->value + rhs->value));
    return make_binary(Op::Add, std::move(lhs), std::move(rhs));
}

inline Expr sub(Expr lhs, Expr rhs) {
    if (is_zero(rhs)) return lhs;
    if (lhs->op == Op::Const && rhs->op == Op::Const) return cst(Rat(lhs->value - rhs->value));
    return make_binary(Op::Sub, std::move(lhs), std::move(rhs));
}

inline Expr mul(Expr lhs, Expr rhs) {
    if (is_zero(lhs) || is_zero(rhs)) return cst(0);
    if (is_one(lhs)) return rhs;
    if (is_one(rhs)) return lhs;
    if (lhs->op == Op::Const && rhs->op == Op::Const) return cst(Rat(lhs->value * rhs->value));
    return make_binary(Op::Mul, std::move(lhs), std::move(rhs));
}

/// Division keeps its node (the denominator carries a nonzero-domain
/// constraint checked at evaluation time); constant denominators fold, and
/// a zero numerator folds because chart constraints are carried separately.
inline Expr div(Expr lhs, Expr rhs) {
    if (is_zero(lhs)) return cst(0);
    if (rhs->op == Op::Const) {
        if (rhs->value == 0) throw DomainError("division by constant zero");
        if (lhs->op == Op::Const) return cst(Rat(lhs->value / rhs->value));
        if (rhs->value == 1) return lhs;
    }
    return make_binary(Op::Div, std::move(lhs), std::move(rhs));
}

inline Expr pow(Expr base, long k) {
    if (k == 0) return cst(1);
    if (k == 1) return base;
    if (base->op == Op::Const) {
        if (base->value == 0 && k < 0) throw DomainError("zero to a negative power");
        Rat r(1);
        Rat b = k > 0 ? base->value : Rat(1 / base->value);
        for (long i = 0; i < (k > 0 ? k : -k); ++i) r *= b;
        return cst(r);
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->expo = k;
    n->a = std::move(base);
    return n;
}

inline Expr func(Op op, Expr arg) {
    assert(is_func(op));
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(arg);
    return n;
}

inline Expr neg(Expr e) { return mul(cst(-1), std::move(e)); }

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }

/// Deep structural equality (same shape, same constants, same variables).
inline bool same_tree(const Expr& x, const Expr& y) {
    if (x.get() == y.get()) return true;
    if (x->op != y->op) return false;
    switch (x->op) {
        case Op::Const: return x->value == y->value;
        case Op::Var: return x->var == y->var;
        case Op::Pow: return x->expo == y->expo && same_tree(x->a, y->a);
        default:
            if (is_func(x->op)) return same_tree(x->a, y->a);
            return same_tree(x->a, y->a) && same_tree(x->b, y->b);
    }
}

inline void collect_vars(const Expr& e, std::set<VarRef>& out) {
    switch (e->op) {
        case Op::Const: return;
        case Op::Var: out.insert(e->var); return;
        case Op::Pow: collect_vars(e->a, out); return;
        default:
            if (is_func(e->op)) { collect_vars(e->a, out); return; }
            collect_vars(e->a, out);
            collect_vars(e->b, out);
    }
}

inline std::set<VarRef> vars_of(const Expr& e) {
    std::set<VarRef> out;
    collect_vars(e, out);
    return out;
}

inline bool has_transcendental(const Expr& e) {
    if (is_func(e->op)) return true;
    switch (e->op) {
        case Op::Const:
        case Op::Var: return false;
        case Op::Pow: return has_transcendental(e->a);
        default: return has_transcendental(e->a) || has_transcendental(e->b);
    }
}

namespace detail {

inline int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Pow: return 3;
        default: return 4;
    }
}

inline const char* func_name(Op op) {
    switch (op) {
        case Op::Exp: return "exp";
        case Op::Log: return "log";
        case Op::Sin: return "sin";
        case Op::Cos: return "cos";
        default: return "?";
    }
}

inline void print_rec(const Expr& e, std::string& out, int parent_prec) {
    int prec = precedence(e->op);
    // A leading '-1*' factor prints as unary minus.
    if (e->op == Op::Mul && e->a->op == Op::Const && e->a->value == -1) {
        bool paren = parent_prec > 2;
        if (paren) out += '(';
        out += '-';
        print_rec(e->b, out, 3);
        if (paren) out += ')';
        return;
    }
    bool paren = prec < parent_prec ||
                 (e->op == Op::Const && e->value < 0 && parent_prec > 1);
    if (paren) out += '(';
    switch (e->op) {
        case Op::Const: out += rat_to_string(e->value); break;
        case Op::Var: out += var_name(e->var); break;
        case Op::Add:
            print_rec(e->a, out, 1);
            out += " + ";
            print_rec(e->b, out, 2);
            break;
        case Op::Sub:
            print_rec(e->a, out, 1);
            out += " - ";
            print_rec(e->b, out, 2);
            break;
        case Op::Mul:
            print_rec(e->a, out, 2);
            out += '*';
            print_rec(e->b, out, 3);
            break;
        case Op::Div:
            print_rec(e->a, out, 2);
            out += '/';
            print_rec(e->b, out, 3);
            break;
        case Op::Pow:
            print_rec(e->a, out, 4);
            out += '^';
            if (e->expo < 0) {
                out += '(';
                out += std::to_string(e->expo);
                out += ')';
            } else {
                out += std::to_string(e->expo);
            }
            break;
        default:
            out += func_name(e->op);
            out += '(';
            print_rec(e->a, out, 0);
            out += ')';
    }
    if (paren) out += ')';
}

}  // namespace detail

/// Renders with the grammar the parser accepts; parse(to_string(e)) rebuilds
/// an equivalent tree.
inline std::string to_string(const Expr& e) {
    std::string out;
    detail::print_rec(e, out, 0);
    return out;
}

inline std::size_t tree_size(const Expr& e) {
    switch (e->op) {
        case Op::Const:
        case Op::Var: return 1;
        case Op::Pow: return 1 + tree_size(e->a);
        default:
            if (is_func(e->op)) return 1 + tree_size(e->a);
            return 1 + tree_size(e->a) + tree_size(e->b);
    }
}

}  // namespace llg
