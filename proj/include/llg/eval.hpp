#pragma once

#include <cmath>
#include <map>
#include <unordered_map>

#include "expr.hpp"

namespace llg {

/// A full variable assignment for one evaluation.
using Assignment = std::map<VarRef, Rat>;

enum class EvalMode { Exact, Float };

namespace detail {

inline Rat eval_exact_rec(const Expr& e, const Assignment& at,
                          std::unordered_map<const Node*, Rat>& memo) {
    auto hit = memo.find(e.get());
    if (hit != memo.end()) return hit->second;
    Rat out;
    switch (e->op) {
        case Op::Const: out = e->value; break;
        case Op::Var: {
            auto it = at.find(e->var);
            if (it == at.end()) throw EvalError("unassigned variable " + var_name(e->var));
            out = it->second;
            break;
        }
        case Op::Add: out = eval_exact_rec(e->a, at, memo) + eval_exact_rec(e->b, at, memo); break;
        case Op::Sub: out = eval_exact_rec(e->a, at, memo) - eval_exact_rec(e->b, at, memo); break;
        case Op::Mul: out = eval_exact_rec(e->a, at, memo) * eval_exact_rec(e->b, at, memo); break;
        case Op::Div: {
            Rat den = eval_exact_rec(e->b, at, memo);
            if (den == 0) throw DomainError("division by zero at " + to_string(e->b));
            out = eval_exact_rec(e->a, at, memo) / den;
            break;
        }
        case Op::Pow: {
            Rat base = eval_exact_rec(e->a, at, memo);
            long k = e->expo;
            if (base == 0 && k < 0) throw DomainError("zero base with negative exponent");
            Rat b = k > 0 ? base : Rat(1 / base);
            Rat r(1);
            for (long i = 0; i < (k > 0 ? k : -k); ++i) r *= b;
            out = r;
            break;
        }
        default:
            throw EvalError("transcendental function in exact mode: " + to_string(e));
    }
    memo.emplace(e.get(), out);
    return out;
}

inline double eval_float_rec(const Expr& e, const Assignment& at,
                             std::unordered_map<const Node*, double>& memo) {
    auto hit = memo.find(e.get());
    if (hit != memo.end()) return hit->second;
    double out = 0;
    switch (e->op) {
        case Op::Const: out = rat_to_double(e->value); break;
        case Op::Var: {
            auto it = at.find(e->var);
            if (it == at.end()) throw EvalError("unassigned variable " + var_name(e->var));
            out = rat_to_double(it->second);
            break;
        }
        case Op::Add: out = eval_float_rec(e->a, at, memo) + eval_float_rec(e->b, at, memo); break;
        case Op::Sub: out = eval_float_rec(e->a, at, memo) - eval_float_rec(e->b, at, memo); break;
        case Op::Mul: out = eval_float_rec(e->a, at, memo) * eval_float_rec(e->b, at, memo); break;
        case Op::Div: {
            double den = eval_float_rec(e->b, at, memo);
            if (den == 0.0) throw DomainError("division by zero at " + to_string(e->b));
            out = eval_float_rec(e->a, at, memo) / den;
            break;
        }
        case Op::Pow: {
            double base = eval_float_rec(e->a, at, memo);
            if (base == 0.0 && e->expo < 0) throw DomainError("zero base with negative exponent");
            out = std::pow(base, static_cast<double>(e->expo));
            break;
        }
        case Op::Exp: out = std::exp(eval_float_rec(e->a, at, memo)); break;
        case Op::Log: {
            double arg = eval_float_rec(e->a, at, memo);
            if (arg <= 0.0) throw DomainError("log of nonpositive value");
            out = std::log(arg);
            break;
        }
        case Op::Sin: out = std::sin(eval_float_rec(e->a, at, memo)); break;
        case Op::Cos: out = std::cos(eval_float_rec(e->a, at, memo)); break;
    }
    if (!std::isfinite(out)) throw EvalError("non-finite value at " + to_string(e));
    memo.emplace(e.get(), out);
    return out;
}

}  // namespace detail

inline Rat eval_exact(const Expr& e, const Assignment& at) {
    std::unordered_map<const Node*, Rat> memo;
    return detail::eval_exact_rec(e, at, memo);
}

inline double eval_float(const Expr& e, const Assignment& at) {
    std::unordered_map<const Node*, double> memo;
    return detail::eval_float_rec(e, at, memo);
}

}  // namespace llg
