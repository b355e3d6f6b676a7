#pragma once

#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "eval.hpp"

namespace llg {

struct EquivOptions {
    int trials = 32;
    std::uint64_t seed = 0;
    EvalMode mode = EvalMode::Exact;
    double tol = 1e-9;      // relative tolerance in float mode
    long box = 7;           // sample numerators from [-box*den, box*den]
    long max_den = 16;      // sample denominators from [1, max_den]
};

struct EquivResult {
    bool ok = true;
    int trials_run = 0;
    std::string message;        // set when !ok
    Assignment witness;         // failing assignment when !ok

    explicit operator bool() const { return ok; }
};

namespace detail {

inline Rat sample_rat(std::mt19937_64& rng, const EquivOptions& opt) {
    std::uniform_int_distribution<long> den_dist(1, opt.max_den);
    long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(-opt.box * den, opt.box * den);
    long num = num_dist(rng);
    return rat(num, den);
}

inline std::string witness_string(const Assignment& at) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, val] : at) {
        if (!first) os << ", ";
        first = false;
        os << var_name(v) << " = " << rat_to_string(val);
    }
    return os.str();
}

}  // namespace detail

/// Draws one assignment for `vars` satisfying every constraint expression
/// (nonzero, and in float mode bounded away from zero). Deterministic for a
/// given rng state. Throws EvalError when constraints cannot be met.
inline Assignment sample_point(const std::set<VarRef>& vars, const std::vector<Expr>& constraints,
                               std::mt19937_64& rng, const EquivOptions& opt) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        Assignment at;
        for (const auto& v : vars) at[v] = detail::sample_rat(rng, opt);
        bool good = true;
        for (const auto& c : constraints) {
            try {
                if (opt.mode == EvalMode::Exact) {
                    if (eval_exact(c, at) == 0) { good = false; break; }
                } else {
                    if (std::abs(eval_float(c, at)) < 1e-6) { good = false; break; }
                }
            } catch (const DomainError&) {
                good = false;
                break;
            }
        }
        if (good) return at;
    }
    throw EvalError("could not satisfy domain constraints while sampling");
}

/// Probabilistic equality of two expressions on random rational points.
/// Exact mode compares exactly; float mode uses a relative tolerance.
/// Points that violate a domain constraint of either side are redrawn, so
/// rational functions are compared on their common domain.
inline EquivResult equiv_random(const Expr& lhs, const Expr& rhs,
                                const std::vector<Expr>& constraints = {},
                                const EquivOptions& opt = {}) {
    std::set<VarRef> vars = vars_of(lhs);
    collect_vars(rhs, vars);
    for (const auto& c : constraints) collect_vars(c, vars);

    std::mt19937_64 rng(opt.seed);
    EquivResult res;
    int produced = 0;
    int rejected = 0;
    while (produced < opt.trials) {
        Assignment at;
        try {
            at = sample_point(vars, constraints, rng, opt);
        } catch (const EvalError& err) {
            res.ok = false;
            res.message = err.what();
            return res;
        }
        try {
            if (opt.mode == EvalMode::Exact) {
                Rat a = eval_exact(lhs, at);
                Rat b = eval_exact(rhs, at);
                if (a != b) {
                    res.ok = false;
                    res.witness = at;
                    res.message = "exact mismatch: " + rat_to_string(a) + " vs " + rat_to_string(b) +
                                  " at " + detail::witness_string(at);
                    return res;
                }
            } else {
                double a = eval_float(lhs, at);
                double b = eval_float(rhs, at);
                double scale = std::max({1.0, std::abs(a), std::abs(b)});
                if (std::abs(a - b) > opt.tol * scale) {
                    res.ok = false;
                    res.witness = at;
                    res.message = "float mismatch: " + std::to_string(a) + " vs " + std::to_string(b) +
                                  " at " + detail::witness_string(at);
                    return res;
                }
            }
        } catch (const DomainError&) {
            // Point outside the common domain (a denominator introduced by the
            // expressions themselves vanished): redraw.
            if (++rejected > 64 * opt.trials) {
                res.ok = false;
                res.message = "could not find enough in-domain sample points";
                return res;
            }
            continue;
        }
        ++produced;
        ++res.trials_run;
    }
    return res;
}

inline EquivResult equiv_zero(const Expr& e, const std::vector<Expr>& constraints = {},
                              const EquivOptions& opt = {}) {
    return equiv_random(e, cst(0), constraints, opt);
}

/// Componentwise random equality for whole families (all components of a
/// form, say). One sample point per trial covers every pair, and the
/// evaluation memo is shared across components so common subtrees are
/// evaluated once.
inline EquivResult equiv_random_many(const std::vector<Expr>& lhs, const std::vector<Expr>& rhs,
                                     const std::vector<Expr>& constraints = {},
                                     const EquivOptions& opt = {}) {
    if (lhs.size() != rhs.size()) {
        EquivResult res;
        res.ok = false;
        res.message = "component count mismatch";
        return res;
    }
    std::set<VarRef> vars;
    for (const auto& e : lhs) collect_vars(e, vars);
    for (const auto& e : rhs) collect_vars(e, vars);
    for (const auto& c : constraints) collect_vars(c, vars);

    std::mt19937_64 rng(opt.seed);
    EquivResult res;
    int produced = 0;
    int rejected = 0;
    while (produced < opt.trials) {
        Assignment at;
        try {
            at = sample_point(vars, constraints, rng, opt);
        } catch (const EvalError& err) {
            res.ok = false;
            res.message = err.what();
            return res;
        }
        try {
            if (opt.mode == EvalMode::Exact) {
                std::unordered_map<const Node*, Rat> memo;
                for (std::size_t i = 0; i < lhs.size(); ++i) {
                    Rat a = detail::eval_exact_rec(lhs[i], at, memo);
                    Rat b = detail::eval_exact_rec(rhs[i], at, memo);
                    if (a != b) {
                        res.ok = false;
                        res.witness = at;
                        res.message = "component " + std::to_string(i) + " exact mismatch: " +
                                      rat_to_string(a) + " vs " + rat_to_string(b) + " at " +
                                      detail::witness_string(at);
                        return res;
                    }
                }
            } else {
                std::unordered_map<const Node*, double> memo;
                for (std::size_t i = 0; i < lhs.size(); ++i) {
                    double a = detail::eval_float_rec(lhs[i], at, memo);
                    double b = detail::eval_float_rec(rhs[i], at, memo);
                    double scale = std::max({1.0, std::abs(a), std::abs(b)});
                    if (std::abs(a - b) > opt.tol * scale) {
                        res.ok = false;
                        res.witness = at;
                        res.message = "component " + std::to_string(i) + " float mismatch: " +
                                      std::to_string(a) + " vs " + std::to_string(b) + " at " +
                                      detail::witness_string(at);
                        return res;
                    }
                }
            }
        } catch (const DomainError&) {
            if (++rejected > 64 * opt.trials) {
                res.ok = false;
                res.message = "could not find enough in-domain sample points";
                return res;
            }
            continue;
        }
        ++produced;
        ++res.trials_run;
    }
    return res;
}

inline EquivResult equiv_zero_many(const std::vector<Expr>& es, const std::vector<Expr>& constraints = {},
                                   const EquivOptions& opt = {}) {
    std::vector<Expr> zeros(es.size(), cst(0));
    return equiv_random_many(es, zeros, constraints, opt);
}

}  // namespace llg
