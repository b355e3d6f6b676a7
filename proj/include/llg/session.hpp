#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "invariant.hpp"
#include "io.hpp"
#include "localize.hpp"
#include "operators.hpp"
#include "report.hpp"
#include "tensor.hpp"

namespace llg {

/// A problem with flags or input files, as opposed to a failed check.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SessionConfig {
    std::string command;
    std::string input_path;
    std::string builtin_name;
    std::string what;
    std::string complex_name = "ilhc";
    std::string coefficients;
    int max_degree = -1;
    std::string apply;
    std::string form_path;
    std::string suite = "all";
    unsigned long long seed = 0;
    int trials = 32;
    bool float_mode = false;
    double tol = 1e-9;
    std::string out_path;
    std::string format = "json";
    bool timings = false;
    int threads = 1;
};

namespace session {

struct Check {
    std::string name;
    std::string identity;
    std::function<EquivResult(const EquivOptions&)> run;
};

inline EquivResult all_of(std::vector<NamedCheck> cs) {
    for (auto& c : cs)
        if (!c.result.ok) {
            c.result.message = c.name + ": " + c.result.message;
            return std::move(c.result);
        }
    EquivResult r;
    r.ok = true;
    return r;
}

inline void append(std::vector<Expr>& out, const std::vector<Expr>& es) {
    out.insert(out.end(), es.begin(), es.end());
}

inline std::vector<Expr> flatten_coeffs(const Coeffs& c) {
    std::vector<Expr> out;
    for (const auto& a : c)
        for (const auto& b : a) append(out, b);
    return out;
}

/// Runs every check with a name-derived seed and collects sorted records.
/// With several threads the checks run concurrently; expression trees are
/// immutable and evaluation state is per call, so sharing them is safe.
inline std::vector<CheckRecord> run_checks(const SessionConfig& cfg,
                                           const std::vector<Check>& checks) {
    EquivOptions base;
    base.trials = cfg.trials;
    base.mode = cfg.float_mode ? EvalMode::Float : EvalMode::Exact;
    base.tol = cfg.tol;
    auto run_one = [&base, &cfg](const Check& c) {
        CheckRecord rec;
        rec.name = c.name;
        rec.identity = c.identity;
        EquivOptions opt = base;
        opt.seed = derived_seed(cfg.seed, c.name);
        auto t0 = std::chrono::steady_clock::now();
        try {
            EquivResult r = c.run(opt);
            rec.ok = r.ok;
            rec.witness = r.message;
            std::string w = detail::witness_string(r.witness);
            if (!w.empty()) rec.witness += (rec.witness.empty() ? "at " : " at ") + w;
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.witness = std::string("error: ") + e.what();
        }
        rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
        return rec;
    };
    std::vector<CheckRecord> out(checks.size());
    const int threads = std::max(1, cfg.threads);
    if (threads == 1 || checks.size() < 2) {
        for (std::size_t i = 0; i < checks.size(); ++i) out[i] = run_one(checks[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> tasks;
        for (int t = 0; t < threads; ++t)
            tasks.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < checks.size(); i = next++)
                    out[i] = run_one(checks[i]);
            }));
        for (auto& t : tasks) t.get();
    }
    std::sort(out.begin(), out.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    return out;
}

/// Wraps a raw splitting so the tilde-side operators can run on it.  The
/// stand-in group member only carries dim and chart constraints; nothing
/// touching the hat side may be called through this.
inline ChartOps tilde_only_ops(const Splitting& s) {
    ChartOps ops;
    ops.group.name = "splitting-only";
    ops.group.dim = s.dim;
    ops.group.constraints = s.chart_constraints;
    ops.tilde_split = s;
    ops.hat_split = s;
    ops.conn = connection_pair(s);
    return ops;
}

// ---- verification suites ----

inline std::vector<Check> suite_eq2(const ChartOps& ops) {
    std::vector<Check> cs;
    cs.push_back({"eq2/group-axioms", "group law axioms",
                  [&ops](const EquivOptions& o) { return all_of(verify_group_axioms(ops.group, o)); }});
    for (Variant v : {Variant::Tilde, Variant::Hat}) {
        std::string tag = v == Variant::Tilde ? "tilde" : "hat";
        cs.push_back({"eq2/splitting-axioms-" + tag,
                      "splitting diagonal, composition and inversion axioms",
                      [&ops, v](const EquivOptions& o) {
                          return all_of(verify_splitting_axioms(ops.split(v), o));
                      }});
        cs.push_back({"eq2/torsion-parallel-" + tag, "torsion parallel for its own connection",
                      [&ops, v](const EquivOptions& o) {
                          auto nt = covariant_derivative(tensor_from_coeffs(torsion(ops.gamma(v))),
                                                         ops.gamma(v));
                          return equiv_zero_many(nt.comp, ops.constraints_for(1), o);
                      }});
        cs.push_back({"eq2/curvature-two-point-" + tag, "two-point integrability tensor vanishes",
                      [&ops, v](const EquivOptions& o) {
                          return equiv_zero_many(flatten_coeffs(curvature_two_point(ops.split(v))),
                                                 ops.constraints_for(2), o);
                      }});
        cs.push_back({"eq2/curvature-one-point-" + tag, "one-point curvature tensor vanishes",
                      [&ops, v](const EquivOptions& o) {
                          std::vector<Expr> all;
                          for (const auto& c : curvature_one_point(ops.gamma(v)))
                              append(all, flatten_coeffs(c));
                          return equiv_zero_many(all, ops.constraints_for(1), o);
                      }});
    }
    cs.push_back({"eq2/index-swap", "connection index swap between the splittings",
                  [&ops](const EquivOptions& o) {
                      auto from_hat = connection_pair(ops.hat_split);
                      std::vector<Expr> lhs = flatten_coeffs(ops.conn.tilde);
                      append(lhs, flatten_coeffs(ops.conn.hat));
                      std::vector<Expr> rhs = flatten_coeffs(from_hat.tilde);
                      append(rhs, flatten_coeffs(from_hat.hat));
                      return equiv_random_many(lhs, rhs, ops.constraints_for(1), o);
                  }});
    cs.push_back({"eq2/torsion-opposite", "the two torsions are opposite",
                  [&ops](const EquivOptions& o) {
                      auto tt = flatten_coeffs(torsion(ops.conn.tilde));
                      auto th = flatten_coeffs(torsion(ops.conn.hat));
                      std::vector<Expr> sums;
                      for (std::size_t i = 0; i < tt.size(); ++i) sums.push_back(add(tt[i], th[i]));
                      return equiv_zero_many(sums, ops.constraints_for(1), o);
                  }});
    return cs;
}

/// Tilde-side subset for raw splitting inputs.
inline std::vector<Check> suite_eq2_splitting(const ChartOps& ops) {
    std::vector<Check> cs;
    cs.push_back({"eq2/splitting-axioms-tilde",
                  "splitting diagonal, composition and inversion axioms",
                  [&ops](const EquivOptions& o) {
                      return all_of(verify_splitting_axioms(ops.tilde_split, o));
                  }});
    cs.push_back({"eq2/torsion-parallel-tilde", "torsion parallel for its own connection",
                  [&ops](const EquivOptions& o) {
                      auto nt = covariant_derivative(tensor_from_coeffs(torsion(ops.conn.tilde)),
                                                     ops.conn.tilde);
                      return equiv_zero_many(nt.comp, ops.constraints_for(1), o);
                  }});
    cs.push_back({"eq2/curvature-two-point-tilde", "two-point integrability tensor vanishes",
                  [&ops](const EquivOptions& o) {
                      return equiv_zero_many(flatten_coeffs(curvature_two_point(ops.tilde_split)),
                                             ops.constraints_for(2), o);
                  }});
    cs.push_back({"eq2/curvature-one-point-tilde", "one-point curvature tensor vanishes",
                  [&ops](const EquivOptions& o) {
                      std::vector<Expr> all;
                      for (const auto& c : curvature_one_point(ops.conn.tilde))
                          append(all, flatten_coeffs(c));
                      return equiv_zero_many(all, ops.constraints_for(1), o);
                  }});
    return cs;
}

inline std::vector<Check> suite_chain(const ChartOps& ops, bool has_group) {
    std::vector<Check> cs;
    const int n = ops.group.dim;
    auto variants = has_group ? std::vector<Variant>{Variant::Tilde, Variant::Hat}
                              : std::vector<Variant>{Variant::Tilde};
    for (Variant v : variants) {
        std::string tag = v == Variant::Tilde ? "dtilde" : "dhat";
        std::string identity = v == Variant::Tilde ? "tilde differential squares to zero"
                                                   : "hat differential squares to zero";
        for (int k = 0; k + 2 <= n; ++k)
            cs.push_back({"chain/" + tag + "-squared-deg" + std::to_string(k), identity,
                          [&ops, v, k, n](const EquivOptions& o) {
                              std::mt19937_64 rng(o.seed);
                              std::vector<Expr> all;
                              for (int inst = 0; inst < 3; ++inst) {
                                  auto f = random_form(rng, n, 1, inst == 2 ? 1 : 0, 0, k);
                                  auto dd = horizontal_differential(
                                      ops, v, horizontal_differential(ops, v, f));
                                  append(all, dd.comp);
                              }
                              return equiv_zero_many(all, ops.constraints_for(1), o);
                          }});
    }
    if (!has_group) return cs;
    // Nonlinear forms only: the chain identity needs components free of
    // slot variables.
    for (int k = 0; k + 1 <= n && k <= 1; ++k)
        cs.push_back({"chain/linearization-chain-deg" + std::to_string(k),
                      "linearization intertwines the differentials",
                      [&ops, k, n](const EquivOptions& o) {
                          std::mt19937_64 rng(o.seed);
                          std::vector<Expr> lhs, rhs;
                          for (int inst = 0; inst < 3; ++inst) {
                              auto f = random_form(rng, n, inst == 2 ? 3 : 2, 0, 0, k);
                              append(lhs, linearize(horizontal_differential(ops, Variant::Tilde, f)).comp);
                              append(rhs, horizontal_differential(ops, Variant::Hat, linearize(f)).comp);
                          }
                          return equiv_random_many(lhs, rhs, ops.constraints_for(1), o);
                      }});
    cs.push_back({"chain/linearization-biinvariant", "linearization preserves biinvariance",
                  [&ops, n](const EquivOptions& o) {
                      const auto& g = ops.group;
                      auto xv = block_vars(Block::Point, 0, n);
                      auto yv = block_vars(Block::Point, 1, n);
                      auto q = group_mul(g, yv, group_inv(g, xv));
                      EquivResult last;
                      last.ok = true;
                      int survivors = 0;
                      for (int i = 0; i < n; ++i) {
                          HorizontalForm f = HorizontalForm::zeros(n, 2, 0, 0, 0);
                          f.comp[0] = q[i];
                          if (!is_invariant(ops, Variant::Tilde, f, o).ok) continue;
                          if (!is_invariant(ops, Variant::Hat, f, o).ok) continue;
                          ++survivors;
                          auto lf = linearize(f);
                          for (Variant v : {Variant::Tilde, Variant::Hat}) {
                              EquivResult r = is_invariant(ops, v, lf, o);
                              if (!r.ok) {
                                  r.message = "linearized biinvariant form lost invariance: " +
                                              r.message;
                                  return r;
                              }
                          }
                      }
                      last.message = survivors == 0 ? "no biinvariant candidates in this chart" : "";
                      return last;
                  }});
    return cs;
}

inline std::vector<Check> suite_double(const ChartOps& ops) {
    std::vector<Check> cs;
    const int n = ops.group.dim;
    struct Shape {
        int copies, degree;
    };
    for (Shape sh : {Shape{1, 0}, Shape{1, 1}, Shape{2, 0}}) {
        if (sh.degree > n) continue;
        cs.push_back({"double/delta-squared-m" + std::to_string(sh.copies) + "-deg" +
                          std::to_string(sh.degree),
                      "double coboundary vanishes",
                      [&ops, sh, n](const EquivOptions& o) {
                          std::mt19937_64 rng(o.seed);
                          std::vector<Expr> all;
                          for (int inst = 0; inst < 3; ++inst) {
                              auto f = random_form(rng, n, sh.copies, 0, 0, sh.degree);
                              auto dd = coboundary(coboundary(f, ops.tilde_split), ops.tilde_split);
                              append(all, dd.comp);
                          }
                          return equiv_zero_many(all, ops.constraints_for(sh.copies + 2), o);
                      }});
    }
    for (int k = 0; k + 1 <= n && k <= 1; ++k)
        cs.push_back({"double/delta-dtilde-commute-deg" + std::to_string(k),
                      "coboundary commutes with the tilde differential",
                      [&ops, k, n](const EquivOptions& o) {
                          std::mt19937_64 rng(o.seed);
                          std::vector<Expr> lhs, rhs;
                          for (int inst = 0; inst < 3; ++inst) {
                              auto f = random_form(rng, n, 1, 0, 0, k);
                              append(lhs,
                                     coboundary(horizontal_differential(ops, Variant::Tilde, f),
                                                ops.tilde_split)
                                         .comp);
                              append(rhs, horizontal_differential(
                                              ops, Variant::Tilde, coboundary(f, ops.tilde_split))
                                              .comp);
                          }
                          return equiv_random_many(lhs, rhs, ops.constraints_for(2), o);
                      }});
    return cs;
}

inline std::vector<Check> suite_double_multicopy(const ChartOps& ops) {
    std::vector<Check> cs;
    const int n = ops.group.dim;
    if (n < 2) return cs;
    cs.push_back({"double/dhat-squared-copies2", "hat differential squares to zero",
                  [&ops, n](const EquivOptions& o) {
                      std::mt19937_64 rng(o.seed);
                      std::vector<Expr> all;
                      for (int inst = 0; inst < 2; ++inst) {
                          auto f = random_form(rng, n, 2, 0, 0, 0);
                          auto dd = horizontal_differential(ops, Variant::Hat,
                                                            horizontal_differential(ops, Variant::Hat, f));
                          append(all, dd.comp);
                      }
                      return equiv_zero_many(all, ops.constraints_for(2), o);
                  }});
    return cs;
}

/// Rotating seed shapes for extension instances: (vslots, cslots, degree).
inline std::array<int, 3> seed_shape(int inst, int n) {
    static const int shapes[5][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {1, 1, 0}, {0, 0, 1}};
    auto s = shapes[inst % 5];
    return {s[0], s[1], std::min(s[2], n)};
}

inline std::vector<Check> suite_invariance(const ChartOps& ops) {
    std::vector<Check> cs;
    const int n = ops.group.dim;
    const std::vector<Rat>& base = ops.group.identity;

    cs.push_back({"invariance/extension-in-kernel", "extensions lie in their family's kernel",
                  [&ops, n, &base](const EquivOptions& o) {
                      std::mt19937_64 rng(o.seed);
                      std::vector<Expr> all;
                      for (int inst = 0; inst < 5; ++inst) {
                          auto [vs, cse, deg] = seed_shape(inst, n);
                          Variant v = inst % 2 == 0 ? Variant::Tilde : Variant::Hat;
                          auto seed = random_seed_form(rng, n, 1, vs, cse, deg);
                          auto ext = invariant_extension(ops.split(v), base, seed);
                          append(all, flatten_defect(invariance_defect(ops, v, ext)));
                      }
                      return equiv_zero_many(all, ops.constraints_for(1), o);
                  }});
    cs.push_back({"invariance/dhat-preserves-tilde-kernel",
                  "hat differential preserves tilde-family invariance",
                  [&ops, n, &base](const EquivOptions& o) {
                      std::mt19937_64 rng(o.seed);
                      std::vector<Expr> all;
                      for (int inst = 0; inst < 5; ++inst) {
                          auto [vs, cse, deg] = seed_shape(inst, n);
                          if (deg + 1 > n) deg = 0;
                          auto seed = random_seed_form(rng, n, 1, vs, cse, deg);
                          auto ext = invariant_extension(ops.tilde_split, base, seed);
                          auto df = horizontal_differential(ops, Variant::Hat, ext);
                          append(all, flatten_defect(invariance_defect(ops, Variant::Tilde, df)));
                      }
                      return equiv_zero_many(all, ops.constraints_for(1), o);
                  }});
    cs.push_back({"invariance/dtilde-preserves-hat-kernel",
                  "tilde differential preserves hat-family invariance",
                  [&ops, n, &base](const EquivOptions& o) {
                      std::mt19937_64 rng(o.seed);
                      std::vector<Expr> all;
                      for (int inst = 0; inst < 5; ++inst) {
                          auto [vs, cse, deg] = seed_shape(inst, n);
                          if (deg + 1 > n) deg = 0;
                          auto seed = random_seed_form(rng, n, 2, vs, cse, deg);
                          auto ext = invariant_extension_multi(ops.group, ops.hat_split, base, seed);
                          auto df = horizontal_differential(ops, Variant::Tilde, ext);
                          append(all, flatten_defect(invariance_defect(ops, Variant::Hat, df)));
                      }
                      return equiv_zero_many(all, ops.constraints_for(2), o);
                  }});
    cs.push_back({"invariance/delta-preserves-hat-kernel",
                  "coboundary preserves hat-family invariance",
                  [&ops, n, &base](const EquivOptions& o) {
                      std::mt19937_64 rng(o.seed);
                      std::vector<Expr> all;
                      for (int inst = 0; inst < 5; ++inst) {
                          auto [vs, cse, deg] = seed_shape(inst, n);
                          auto seed = random_seed_form(rng, n, 1, vs, cse, deg);
                          auto ext = invariant_extension(ops.hat_split, base, seed);
                          auto df = coboundary(ext, ops.tilde_split);
                          append(all, flatten_defect(invariance_defect(ops, Variant::Hat, df)));
                      }
                      return equiv_zero_many(all, ops.constraints_for(2), o);
                  }});
    cs.push_back({"invariance/pair-quotient-tilde-closed",
                  "pair quotient closed under the tilde differential",
                  [&ops, n](const EquivOptions& o) {
                      auto xv = block_vars(Block::Point, 0, n);
                      auto yv = block_vars(Block::Point, 1, n);
                      auto q = group_mul(ops.group, yv, group_inv(ops.group, xv));
                      std::vector<Expr> all;
                      for (int i = 0; i < n; ++i) {
                          HorizontalForm f = HorizontalForm::zeros(n, 2, 0, 0, 0);
                          f.comp[0] = q[i];
                          append(all, horizontal_differential(ops, Variant::Tilde, f).comp);
                      }
                      return equiv_zero_many(all, ops.constraints_for(2), o);
                  }});
    cs.push_back({"invariance/pair-quotient-hat-invariant",
                  "pair quotient invariant under the hat family",
                  [&ops, n](const EquivOptions& o) {
                      auto xv = block_vars(Block::Point, 0, n);
                      auto yv = block_vars(Block::Point, 1, n);
                      auto q = group_mul(ops.group, yv, group_inv(ops.group, xv));
                      std::vector<Expr> all;
                      for (int i = 0; i < n; ++i) {
                          HorizontalForm f = HorizontalForm::zeros(n, 2, 0, 0, 0);
                          f.comp[0] = q[i];
                          append(all, flatten_defect(invariance_defect(ops, Variant::Hat, f)));
                      }
                      return equiv_zero_many(all, ops.constraints_for(2), o);
                  }});
    cs.push_back(
        {"invariance/covariant-lie-match", "covariant and Lie derivative agree at the matching point",
         [&ops, n](const EquivOptions& o) {
             std::mt19937_64 rng(o.seed);
             std::set<VarRef> pv;
             std::vector<VarRef> pointv;
             for (int i = 0; i < n; ++i) {
                 pv.insert(point_var(0, i + 1));
                 pointv.push_back(point_var(0, i + 1));
             }
             static const int shapes[5][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
             for (int inst = 0; inst < 5; ++inst) {
                 Assignment at = sample_point(pv, ops.group.constraints, rng, o);
                 std::vector<Rat> p(n);
                 for (int i = 0; i < n; ++i) p[i] = at.at(point_var(0, i + 1));
                 const int up = shapes[inst % 5][0], lo = shapes[inst % 5][1];
                 TensorField t = TensorField::zeros(n, up, lo);
                 for (auto& c : t.comp) c = random_polynomial(rng, pointv, 2, 2);
                 std::vector<Rat> xi0(n);
                 std::vector<Expr> xi(n);
                 for (int i = 0; i < n; ++i) {
                     xi0[i] = detail::sample_rat(rng, o);
                     xi[i] = cst(xi0[i]);
                 }
                 auto eta = correspondence_vector(ops.tilde_split, p, xi);
                 auto cov = covariant_derivative(t, ops.conn.hat);
                 auto lie = lie_derivative(t, eta);
                 bool mismatch = false;
                 for_each_index(n, up + lo, [&](const std::vector<int>& idx) {
                     if (mismatch) return;
                     Rat cval(0);
                     for (int j = 0; j < n; ++j) {
                         std::vector<int> full(idx.begin(), idx.begin() + up);
                         full.push_back(j);
                         full.insert(full.end(), idx.begin() + up, idx.end());
                         cval += xi0[j] * eval_exact(cov.at(full), at);
                     }
                     if (cval != eval_exact(lie.at(idx), at)) mismatch = true;
                 });
                 if (mismatch) {
                     EquivResult r;
                     r.ok = false;
                     r.message = "derivatives differ at the matching point";
                     r.witness = at;
                     return r;
                 }
             }
             EquivResult r;
             r.ok = true;
             r.trials_run = 5;
             return r;
         }});
    cs.push_back({"invariance/lie-annihilates-invariant",
                  "invariant tensors annihilated across families",
                  [&ops, n, &base](const EquivOptions& o) {
                      auto tframe = invariant_frame(ops.tilde_split, base);
                      auto tcoframe = invariant_coframe(ops.tilde_split, base);
                      auto hframe = invariant_frame(ops.hat_split, base);
                      std::vector<Expr> all;
                      for (int a = 0; a < n; ++a)
                          for (int b = 0; b < n; ++b) {
                              TensorField vec = TensorField::zeros(n, 1, 0);
                              TensorField cov = TensorField::zeros(n, 0, 1);
                              for (int i = 0; i < n; ++i) {
                                  vec.at({i}) = tframe[b][i];
                                  cov.at({i}) = tcoframe[b][i];
                              }
                              append(all, lie_derivative(vec, hframe[a]).comp);
                              append(all, lie_derivative(cov, hframe[a]).comp);
                          }
                      return equiv_zero_many(all, ops.constraints_for(1), o);
                  }});
    if (ops.group.name == "affine2") {
        // The hat defect vanishes on every quotient component (the quotient
        // is invariant under the diagonal hat action); the tilde defect
        // separates class functions from the rest.
        cs.push_back({"invariance/class-function", "class function in both kernels",
                      [&ops, n](const EquivOptions& o) {
                          auto xv = block_vars(Block::Point, 0, n);
                          auto yv = block_vars(Block::Point, 1, n);
                          auto q = group_mul(ops.group, yv, group_inv(ops.group, xv));
                          HorizontalForm f = HorizontalForm::zeros(n, 2, 0, 0, 0);
                          f.comp[0] = q[0];
                          std::vector<Expr> all = horizontal_differential(ops, Variant::Tilde, f).comp;
                          append(all, flatten_defect(invariance_defect(ops, Variant::Hat, f)));
                          append(all, flatten_defect(invariance_defect(ops, Variant::Tilde, f)));
                          return equiv_zero_many(all, ops.constraints_for(2), o);
                      }});
        cs.push_back({"invariance/non-class-function", "non-class function rejected with witness",
                      [&ops, n](const EquivOptions& o) {
                          auto xv = block_vars(Block::Point, 0, n);
                          auto yv = block_vars(Block::Point, 1, n);
                          auto q = group_mul(ops.group, yv, group_inv(ops.group, xv));
                          HorizontalForm f = HorizontalForm::zeros(n, 2, 0, 0, 0);
                          f.comp[0] = q[1];
                          EquivResult r = is_invariant(ops, Variant::Tilde, f, o);
                          if (r.ok) {
                              r.ok = false;
                              r.message = "expected a nonzero invariance defect";
                              return r;
                          }
                          r.ok = true;
                          r.message = "invariance defect witnessed";
                          return r;
                      }});
    }
    return cs;
}

inline std::vector<Check> checks_for_suite(const std::string& suite, const ChartOps& ops,
                                           bool has_group) {
    std::vector<Check> cs;
    auto add = [&cs](std::vector<Check> more) {
        for (auto& c : more) cs.push_back(std::move(c));
    };
    if (suite == "eq2" || suite == "all")
        add(has_group ? suite_eq2(ops) : suite_eq2_splitting(ops));
    if (suite == "chain" || suite == "all") add(suite_chain(ops, has_group));
    if (suite == "double" || suite == "all") {
        add(suite_double(ops));
        if (has_group) add(suite_double_multicopy(ops));
    }
    if (suite == "invariance" || suite == "all") {
        if (!has_group && suite == "invariance")
            throw ConfigError("the invariance suite needs a group law input");
        if (has_group) add(suite_invariance(ops));
    }
    if (cs.empty() && suite != "all")
        throw ConfigError("unknown suite '" + suite +
                          "' (available: all, eq2, chain, double, invariance)");
    return cs;
}

// ---- payload builders ----

inline Json coeff_entries(const Coeffs& c) {
    Json j = Json::object();
    const int n = static_cast<int>(c.size());
    for (int i = 0; i < n; ++i)
        for (int j2 = 0; j2 < n; ++j2)
            for (int k = 0; k < n; ++k)
                if (!is_zero(c[i][j2][k]))
                    j[std::to_string(i + 1) + "," + std::to_string(j2 + 1) + "," +
                      std::to_string(k + 1)] = to_string(c[i][j2][k]);
    return j;
}

inline Json matrix_entries(const std::vector<std::vector<Expr>>& m) {
    Json rows = Json::array();
    for (const auto& r : m) {
        Json row = Json::array();
        for (const auto& e : r) row.push_back(to_string(e));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json form_payload(const HorizontalForm& f) {
    Json j;
    j["copies"] = f.copies;
    j["degree"] = f.degree;
    j["vslots"] = f.vslots;
    j["cslots"] = f.cslots;
    Json comps = Json::object();
    for (std::size_t t = 0; t < f.tuples.size(); ++t) {
        std::string key;
        for (std::size_t u = 0; u < f.tuples[t].size(); ++u)
            key += (u ? "," : "") + std::to_string(f.tuples[t][u] + 1);
        comps[key] = to_string(f.comp[t]);
    }
    j["components"] = std::move(comps);
    return j;
}

inline Json bracket_list(const StructureConstants& sc) {
    Json out = Json::array();
    for (int a = 0; a < sc.dim; ++a)
        for (int b = a + 1; b < sc.dim; ++b)
            for (int k = 0; k < sc.dim; ++k)
                if (sc.c[k][a][b] != 0)
                    out.push_back(std::to_string(a + 1) + " " + std::to_string(b + 1) + " " +
                                  std::to_string(k + 1) + " " + rat_to_string(sc.c[k][a][b]));
    return out;
}

}  // namespace session

// ---- command drivers ----

namespace session {

inline LoadedInput load_configured_input(const SessionConfig& cfg) {
    if (cfg.input_path.empty() == cfg.builtin_name.empty())
        throw ConfigError("pass exactly one of --input FILE or --builtin NAME");
    try {
        return cfg.input_path.empty() ? load_builtin(cfg.builtin_name)
                                      : load_input_file(cfg.input_path);
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
}

inline Report run_check(const SessionConfig& cfg, const LoadedInput& in) {
    Report rep;
    std::vector<Check> cs;
    std::optional<ChartOps> ops;
    if (in.group) {
        ops = make_chart_ops(*in.group);
        const ChartOps& o = *ops;
        cs.push_back({"check/group-axioms", "group law axioms",
                      [&o](const EquivOptions& e) { return all_of(verify_group_axioms(o.group, e)); }});
        for (Variant v : {Variant::Tilde, Variant::Hat}) {
            std::string tag = v == Variant::Tilde ? "tilde" : "hat";
            cs.push_back({"check/splitting-axioms-" + tag,
                          "splitting diagonal, composition and inversion axioms",
                          [&o, v](const EquivOptions& e) {
                              return all_of(verify_splitting_axioms(o.split(v), e));
                          }});
            cs.push_back({"check/curvature-two-point-" + tag,
                          "two-point integrability tensor vanishes",
                          [&o, v](const EquivOptions& e) {
                              return equiv_zero_many(flatten_coeffs(curvature_two_point(o.split(v))),
                                                     o.constraints_for(2), e);
                          }});
        }
    } else if (in.splitting) {
        ops = tilde_only_ops(*in.splitting);
        const ChartOps& o = *ops;
        cs.push_back({"check/splitting-axioms",
                      "splitting diagonal, composition and inversion axioms",
                      [&o](const EquivOptions& e) {
                          return all_of(verify_splitting_axioms(o.tilde_split, e));
                      }});
        cs.push_back({"check/curvature-two-point", "two-point integrability tensor vanishes",
                      [&o](const EquivOptions& e) {
                          return equiv_zero_many(flatten_coeffs(curvature_two_point(o.tilde_split)),
                                                 o.constraints_for(2), e);
                      }});
    } else {
        const StructureConstants& sc = *in.algebra;
        cs.push_back({"check/algebra-antisymmetry", "bracket constants are antisymmetric",
                      [&sc](const EquivOptions&) {
                          EquivResult r;
                          r.ok = sc.antisymmetric();
                          if (!r.ok) r.message = "a bracket entry is not antisymmetric";
                          return r;
                      }});
        cs.push_back({"check/algebra-jacobi", "bracket constants satisfy the Jacobi identity",
                      [&sc](const EquivOptions&) {
                          EquivResult r;
                          r.ok = sc.jacobi();
                          if (!r.ok) r.message = "the Jacobi identity fails";
                          return r;
                      }});
    }
    rep.checks = run_checks(cfg, cs);
    return rep;
}

inline Report run_verify(const SessionConfig& cfg, const LoadedInput& in) {
    Report rep;
    rep.payload["suite"] = cfg.suite;
    if (in.algebra && !in.group && !in.splitting)
        throw ConfigError("verification suites need a group law or splitting input");
    ChartOps ops = in.group ? make_chart_ops(*in.group) : tilde_only_ops(*in.splitting);
    rep.checks = run_checks(cfg, checks_for_suite(cfg.suite, ops, in.group.has_value()));
    return rep;
}

inline Report run_derive(const SessionConfig& cfg, const LoadedInput& in) {
    Report rep;
    Json d;
    d["what"] = cfg.what;
    if (cfg.what == "structure-constants") {
        StructureConstants sc;
        if (in.algebra) {
            sc = *in.algebra;
        } else if (in.group) {
            ChartOps ops = make_chart_ops(*in.group);
            sc = algebra_of(ops, in.group->identity);
        } else {
            throw ConfigError("structure constants need a group law or algebra input");
        }
        d["dim"] = sc.dim;
        d["brackets"] = bracket_list(sc);
        rep.payload["derived"] = std::move(d);
        return rep;
    }
    if (in.algebra && !in.group && !in.splitting)
        throw ConfigError("derivation '" + cfg.what + "' needs a group law or splitting input");
    if (cfg.what == "gamma" || cfg.what == "torsion" || cfg.what == "curvature") {
        ConnectionPair cp =
            in.group ? make_chart_ops(*in.group).conn : connection_pair(*in.splitting);
        if (cfg.what == "gamma") {
            d["tilde"] = coeff_entries(cp.tilde);
            d["hat"] = coeff_entries(cp.hat);
        } else if (cfg.what == "torsion") {
            d["tilde"] = coeff_entries(torsion(cp.tilde));
            d["hat"] = coeff_entries(torsion(cp.hat));
        } else {
            EquivOptions o;
            o.trials = cfg.trials;
            o.seed = derived_seed(cfg.seed, "derive/curvature");
            std::vector<Expr> constraints = in.group
                                                ? constraints_for_copies(*in.group, 1)
                                                : in.splitting->constraints_for_copies(1);
            for (const char* tag : {"tilde", "hat"}) {
                const Coeffs& g = std::string(tag) == "tilde" ? cp.tilde : cp.hat;
                std::vector<Expr> all;
                for (const auto& c : curvature_one_point(g)) append(all, flatten_coeffs(c));
                d[tag] = equiv_zero_many(all, constraints, o).ok ? "vanishes" : "nonzero";
            }
        }
        rep.payload["derived"] = std::move(d);
        return rep;
    }
    if (cfg.what == "frame" || cfg.what == "epsilon-hat") {
        if (!in.group)
            throw ConfigError("derivation '" + cfg.what + "' needs a group law input");
        ChartOps ops = make_chart_ops(*in.group);
        if (cfg.what == "frame") {
            d["tilde"] = matrix_entries(invariant_frame(ops.tilde_split, in.group->identity));
            d["hat"] = matrix_entries(invariant_frame(ops.hat_split, in.group->identity));
        } else {
            d["epsilon"] = matrix_entries(ops.hat_split.eps);
        }
        rep.payload["derived"] = std::move(d);
        return rep;
    }
    throw ConfigError("unknown derivation '" + cfg.what +
                      "' (available: gamma, torsion, curvature, frame, structure-constants, "
                      "epsilon-hat)");
}

inline Report run_cohomology(const SessionConfig& cfg, const LoadedInput& in) {
    Report rep;
    const std::string& cx_name = cfg.complex_name;
    bool known = cx_name == "ilhc" || cx_name == "hat35" || cx_name == "biinv36" ||
                 cx_name == "ilhdc-row";
    if (!known)
        throw ConfigError("unknown complex '" + cx_name +
                          "' (available: ilhc, hat35, biinv36, ilhdc-row)");
    std::string coeff_name = cfg.coefficients;
    if (coeff_name.empty()) {
        if (cx_name == "ilhdc-row")
            throw ConfigError(
                "ilhdc-row is a family of complexes indexed by a power module; pass "
                "--coefficients power:M to pick the row");
        coeff_name = (cx_name == "hat35" || cx_name == "biinv36") ? "adjoint" : "trivial";
    }
    CoefficientModule mod;
    try {
        mod = module_from_name(coeff_name);
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    if (cx_name == "ilhdc-row" && mod.kind != CoefficientModule::Kind::Power)
        throw ConfigError(
            "ilhdc-row is a family of complexes indexed by a power module; pass "
            "--coefficients power:M to pick the row");

    Complex cx;
    if (in.group) {
        ChartOps ops = make_chart_ops(*in.group);
        const std::vector<Rat>& base = in.group->identity;
        if (cx_name == "ilhc" || cx_name == "ilhdc-row")
            cx = localized_complex(ops, mod, Variant::Tilde, base);
        else if (cx_name == "hat35")
            cx = localized_complex(ops, mod, Variant::Hat, base);
        else
            cx = biinvariant_complex_geometric(ops, mod, base);
    } else if (in.algebra) {
        if (cx_name == "hat35")
            throw ConfigError("the hat-extension complex needs a group law input");
        if (cx_name == "biinv36")
            cx = biinvariant_complex_algebra(*in.algebra, mod);
        else
            cx = algebra_complex(*in.algebra, mod);
    } else {
        throw ConfigError("cohomology needs a group law or algebra input");
    }
    auto dims = cohomology_dims(cx);
    Json betti;
    betti["complex"] = cx_name;
    betti["coefficients"] = module_name(mod);
    Json arr = Json::array();
    int limit = cfg.max_degree >= 0 ? std::min<int>(cfg.max_degree, static_cast<int>(dims.size()) - 1)
                                    : static_cast<int>(dims.size()) - 1;
    for (int k = 0; k <= limit; ++k) arr.push_back(dims[static_cast<std::size_t>(k)]);
    betti["dims"] = std::move(arr);
    rep.payload["betti"] = std::move(betti);
    return rep;
}

inline Report run_op(const SessionConfig& cfg, const LoadedInput& in) {
    Report rep;
    if (cfg.form_path.empty()) throw ConfigError("op needs --form FILE");
    bool need_hat = cfg.apply == "dhat";
    if (!in.group && !in.splitting)
        throw ConfigError("operator application needs a group law or splitting input");
    if (need_hat && !in.group)
        throw ConfigError("the hat differential needs a group law input");
    int dim = in.group ? in.group->dim : in.splitting->dim;
    HorizontalForm f;
    try {
        f = form_from_toml(toml::load_toml_file(cfg.form_path), dim);
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    for (const auto& c : f.comp)
        if (!cfg.float_mode && has_transcendental(c))
            throw ConfigError("the form uses transcendental functions; rerun with --mode float");
    ChartOps ops = in.group ? make_chart_ops(*in.group) : tilde_only_ops(*in.splitting);
    HorizontalForm out;
    if (cfg.apply == "dhat")
        out = horizontal_differential(ops, Variant::Hat, f);
    else if (cfg.apply == "dtilde")
        out = horizontal_differential(ops, Variant::Tilde, f);
    else if (cfg.apply == "delta")
        out = coboundary(f, ops.tilde_split);
    else if (cfg.apply == "linearize") {
        if (f.copies < 2)
            throw ConfigError("linearization needs a form with at least two point copies");
        if (f.vslots > 0 || f.cslots > 0)
            throw ConfigError("linearization takes nonlinear forms: components may depend on "
                              "point copies only, not slot variables");
        out = linearize(f);
    } else {
        throw ConfigError("unknown operator '" + cfg.apply +
                          "' (available: dhat, dtilde, delta, linearize)");
    }
    rep.payload["applied"] = cfg.apply;
    rep.payload["form"] = form_payload(out);
    return rep;
}

}  // namespace session

inline Report run_session(const SessionConfig& cfg) {
    LoadedInput in = session::load_configured_input(cfg);
    if (!cfg.float_mode && input_has_transcendental(in))
        throw ConfigError("the input uses transcendental functions; rerun with --mode float");
    Report rep;
    if (cfg.command == "check")
        rep = session::run_check(cfg, in);
    else if (cfg.command == "verify")
        rep = session::run_verify(cfg, in);
    else if (cfg.command == "derive")
        rep = session::run_derive(cfg, in);
    else if (cfg.command == "cohomology")
        rep = session::run_cohomology(cfg, in);
    else if (cfg.command == "op")
        rep = session::run_op(cfg, in);
    else
        throw ConfigError("unknown command '" + cfg.command + "'");
    rep.command = cfg.command;
    rep.input = in.source;
    rep.mode = cfg.float_mode ? "float" : "exact";
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.tol = cfg.tol;
    rep.timings = cfg.timings;
    rep.sort_checks();
    return rep;
}

}  // namespace llg
