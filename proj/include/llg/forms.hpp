#pragma once

#include <random>

#include "tensor.hpp"
#include "tuples.hpp"

namespace llg {

/// A horizontal k-form over `copies` chart points (blocks x, y, z, w) with
/// optional vector-argument slots (xi, eta, zeta) and covector-argument
/// slots (th, ph).  Skew components are stored on strictly increasing index
/// tuples, lexicographically ordered; component expressions are expected to
/// be multilinear in each slot's variables.
struct HorizontalForm {
    int dim = 0;
    int copies = 1;
    int vslots = 0;
    int cslots = 0;
    int degree = 0;
    std::vector<std::vector<int>> tuples;
    std::vector<Expr> comp;

    static HorizontalForm zeros(int dim, int copies, int vslots, int cslots, int degree) {
        HorizontalForm f;
        f.dim = dim;
        f.copies = copies;
        f.vslots = vslots;
        f.cslots = cslots;
        f.degree = degree;
        f.tuples = k_tuples(dim, degree);
        f.comp.assign(f.tuples.size(), cst(0));
        return f;
    }

    std::size_t index_of(const std::vector<int>& sorted) const {
        auto it = std::lower_bound(tuples.begin(), tuples.end(), sorted);
        assert(it != tuples.end() && *it == sorted);
        return static_cast<std::size_t>(it - tuples.begin());
    }

    const Expr& at(const std::vector<int>& sorted) const { return comp[index_of(sorted)]; }
    Expr& at(const std::vector<int>& sorted) { return comp[index_of(sorted)]; }

    /// Component at an arbitrary tuple via skew symmetry; zero on repeats.
    Expr signed_at(std::vector<int> tuple) const {
        int sgn = sign_sort(tuple);
        if (sgn == 0) return cst(0);
        const Expr& c = at(tuple);
        return sgn == 1 ? c : neg(c);
    }

    bool same_shape(const HorizontalForm& o) const {
        return dim == o.dim && copies == o.copies && vslots == o.vslots && cslots == o.cslots &&
               degree == o.degree;
    }
};

/// Variables a component of the given shape may mention.
inline std::vector<VarRef> form_vars(int dim, int copies, int vslots, int cslots) {
    std::vector<VarRef> vars;
    for (int c = 0; c < copies; ++c)
        for (int i = 1; i <= dim; ++i) vars.push_back(point_var(c, i));
    for (int s = 0; s < vslots; ++s)
        for (int i = 1; i <= dim; ++i) vars.push_back(fiber_var(s, i));
    for (int s = 0; s < cslots; ++s)
        for (int i = 1; i <= dim; ++i) vars.push_back(cofiber_var(s, i));
    return vars;
}

/// Random polynomial in the given variables: a short sum of monomials with
/// small rational coefficients.
inline Expr random_polynomial(std::mt19937_64& rng, const std::vector<VarRef>& vars, int terms = 3,
                              int max_factors = 2) {
    std::uniform_int_distribution<int> term_count(1, terms);
    std::uniform_int_distribution<int> factor_count(0, max_factors);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    std::uniform_int_distribution<std::size_t> pick(0, vars.empty() ? 0 : vars.size() - 1);

    Expr acc = cst(0);
    const int nt = term_count(rng);
    for (int t = 0; t < nt; ++t) {
        long n = num(rng);
        if (n == 0) n = 1;
        Expr mono = cst(rat(n, den(rng)));
        if (!vars.empty()) {
            const int nf = factor_count(rng);
            for (int f = 0; f < nf; ++f) mono = mul(mono, var(vars[pick(rng)]));
        }
        acc = add(acc, mono);
    }
    return acc;
}

/// Random form with polynomial point dependence, multilinear in every slot.
inline HorizontalForm random_form(std::mt19937_64& rng, int dim, int copies, int vslots, int cslots,
                                  int degree, int terms = 3, int max_factors = 2) {
    HorizontalForm f = HorizontalForm::zeros(dim, copies, vslots, cslots, degree);
    std::vector<VarRef> pvars = form_vars(dim, copies, 0, 0);
    std::uniform_int_distribution<int> comp_dist(1, dim);
    for (auto& c : f.comp) {
        c = random_polynomial(rng, pvars, terms, max_factors);
        // Multilinear slot dependence: multiply in one variable per slot.
        for (int s = 0; s < vslots; ++s) c = mul(c, var(fiber_var(s, comp_dist(rng))));
        for (int s = 0; s < cslots; ++s) c = mul(c, var(cofiber_var(s, comp_dist(rng))));
    }
    return f;
}

/// Random seed for an invariant extension: no dependence on the first point
/// block, polynomial dependence on any extra copies, one variable factor per
/// slot so components stay multilinear in each slot.
inline HorizontalForm random_seed_form(std::mt19937_64& rng, int dim, int copies, int vslots,
                                       int cslots, int degree, int terms = 2) {
    HorizontalForm f = HorizontalForm::zeros(dim, copies, vslots, cslots, degree);
    std::vector<VarRef> extra;
    for (int c = 1; c < copies; ++c)
        for (int i = 1; i <= dim; ++i) extra.push_back(point_var(c, i));
    std::uniform_int_distribution<int> comp_dist(1, dim);
    for (auto& c : f.comp) {
        c = random_polynomial(rng, extra, terms, 2);
        for (int s = 0; s < vslots; ++s) c = mul(c, var(fiber_var(s, comp_dist(rng))));
        for (int s = 0; s < cslots; ++s) c = mul(c, var(cofiber_var(s, comp_dist(rng))));
    }
    return f;
}

}  // namespace llg
