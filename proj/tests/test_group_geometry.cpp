#include <catch2/catch_amalgamated.hpp>

#include "llg/ce.hpp"
#include "llg/parser.hpp"
#include "llg/tensor.hpp"

using namespace llg;

namespace {

bool all_ok(const std::vector<NamedCheck>& checks) {
    bool ok = true;
    for (const auto& c : checks) {
        INFO(c.name << ": " << c.result.message);
        CHECK(c.result.ok);
        ok = ok && c.result.ok;
    }
    return ok;
}

void require_equiv(const Expr& got, const std::string& want, int dim,
                   const std::vector<Expr>& constraints = {}) {
    auto r = equiv_random(got, parse(want, dim), constraints);
    INFO(to_string(got) << "  vs  " << want << "  : " << r.message);
    REQUIRE(r.ok);
}

std::vector<Expr> chart_constraints(const GroupLaw& g, int copies) {
    return constraints_for_copies(g, copies);
}

}  // namespace

TEST_CASE("builtin group laws satisfy the local group axioms") {
    for (const char* name : {"abelian:2", "abelian:3", "heisenberg3", "affine2", "uppertriangular3"}) {
        auto g = builtin_group(name);
        REQUIRE(g);
        INFO(name);
        REQUIRE(all_ok(verify_group_axioms(*g)));
    }
}

TEST_CASE("a non-associative law is rejected") {
    GroupLaw g;
    g.name = "broken";
    g.dim = 2;
    g.mult = {parse("x1 + y1", 2), parse("x2 + y2 + x1*y1^2", 2)};
    g.inverse = {parse("-x1", 2), parse("-x2 + x1^3", 2)};
    g.identity = {Rat(0), Rat(0)};
    bool assoc_failed = false;
    for (const auto& c : verify_group_axioms(g))
        if (!c.result.ok && c.name.find("assoc") != std::string::npos) assoc_failed = true;
    REQUIRE(assoc_failed);
}

TEST_CASE("derived splittings, frozen entries") {
    SECTION("heisenberg tilde") {
        auto s = splitting_from_group(builtin_heisenberg3(), Variant::Tilde);
        require_equiv(s.eps[0][0], "1", 3);
        require_equiv(s.eps[0][1], "0", 3);
        require_equiv(s.eps[1][1], "1", 3);
        require_equiv(s.eps[2][0], "0", 3);
        require_equiv(s.eps[2][1], "y1 - x1", 3);
        require_equiv(s.eps[2][2], "1", 3);
    }
    SECTION("heisenberg hat") {
        auto s = splitting_from_group(builtin_heisenberg3(), Variant::Hat);
        require_equiv(s.eps[2][0], "y2 - x2", 3);
        require_equiv(s.eps[2][1], "0", 3);
        require_equiv(s.eps[2][2], "1", 3);
    }
    SECTION("affine tilde") {
        auto g = builtin_affine2();
        auto s = splitting_from_group(g, Variant::Tilde);
        auto cs = chart_constraints(g, 2);
        require_equiv(s.eps[0][0], "y1/x1", 2, cs);
        require_equiv(s.eps[0][1], "0", 2, cs);
        require_equiv(s.eps[1][0], "0", 2, cs);
        require_equiv(s.eps[1][1], "y1/x1", 2, cs);
    }
    SECTION("affine hat") {
        auto g = builtin_affine2();
        auto s = splitting_from_group(g, Variant::Hat);
        auto cs = chart_constraints(g, 2);
        require_equiv(s.eps[0][0], "y1/x1", 2, cs);
        require_equiv(s.eps[0][1], "0", 2, cs);
        require_equiv(s.eps[1][0], "(y2 - x2)/x1", 2, cs);
        require_equiv(s.eps[1][1], "1", 2, cs);
    }
    SECTION("abelian is the identity matrix") {
        auto s = splitting_from_group(builtin_abelian(3), Variant::Tilde);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) require_equiv(s.eps[i][j], i == j ? "1" : "0", 3);
    }
}

TEST_CASE("derived splittings satisfy the splitting axioms") {
    for (const char* name : {"abelian:2", "heisenberg3", "affine2", "uppertriangular3"}) {
        auto g = builtin_group(name);
        for (auto v : {Variant::Tilde, Variant::Hat}) {
            INFO(name << " " << variant_name(v));
            REQUIRE(all_ok(verify_splitting_axioms(splitting_from_group(*g, v))));
        }
    }
}

TEST_CASE("two-point curvature of derived splittings vanishes") {
    for (const char* name : {"heisenberg3", "affine2", "uppertriangular3"}) {
        auto g = builtin_group(name);
        for (auto v : {Variant::Tilde, Variant::Hat}) {
            auto s = splitting_from_group(*g, v);
            auto R = curvature_two_point(s);
            std::vector<Expr> flat;
            for (const auto& a : R)
                for (const auto& b : a)
                    for (const auto& e : b) flat.push_back(e);
            INFO(name << " " << variant_name(v));
            REQUIRE(equiv_zero_many(flat, s.constraints_for_copies(2)).ok);
        }
    }
}

TEST_CASE("connection coefficients, frozen values") {
    SECTION("heisenberg") {
        auto cp = connection_pair(splitting_from_group(builtin_heisenberg3(), Variant::Tilde));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const char* want_t = (i == 2 && j == 0 && k == 1) ? "1" : "0";
                    const char* want_h = (i == 2 && j == 1 && k == 0) ? "1" : "0";
                    require_equiv(cp.tilde[i][j][k], want_t, 3);
                    require_equiv(cp.hat[i][j][k], want_h, 3);
                }
    }
    SECTION("affine") {
        auto g = builtin_affine2();
        auto cp = connection_pair(splitting_from_group(g, Variant::Tilde));
        auto cs = chart_constraints(g, 1);
        require_equiv(cp.tilde[0][0][0], "1/x1", 2, cs);
        require_equiv(cp.tilde[1][0][1], "1/x1", 2, cs);
        require_equiv(cp.tilde[1][1][0], "0", 2, cs);
        require_equiv(cp.hat[0][0][0], "1/x1", 2, cs);
        require_equiv(cp.hat[1][1][0], "1/x1", 2, cs);
        require_equiv(cp.hat[1][0][1], "0", 2, cs);
    }
}

TEST_CASE("both splittings induce the same connection pair") {
    for (const char* name : {"heisenberg3", "affine2", "uppertriangular3"}) {
        auto g = builtin_group(name);
        auto from_tilde = connection_pair(splitting_from_group(*g, Variant::Tilde));
        auto from_hat = connection_pair(splitting_from_group(*g, Variant::Hat));
        auto cs = chart_constraints(*g, 1);
        std::vector<Expr> lhs, rhs;
        for (int i = 0; i < g->dim; ++i)
            for (int j = 0; j < g->dim; ++j)
                for (int k = 0; k < g->dim; ++k) {
                    lhs.push_back(from_tilde.tilde[i][j][k]);
                    rhs.push_back(from_hat.tilde[i][j][k]);
                    lhs.push_back(from_tilde.hat[i][j][k]);
                    rhs.push_back(from_hat.hat[i][j][k]);
                }
        INFO(name);
        REQUIRE(equiv_random_many(lhs, rhs, cs).ok);
    }
}

TEST_CASE("torsion, frozen values and antisymmetry between variants") {
    auto g = builtin_affine2();
    auto cp = connection_pair(splitting_from_group(g, Variant::Tilde));
    auto tt = torsion(cp.tilde);
    auto th = torsion(cp.hat);
    auto cs = chart_constraints(g, 1);
    require_equiv(tt[1][0][1], "1/x1", 2, cs);
    require_equiv(tt[1][1][0], "-1/x1", 2, cs);
    require_equiv(tt[0][0][1], "0", 2, cs);
    std::vector<Expr> lhs, rhs;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                lhs.push_back(tt[i][j][k]);
                rhs.push_back(neg(th[i][j][k]));
            }
    REQUIRE(equiv_random_many(lhs, rhs, cs).ok);
}

TEST_CASE("one-point curvature of both chart connections vanishes") {
    for (const char* name : {"heisenberg3", "affine2", "uppertriangular3"}) {
        auto g = builtin_group(name);
        auto cp = connection_pair(splitting_from_group(*g, Variant::Tilde));
        auto cs = chart_constraints(*g, 1);
        for (const auto* gamma : {&cp.tilde, &cp.hat}) {
            auto R = curvature_one_point(*gamma);
            std::vector<Expr> flat;
            for (const auto& a : R)
                for (const auto& b : a)
                    for (const auto& c : b)
                        for (const auto& e : c) flat.push_back(e);
            INFO(name);
            REQUIRE(equiv_zero_many(flat, cs).ok);
        }
    }
}

TEST_CASE("torsion is parallel for both chart connections") {
    for (const char* name : {"heisenberg3", "affine2", "uppertriangular3"}) {
        auto g = builtin_group(name);
        auto cp = connection_pair(splitting_from_group(*g, Variant::Tilde));
        auto cs = chart_constraints(*g, 1);
        for (auto v : {Variant::Tilde, Variant::Hat}) {
            auto t = tensor_from_coeffs(torsion(cp.of(v)));
            auto dt = covariant_derivative(t, cp.of(v));
            INFO(name << " " << variant_name(v));
            REQUIRE(equiv_zero_many(dt.comp, cs).ok);
        }
    }
}

TEST_CASE("invariant frames, frozen components") {
    SECTION("heisenberg") {
        auto g = builtin_heisenberg3();
        auto ft = invariant_frame(splitting_from_group(g, Variant::Tilde), g.identity);
        require_equiv(ft[0][0], "1", 3);
        require_equiv(ft[1][1], "1", 3);
        require_equiv(ft[1][2], "x1", 3);
        require_equiv(ft[2][2], "1", 3);
        require_equiv(ft[0][2], "0", 3);
        auto fh = invariant_frame(splitting_from_group(g, Variant::Hat), g.identity);
        require_equiv(fh[0][0], "1", 3);
        require_equiv(fh[0][2], "x2", 3);
        require_equiv(fh[1][2], "0", 3);
    }
    SECTION("affine") {
        auto g = builtin_affine2();
        auto ft = invariant_frame(splitting_from_group(g, Variant::Tilde), g.identity);
        require_equiv(ft[0][0], "x1", 2);
        require_equiv(ft[0][1], "0", 2);
        require_equiv(ft[1][0], "0", 2);
        require_equiv(ft[1][1], "x1", 2);
        auto fh = invariant_frame(splitting_from_group(g, Variant::Hat), g.identity);
        require_equiv(fh[0][0], "x1", 2);
        require_equiv(fh[0][1], "x2", 2);
        require_equiv(fh[1][0], "0", 2);
        require_equiv(fh[1][1], "1", 2);
    }
}

TEST_CASE("coframe pairs with the frame to the identity") {
    auto g = builtin_affine2();
    auto s = splitting_from_group(g, Variant::Hat);
    auto frame = invariant_frame(s, g.identity);
    auto co = invariant_coframe(s, g.identity);
    std::vector<Expr> lhs, rhs;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Expr acc = cst(0);
            for (int i = 0; i < 2; ++i) acc = acc + co[a][i] * frame[b][i];
            lhs.push_back(acc);
            rhs.push_back(cst(a == b ? 1 : 0));
        }
    REQUIRE(equiv_random_many(lhs, rhs, chart_constraints(g, 1)).ok);
}

TEST_CASE("frame fields are invariant under their own family of translations") {
    auto g = builtin_heisenberg3();
    for (auto v : {Variant::Tilde, Variant::Hat}) {
        auto s = splitting_from_group(g, v);
        auto frame = invariant_frame(s, g.identity);
        TranslationMap f{v == Variant::Tilde ? TranslationMap::Family::Left
                                             : TranslationMap::Family::Right,
                         {rat(1, 2), rat(-2), rat(3)}};
        for (int a = 0; a < 3; ++a) {
            TensorField t = TensorField::zeros(3, 1, 0);
            for (int i = 0; i < 3; ++i) t.at({i}) = frame[a][i];
            auto pushed = pushforward(g, s, f, t);
            std::vector<Expr> lhs(pushed.comp), rhs(t.comp);
            INFO(variant_name(v) << " frame " << a);
            REQUIRE(equiv_random_many(lhs, rhs, {}).ok);
        }
    }
}

TEST_CASE("structure constants from the chart match the declared algebras") {
    SECTION("heisenberg") {
        auto g = builtin_heisenberg3();
        auto c = structure_constants(splitting_from_group(g, Variant::Tilde), g.identity);
        REQUIRE(jacobi_holds(c));
        for (int k = 0; k < 3; ++k)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    Rat want = (k == 2 && a == 0 && b == 1)   ? Rat(1)
                               : (k == 2 && a == 1 && b == 0) ? Rat(-1)
                                                              : Rat(0);
                    REQUIRE(c[k][a][b] == want);
                }
    }
    SECTION("affine") {
        auto g = builtin_affine2();
        auto c = structure_constants(splitting_from_group(g, Variant::Tilde), g.identity);
        REQUIRE(c[1][0][1] == 1);
        REQUIRE(c[0][0][1] == 0);
        REQUIRE(jacobi_holds(c));
    }
    SECTION("upper triangular") {
        auto g = builtin_uppertriangular3();
        auto c = structure_constants(splitting_from_group(g, Variant::Tilde), g.identity);
        REQUIRE(c[2][0][2] == 1);
        REQUIRE(c[2][1][2] == -1);
        REQUIRE(c[2][0][1] == 0);
        REQUIRE(jacobi_holds(c));
    }
    SECTION("hat frame brackets give the opposite sign") {
        auto g = builtin_heisenberg3();
        auto c = structure_constants(splitting_from_group(g, Variant::Hat), g.identity);
        REQUIRE(c[2][0][1] == -1);
    }
}

TEST_CASE("torsion at the identity equals the structure constants") {
    for (const char* name : {"heisenberg3", "affine2", "uppertriangular3"}) {
        auto g = builtin_group(name);
        auto s = splitting_from_group(*g, Variant::Tilde);
        auto c = structure_constants(s, g->identity);
        auto tt = torsion(connection_pair(s).tilde);
        Assignment at;
        for (int i = 0; i < g->dim; ++i) at[point_var(0, i + 1)] = g->identity[i];
        for (int i = 0; i < g->dim; ++i)
            for (int j = 0; j < g->dim; ++j)
                for (int k = 0; k < g->dim; ++k) {
                    INFO(name << " " << i << j << k);
                    REQUIRE(eval_exact(tt[i][j][k], at) == c[i][j][k]);
                }
    }
}

TEST_CASE("translation maps") {
    auto g = builtin_affine2();
    std::vector<Rat> a{rat(2), rat(-1)}, b{rat(1, 2), rat(3)};
    SECTION("the left family transformation sends a to b") {
        auto f = translation_left(g, a, b);
        REQUIRE(f.eval(g, a) == b);
    }
    SECTION("the right family transformation sends a to b") {
        auto f = translation_right(g, a, b);
        REQUIRE(f.eval(g, a) == b);
    }
    SECTION("inverse and composition") {
        TranslationMap f{TranslationMap::Family::Right, {rat(3), rat(1, 3)}};
        TranslationMap h{TranslationMap::Family::Right, {rat(-2), rat(5)}};
        std::vector<Rat> p{rat(7), rat(-4)};
        REQUIRE(f.inverse_map(g).eval(g, f.eval(g, p)) == p);
        REQUIRE(f.compose(g, h).eval(g, p) == h.eval(g, f.eval(g, p)));
        TranslationMap fl{TranslationMap::Family::Left, {rat(3), rat(1, 3)}};
        TranslationMap hl{TranslationMap::Family::Left, {rat(-2), rat(5)}};
        REQUIRE(fl.compose(g, hl).eval(g, p) == hl.eval(g, fl.eval(g, p)));
    }
}

TEST_CASE("geometric and declared structure constants agree for the matrix algebra") {
    // The chart of invertible upper triangular matrices carries the algebra
    // with [e1,e3] = e3, [e2,e3] = -e3; its coefficient complex has Betti
    // numbers 1,2,1,0.
    auto g = builtin_uppertriangular3();
    auto c = structure_constants(splitting_from_group(g, Variant::Tilde), g.identity);
    auto sc = StructureConstants::zeros("uppertriangular3", 3);
    for (int k = 0; k < 3; ++k)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) sc.c[k][a][b] = c[k][a][b];
    REQUIRE(sc.antisymmetric());
    auto betti = cohomology_dims(algebra_complex(sc, *CoefficientModule::parse("trivial")));
    REQUIRE(betti == std::vector<std::size_t>{1, 2, 1, 0});
}
