#include <catch2/catch_amalgamated.hpp>

#include "llg/calculus.hpp"
#include "llg/equiv.hpp"
#include "llg/parser.hpp"

using namespace llg;

namespace {
Expr X(int i) { return var(point_var(0, i)); }
}  // namespace

TEST_CASE("rational literals and constant folding") {
    auto e = parse("3/4", 1);
    REQUIRE(e->op == Op::Const);
    REQUIRE(e->value == rat(3, 4));

    // A spaced slash is division of two constants, which folds to the same value.
    REQUIRE(parse("3 / 4", 1)->value == rat(3, 4));
    REQUIRE(parse("6/8", 1)->value == rat(3, 4));
    REQUIRE(parse("2^10", 1)->value == rat(1024));
    REQUIRE(parse("2^(-2)", 1)->value == rat(1, 4));
    REQUIRE_THROWS_AS(parse("1/0", 1), DomainError);
    REQUIRE_THROWS_AS(parse("0^(-1)", 1), DomainError);
}

TEST_CASE("variable spellings") {
    REQUIRE(parse("x2", 3)->var == point_var(0, 2));
    REQUIRE(parse("y1", 3)->var == point_var(1, 1));
    REQUIRE(parse("z3", 3)->var == point_var(2, 3));
    REQUIRE(parse("w1", 3)->var == point_var(3, 1));
    REQUIRE(parse("xi2", 3)->var == fiber_var(0, 2));
    REQUIRE(parse("eta1", 3)->var == fiber_var(1, 1));
    REQUIRE(parse("zeta3", 3)->var == fiber_var(2, 3));
    REQUIRE(parse("th2", 3)->var == cofiber_var(0, 2));
    REQUIRE(parse("ph1", 3)->var == cofiber_var(1, 1));
    REQUIRE(parse("t", 3)->var == param_var());
    REQUIRE_THROWS_AS(parse("x4", 3), ParseError);
    REQUIRE_THROWS_AS(parse("x0", 3), ParseError);
    REQUIRE_THROWS_AS(parse("q1", 3), ParseError);
}

TEST_CASE("trivial rewrites at construction") {
    auto x = X(1);
    REQUIRE(same_tree(add(cst(0), x), x));
    REQUIRE(same_tree(add(x, cst(0)), x));
    REQUIRE(same_tree(sub(x, cst(0)), x));
    REQUIRE(same_tree(mul(cst(1), x), x));
    REQUIRE(same_tree(mul(x, cst(1)), x));
    REQUIRE(is_zero(mul(cst(0), x)));
    REQUIRE(is_zero(mul(x, cst(0))));
    REQUIRE(is_one(pow(x, 0)));
    REQUIRE(same_tree(pow(x, 1), x));
    REQUIRE(same_tree(div(x, cst(1)), x));
    // Non-trivial shapes are left alone.
    REQUIRE(!same_tree(add(x, x), mul(cst(2), x)));
}

TEST_CASE("parser precedence and round trip") {
    auto e = parse("x1 + x2*x3^2 - 1/2", 3);
    auto expected = sub(add(X(1), mul(X(2), pow(X(3), 2))), cst(rat(1, 2)));
    REQUIRE(same_tree(e, expected));

    for (const char* src :
         {"x1", "-x1", "x1 - (x2 - x3)", "x1*x2/x3", "(x1+x2)^3", "x1^(-2)", "2/3*x1 - 7",
          "x1*(x2+1/3)^2 - x3/5", "exp(x1)*sin(x2)+log(x3)-cos(x1)", "x1 - -x2", "t*xi1 + th2"}) {
        auto parsed = parse(src, 3);
        auto reparsed = parse(to_string(parsed), 3);
        INFO(src << "  ->  " << to_string(parsed));
        REQUIRE(same_tree(parsed, reparsed));
    }
}

TEST_CASE("parse errors carry position info") {
    REQUIRE_THROWS_AS(parse("x1 + ", 3), ParseError);
    REQUIRE_THROWS_AS(parse("(x1", 3), ParseError);
    REQUIRE_THROWS_AS(parse("x1 x2", 3), ParseError);
    REQUIRE_THROWS_AS(parse("", 3), ParseError);
    REQUIRE_THROWS_AS(parse("sin x1", 3), ParseError);
    REQUIRE_THROWS_AS(parse("x1^x2", 3), ParseError);
}

TEST_CASE("exact evaluation") {
    auto e = parse("(x1 + 1/2)^2 / x2", 2);
    Assignment at{{point_var(0, 1), rat(1, 2)}, {point_var(0, 2), rat(3)}};
    REQUIRE(eval_exact(e, at) == rat(1, 3));

    Assignment zero{{point_var(0, 1), rat(0)}, {point_var(0, 2), rat(0)}};
    REQUIRE_THROWS_AS(eval_exact(parse("1/x1", 2), zero), DomainError);
    REQUIRE_THROWS_AS(eval_exact(parse("x1^(-1)", 2), zero), DomainError);
    REQUIRE_THROWS_AS(eval_exact(parse("sin(x1)", 2), zero), EvalError);
    REQUIRE_THROWS_AS(eval_exact(parse("x1 + 1", 1), Assignment{}), EvalError);
}

TEST_CASE("float evaluation") {
    Assignment at{{point_var(0, 1), rat(0)}};
    REQUIRE(eval_float(parse("sin(x1) + cos(x1)", 1), at) == Catch::Approx(1.0));
    REQUIRE(eval_float(parse("exp(x1)", 1), at) == Catch::Approx(1.0));
    REQUIRE_THROWS_AS(eval_float(parse("log(x1)", 1), at), DomainError);
    REQUIRE_THROWS_AS(eval_float(parse("1/x1", 1), at), DomainError);
}

TEST_CASE("differentiation rules") {
    auto v = point_var(0, 1);
    SECTION("power rule") {
        auto d = diff(parse("x1^3", 1), v);
        REQUIRE(equiv_random(d, parse("3*x1^2", 1)));
    }
    SECTION("product and quotient") {
        auto d = diff(parse("x1^2*x2", 2), v);
        REQUIRE(equiv_random(d, parse("2*x1*x2", 2)));
        auto q = diff(parse("x2/x1", 2), v);
        REQUIRE(equiv_random(q, parse("-x2/x1^2", 2), {X(1)}));
    }
    SECTION("chain rule through functions") {
        auto d = diff(parse("exp(x1^2)", 1), v);
        EquivOptions opt;
        opt.mode = EvalMode::Float;
        opt.box = 2;
        REQUIRE(equiv_random(d, parse("2*x1*exp(x1^2)", 1), {}, opt));
        auto ds = diff(parse("sin(x1)", 1), v);
        REQUIRE(equiv_random(ds, parse("cos(x1)", 1), {}, opt));
        auto dl = diff(parse("log(x1)", 1), v);
        opt.box = 3;
        REQUIRE(equiv_random(dl, parse("1/x1", 1), {parse("x1 - 4", 1), X(1)}, opt));
    }
    SECTION("constants and unrelated variables") {
        REQUIRE(is_zero(diff(parse("x2^5 + 3", 2), v)));
        REQUIRE(is_zero(diff(cst(rat(22, 7)), v)));
    }
}

TEST_CASE("substitution") {
    auto e = parse("x1^2 + x1*x2", 2);
    std::map<VarRef, Expr> with{{point_var(0, 1), parse("y1 + 1", 2)}};
    auto s = subst(e, with);
    REQUIRE(equiv_random(s, parse("(y1+1)^2 + (y1+1)*x2", 2)));

    std::map<VarRef, Expr> blocks;
    map_block(blocks, Block::Point, 0, {parse("y1", 2), parse("y2", 2)});
    REQUIRE(equiv_random(subst(e, blocks), parse("y1^2 + y1*y2", 2)));
}

TEST_CASE("randomized equivalence checking") {
    SECTION("accepts identities") {
        REQUIRE(equiv_random(parse("(x1-1)*(x1+1)", 1), parse("x1^2 - 1", 1)));
        REQUIRE(equiv_zero(parse("(x1+x2)^2 - x1^2 - 2*x1*x2 - x2^2", 2)));
    }
    SECTION("rejects non-identities with a witness") {
        auto r = equiv_random(parse("x1", 2), parse("x2", 2));
        REQUIRE(!r.ok);
        REQUIRE(!r.message.empty());
        REQUIRE(r.witness.size() == 2);
    }
    SECTION("deterministic under a fixed seed") {
        EquivOptions opt;
        opt.seed = 12345;
        auto a = equiv_random(parse("x1", 2), parse("x2", 2), {}, opt);
        auto b = equiv_random(parse("x1", 2), parse("x2", 2), {}, opt);
        REQUIRE(a.message == b.message);
        opt.seed = 999;
        auto c = equiv_random(parse("x1", 2), parse("x2", 2), {}, opt);
        REQUIRE(a.message != c.message);
    }
    SECTION("constraints keep samples off excluded sets") {
        // 1/x1 appears on both sides; x1 = 0 must never be sampled.
        REQUIRE(equiv_random(parse("1/x1 + x1", 1), parse("(1 + x1^2)/x1", 1), {X(1)}));
    }
    SECTION("domain errors inside the compared expressions trigger redraws") {
        REQUIRE(equiv_random(parse("x1/x1", 1), parse("1", 1)));
    }
    SECTION("float mode tolerates representation noise") {
        EquivOptions opt;
        opt.mode = EvalMode::Float;
        opt.box = 2;
        REQUIRE(equiv_random(parse("sin(x1)^2 + cos(x1)^2", 1), parse("1", 1), {}, opt));
        REQUIRE(!equiv_random(parse("sin(x1)", 1), parse("cos(x1)", 1), {}, opt).ok);
    }
    SECTION("componentwise variant shares samples across components") {
        std::vector<Expr> lhs{parse("x1+x2", 2), parse("x1*x2", 2)};
        std::vector<Expr> rhs{parse("x2+x1", 2), parse("x2*x1", 2)};
        REQUIRE(equiv_random_many(lhs, rhs, {}));
        rhs[1] = parse("x2", 2);
        auto r = equiv_random_many(lhs, rhs, {});
        REQUIRE(!r.ok);
        REQUIRE(r.message.find("component 1") != std::string::npos);
    }
}

TEST_CASE("transcendental detection") {
    REQUIRE(has_transcendental(parse("x1*sin(x2)", 2)));
    REQUIRE(!has_transcendental(parse("x1^3/x2 - 5", 2)));
}
