#pragma once

#include <cctype>
#include <optional>
#include <string>

#include "expr.hpp"

namespace llg {

/// Recursive-descent parser for the expression grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' integer)?
///   atom   := number | name | func '(' expr ')' | '(' expr ')'
/// Numbers written as digits '/' digits with no spaces are rational
/// literals; names are x/y/z/w (point copies), xi/eta/zeta (fiber slots),
/// th/ph (covector slots), each with a 1-based component, and bare t.
class Parser {
  public:
    Parser(std::string src, int dim) : src_(std::move(src)), dim_(dim) {}

    Expr parse() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return e;
    }

  private:
    std::string src_;
    std::size_t pos_ = 0;
    int dim_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + src_ + "\"");
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (eat('+')) {
                e = add(e, parse_term());
            } else if (eat('-')) {
                e = sub(e, parse_term());
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (eat('*')) {
                e = mul(e, parse_factor());
            } else if (eat('/')) {
                e = div(e, parse_factor());
            } else {
                return e;
            }
        }
    }

    Expr parse_factor() {
        if (eat('-')) return neg(parse_factor());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (eat('^')) return pow(base, parse_exponent());
        return base;
    }

    long parse_exponent() {
        skip_ws();
        bool parens = eat('(');
        skip_ws();
        bool negate = eat('-');
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail("expected integer exponent");
        long k = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            k = k * 10 + (src_[pos_] - '0');
            if (k > 64) fail("exponent too large");
            ++pos_;
        }
        if (parens && !eat(')')) fail("expected ')' after exponent");
        return negate ? -k : k;
    }

    Expr parse_atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Expr e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        fail("expected a value");
    }

    Expr parse_number() {
        std::string digits = read_digits();
        // Rational literal only when the slash follows with no whitespace.
        if (pos_ < src_.size() && src_[pos_] == '/' && pos_ + 1 < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
            ++pos_;
            std::string den = read_digits();
            return cst(parse_rat(digits + "/" + den));
        }
        return cst(parse_rat(digits));
    }

    std::string read_digits() {
        std::string out;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) out += src_[pos_++];
        return out;
    }

    Expr parse_name() {
        skip_ws();
        std::string alpha;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) alpha += src_[pos_++];
        if (alpha == "exp" || alpha == "log" || alpha == "sin" || alpha == "cos") {
            Op op = alpha == "exp" ? Op::Exp : alpha == "log" ? Op::Log : alpha == "sin" ? Op::Sin : Op::Cos;
            if (!eat('(')) fail("expected '(' after " + alpha);
            Expr arg = parse_expr();
            if (!eat(')')) fail("expected ')' after " + alpha + " argument");
            return func(op, arg);
        }
        std::string digits = read_digits();
        if (alpha == "t" && digits.empty()) return var(param_var());
        if (digits.empty()) fail("variable " + alpha + " needs a component index");
        int comp = std::stoi(digits);
        if (comp < 1 || comp > dim_)
            fail("component " + digits + " out of range for dimension " + std::to_string(dim_));
        if (alpha == "x") return var(point_var(0, comp));
        if (alpha == "y") return var(point_var(1, comp));
        if (alpha == "z") return var(point_var(2, comp));
        if (alpha == "w") return var(point_var(3, comp));
        if (alpha == "xi") return var(fiber_var(0, comp));
        if (alpha == "eta") return var(fiber_var(1, comp));
        if (alpha == "zeta") return var(fiber_var(2, comp));
        if (alpha == "th") return var(cofiber_var(0, comp));
        if (alpha == "ph") return var(cofiber_var(1, comp));
        fail("unknown variable " + alpha);
    }
};

inline Expr parse(const std::string& src, int dim) { return Parser(src, dim).parse(); }

}  // namespace llg
