#include <doctest.h>

#include <cmath>
#include <string>

#include "infeig/errors.hpp"
#include "infeig/expr.hpp"
#include "support.hpp"

using namespace infeig;
using expr::Variables;

namespace {

double at(const std::string& src, double x, double y = 0.0, double r = 0.0) {
    return expr::parse(src).eval(Variables{x, y, r});
}

// random source text over the whole grammar
std::string random_expr(test::Gen& gen, int depth) {
    if (depth == 0 || gen.integer(0, 5) == 0) {
        switch (gen.integer(0, 4)) {
            case 0: return "x";
            case 1: return "y";
            case 2: return "r";
            default: {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3f", gen.uniform(0.1, 3.0));
                return buf;
            }
        }
    }
    const std::string a = random_expr(gen, depth - 1);
    const std::string b = random_expr(gen, depth - 1);
    switch (gen.integer(0, 11)) {
        case 0: return a + " + " + b;
        case 1: return a + " - " + b;
        case 2: return a + " * " + b;
        case 3: return "(" + a + ") / (2 + abs(" + b + "))";
        case 4: return "-" + a;
        case 5: return "sin(" + a + ")";
        case 6: return "cos(" + a + ")";
        case 7: return "exp(-abs(" + a + "))";
        case 8: return "sqrt(abs(" + a + "))";
        case 9: return "min(" + a + ", " + b + ")";
        case 10: return "max(" + a + ", " + b + ")^2";
        default: return "piecewise(r, 0.3, " + a + ", 0.7, " + b + ", 1)";
    }
}

}  // namespace

TEST_CASE("basic evaluation") {
    CHECK(at("2*x + 1", 0.5) == 2.0);
    CHECK(at("exp(-5*r)", 0.3, 0.4, 0.0) == 1.0);
    CHECK(at("piecewise(r, 0.2, 1.0, 0.8, -1.0, -2.0)", 0, 0, 0.5) == -1.0);
    CHECK(at("piecewise(r, 0.2, 1.0, 0.8, -1.0, -2.0)", 0, 0, 0.1) == 1.0);
    CHECK(at("piecewise(r, 0.2, 1.0, 0.8, -1.0, -2.0)", 0, 0, 0.9) == -2.0);
    CHECK(at("piecewise(x, 0.5, 3, 4)", 0.5) == 3.0);
}

TEST_CASE("precedence and associativity") {
    CHECK(at("2^3^2", 0) == 512.0);
    CHECK(at("-2^2", 0) == -4.0);
    CHECK(at("1 - 2 - 3", 0) == -4.0);
    CHECK(at("8 / 4 / 2", 0) == 1.0);
    CHECK(at("1 + 2 * 3", 0) == 7.0);
    CHECK(at("(1 + 2) * 3", 0) == 9.0);
    CHECK(at("2 * -x", 3.0) == -6.0);
    CHECK(at("min(x, y) + max(x, y)", 1.0, 5.0) == 6.0);
}

TEST_CASE("radial variable uses the domain center") {
    const expr::Ast ast = expr::parse("r");
    CHECK(ast.eval({3.0, 4.0}, {0.0, 0.0}) == 5.0);
    CHECK(ast.eval({4.0, 4.0}, {1.0, 0.0}) == 5.0);
}

TEST_CASE("syntax errors carry byte offsets") {
    try {
        expr::parse("1 + * 2");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
        CHECK_FALSE(e.expected().empty());
    }
    try {
        expr::parse("sin(x");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 5);
    }
    CHECK_THROWS_AS(expr::parse(""), SyntaxError);
    CHECK_THROWS_AS(expr::parse("1 2"), SyntaxError);
    CHECK_THROWS_AS(expr::parse("piecewise(r, 0.8, 1, 0.2, 2, 3)"), SyntaxError);
}

TEST_CASE("unknown identifiers") {
    try {
        expr::parse("2*z + 1");
        FAIL("expected an unknown identifier");
    } catch (const UnknownIdentifier& e) {
        CHECK(e.name() == "z");
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(expr::parse("tan(x)"), UnknownIdentifier);
}

TEST_CASE("evaluation errors instead of non-finite values") {
    CHECK_THROWS_AS(at("1/x", 0.0), EvalError);
    CHECK_THROWS_AS(at("sqrt(x)", -1.0), EvalError);
    CHECK_THROWS_AS(at("x^0.5", -1.0), EvalError);
    CHECK(at("sqrt(x)", 4.0) == 2.0);
    CHECK(at("x^2", -3.0) == 9.0);
}

TEST_CASE("constant detection") {
    CHECK(expr::parse("-3").is_constant());
    CHECK(expr::parse("2*sin(1)").is_constant());
    CHECK_FALSE(expr::parse("2*sin(x)").is_constant());
}

TEST_CASE("print and parse round-trip on random expressions") {
    test::Gen gen(12345);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string src = random_expr(gen, 4);
        const expr::Ast a = expr::parse(src);
        const expr::Ast b = expr::parse(a.print());
        for (int p = 0; p < 5; ++p) {
            const Variables v{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(0, 1.5)};
            double va = NAN, vb = NAN;
            bool ta = false, tb = false;
            try {
                va = a.eval(v);
            } catch (const EvalError&) {
                ta = true;
            }
            try {
                vb = b.eval(v);
            } catch (const EvalError&) {
                tb = true;
            }
            CHECK(ta == tb);
            if (!ta) CHECK(std::abs(va - vb) <= 1e-12 * (1.0 + std::abs(va)));
        }
    }
}

TEST_CASE("one expression at 1000 random points") {
    test::Gen gen(7);
    const expr::Ast a = expr::parse("piecewise(r, 0.2, 1.5, 0.8, -1 + 0.5*sin(3*x), -1) * exp(-y^2) + abs(x - y)");
    const expr::Ast b = expr::parse(a.print());
    for (int p = 0; p < 1000; ++p) {
        const Variables v{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(0, 1.5)};
        CHECK(std::abs(a.eval(v) - b.eval(v)) <= 1e-12);
    }
}
