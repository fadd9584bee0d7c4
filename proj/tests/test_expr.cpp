#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "ruledricci/expr.hpp"
#include "support/fd.hpp"

using rr::Expression;
using rr::Jet3;
using rr::ParseError;

TEST_CASE("parse basics") {
    const Expression e = Expression::parse("tanh(t)*cos(t)");
    CHECK(e.referenced_parameters().empty());
    CHECK(e.variable() == "t");
    CHECK(e.eval(0.5) == doctest::Approx(std::tanh(0.5) * std::cos(0.5)));

    const Expression id = Expression::parse("t");
    CHECK(id.eval(3.25) == 3.25);
}

TEST_CASE("syntax error carries the byte offset") {
    try {
        (void)Expression::parse("sin(");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    try {
        (void)Expression::parse("1 + ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
}

TEST_CASE("unknown identifiers are rejected at parse time") {
    CHECK_THROWS_AS((void)Expression::parse("foo + 1"), ParseError);
    CHECK_THROWS_AS((void)Expression::parse("ell*t"), ParseError);  // undeclared
    CHECK_NOTHROW((void)Expression::parse("ell*t", {{"ell", 0.5}}));
}

TEST_CASE("arity mismatch is a parse error") {
    CHECK_THROWS_AS((void)Expression::parse("sin(t, 1)"), ParseError);
    CHECK_THROWS_AS((void)Expression::parse("sin"), ParseError);
}

TEST_CASE("unbound parameter is an evaluation error") {
    const Expression e = Expression::parse("ell*t", {{"ell", 0.5}});
    CHECK_THROWS_AS((void)e.eval_jet(1.0, {}), rr::ValidationError);
    CHECK(e.eval_jet(1.0, {{"ell", 2.0}}).d0 == 2.0);
}

TEST_CASE("polynomial jets are exact") {
    const Expression e = Expression::parse("t^2");
    const Jet3 j = e.eval_jet(3.0);
    CHECK(j.d0 == 9.0);
    CHECK(j.d1 == 6.0);
    CHECK(j.d2 == 2.0);
    CHECK(j.d3 == 0.0);
}

TEST_CASE("maclaurin jets of sin") {
    const Jet3 j = Expression::parse("sin(t)").eval_jet(0.0);
    CHECK(j.d0 == 0.0);
    CHECK(j.d1 == 1.0);
    CHECK(j.d2 == 0.0);
    CHECK(j.d3 == -1.0);
}

TEST_CASE("sech jet matches central finite differences at step 1e-4") {
    const Expression e = Expression::parse("sech(t)");
    const double t = 0.7;
    const Jet3 j = e.eval_jet(t);
    auto f = [](double x) { return 1.0 / std::cosh(x); };
    CHECK(std::abs(j.d1 - fd::d1_central(f, t, 1e-4)) < 1e-6);
    CHECK(std::abs(j.d2 - fd::d2_central(f, t, 1e-4)) < 1e-6);
    // the third derivative needs a higher-order stencil for this accuracy
    CHECK(std::abs(j.d3 - fd::d3(f, t)) < 1e-6);
}

TEST_CASE("precedence and associativity") {
    CHECK(Expression::parse("2+3*4").eval(0.0) == 14.0);
    CHECK(Expression::parse("2*3^2").eval(0.0) == 18.0);
    CHECK(Expression::parse("2^3^2").eval(0.0) == 512.0);  // right-associative
    CHECK(Expression::parse("-t^2").eval(3.0) == -9.0);    // unary binds looser than ^
    CHECK(Expression::parse("t^-2").eval(2.0) == 0.25);
    CHECK(Expression::parse("1-2-3").eval(0.0) == -4.0);
    CHECK(Expression::parse("8/4/2").eval(0.0) == 1.0);
    CHECK_THROWS_AS((void)Expression::parse("2 t"), ParseError);  // no implicit multiplication
}

namespace {

// depth-bounded random expression source; only domain-safe functions so
// every generated expression evaluates everywhere
std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
    std::uniform_real_distribution<double> lit(0.1, 4.0);
    switch (pick(rng)) {
        case 0: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", lit(rng));
            return buf;
        }
        case 1: return "t";
        case 2: return "a";
        case 3: return "(-" + random_expr(rng, depth - 1) + ")";
        case 4: {
            static const char* fns[] = {"sin", "cos", "tanh", "sech", "atan"};
            return std::string(fns[rng() % 5]) + "(" + random_expr(rng, depth - 1) + ")";
        }
        case 5:
            return "(" + random_expr(rng, depth - 1) + "+" + random_expr(rng, depth - 1) + ")";
        case 6:
            return "(" + random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1) + ")";
        default:
            return "(" + random_expr(rng, depth - 1) + "-" + random_expr(rng, depth - 1) + ")";
    }
}

}  // namespace

TEST_CASE("print/parse round trip on a generated corpus") {
    std::mt19937 rng(20240811);
    const std::map<std::string, double> params = {{"a", 1.3}};
    for (int trial = 0; trial < 200; ++trial) {
        const std::string source = random_expr(rng, 4);
        const Expression e = Expression::parse(source, params);
        const std::string printed = e.print();
        const Expression reparsed = Expression::parse(printed, params);
        CHECK(reparsed.print() == printed);
        for (const double t : {-1.1, 0.0, 0.7}) {
            const Jet3 a = e.eval_jet(t, params);
            const Jet3 b = reparsed.eval_jet(t, params);
            CHECK(a.d0 == b.d0);
            CHECK(a.d3 == b.d3);
        }
    }
}

TEST_CASE("evaluation is reentrant across threads") {
    const Expression e = Expression::parse("sech(t)*sin(a*t)+t^3", {{"a", 2.0}});
    const std::map<std::string, double> bind = {{"a", 2.0}};
    const Jet3 reference = e.eval_jet(0.8, bind);
    std::atomic<int> mismatches{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < 4; ++w) {
        pool.emplace_back([&] {
            for (int i = 0; i < 2000; ++i) {
                const Jet3 j = e.eval_jet(0.8, bind);
                if (j.d0 != reference.d0 || j.d3 != reference.d3) ++mismatches;
            }
        });
    }
    for (auto& th : pool) th.join();
    CHECK(mismatches.load() == 0);
}
