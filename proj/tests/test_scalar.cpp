#include <doctest.h>

#include <cmath>
#include <random>

#include "normspec/errors.hpp"
#include "normspec/expr.hpp"
#include "normspec/monic.hpp"
#include "normspec/poly2.hpp"
#include "oracles.hpp"

using namespace normspec;

TEST_CASE("expression evaluation") {
    CHECK(parse_expr("abs(t)^2").eval({-3.0, -3.0, 0}) == Complex(9.0));
    const double t = 1.0 / M_PI;
    CHECK(std::abs(parse_expr("(2+sin(1/abs(t)))").eval({t, t, 0}) - 2.0) < 1e-14);
    CHECK(std::abs(parse_expr("t^(3)/t").eval({2.0, 2.0, 0}) - 4.0) < 1e-15);
    CHECK(std::abs(parse_expr("-t^2").eval({3, 3, 0}) + 9.0) < 1e-15);
    CHECK(std::abs(parse_expr("2^3^2").eval({}) - 512.0) < 1e-12);
    CHECK(std::abs(parse_expr("2^-1").eval({}) - 0.5) < 1e-15);
    CHECK(std::abs(parse_expr("exp(i*3.141592653589793)").eval({}) + 1.0) < 1e-15);
    CHECK(std::abs(parse_expr("1 - 2 - 3").eval({}) + 4.0) < 1e-15);
    CHECK(std::abs(parse_expr("8/2/2").eval({}) - 2.0) < 1e-15);
    CHECK(std::abs(parse_expr("x*y").eval({0, 2, 3}) - 6.0) < 1e-15);
    CHECK_THROWS_AS(parse_expr("1/t").eval({0, 0, 0}), EvalError);
}

TEST_CASE("expression syntax errors carry offsets") {
    try {
        parse_expr("1 + * 2");
        FAIL("no throw");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
        CHECK(e.expected().find("number") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expr("sin 2"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("(1+2"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("foo(1)"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("1 2"), SyntaxError);
    CHECK_THROWS_AS(parse_expr(""), SyntaxError);
}

TEST_CASE("printer is canonical") {
    CHECK(parse_expr("1+2*t").print() == "(1+(2*t))");
    CHECK(parse_expr("-t^2").print() == "(-(t^2))");
    CHECK(parse_expr("abs(x)").print() == "abs(x)");
    CHECK(parse_expr("0.1").print() == "0.10000000000000001");
}

namespace {

ScalarExpr random_expr(std::mt19937_64& rng, int depth) {
    using Op = ScalarExpr::Op;
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 4 : 15);
    const int k = pick(rng);
    switch (k) {
    case 0: return ScalarExpr::number(std::uniform_real_distribution<double>(0, 100)(rng));
    case 1: return ScalarExpr::variable(Op::VarT);
    case 2: return ScalarExpr::variable(Op::VarX);
    case 3: return ScalarExpr::variable(Op::VarY);
    case 4: return ScalarExpr::variable(Op::ImagUnit);
    case 5: return ScalarExpr::binary(Op::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: return ScalarExpr::binary(Op::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 7: return ScalarExpr::binary(Op::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 8: return ScalarExpr::binary(Op::Div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 9: return ScalarExpr::binary(Op::Pow, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 10: return ScalarExpr::unary(Op::Neg, random_expr(rng, depth - 1));
    case 11: return ScalarExpr::unary(Op::Abs, random_expr(rng, depth - 1));
    case 12: return ScalarExpr::unary(Op::Sin, random_expr(rng, depth - 1));
    case 13: return ScalarExpr::unary(Op::Cos, random_expr(rng, depth - 1));
    case 14: return ScalarExpr::unary(Op::Sqrt, random_expr(rng, depth - 1));
    default: return ScalarExpr::unary(Op::Exp, random_expr(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("print-parse-print is idempotent on random trees") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const ScalarExpr e = random_expr(rng, 5);
        const std::string once = e.print();
        const std::string twice = parse_expr(once).print();
        REQUIRE(once == twice);
    }
}

TEST_CASE("series order") {
    CHECK(series_order(Series({0, 0, 3, 1})) == 2);
    CHECK(series_order(Series(std::vector<Complex>(5))) == kInfiniteOrder);
    CHECK(Series({1e-15, 1, 0}, 1e-12).order() == 1);
}

TEST_CASE("series ring laws") {
    std::mt19937_64 rng(11);
    const std::size_t T = 12;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> a(T), b(T), c(T);
        for (std::size_t k = 0; k < T; ++k) a[k] = oracle::rand_c(rng), b[k] = oracle::rand_c(rng), c[k] = oracle::rand_c(rng);
        const Series f(a), g(b), h(c);
        const Series l = (f * g) * h, r = f * (g * h);
        const Series one = Series::constant(1.0, T);
        const auto ref = oracle::conv(oracle::conv(a, b, T), c, T);
        for (std::size_t k = 0; k < T; ++k) {
            CHECK(std::abs(l[k] - r[k]) < 1e-14 * 100);
            CHECK(std::abs(l[k] - ref[k]) < 1e-12);
            CHECK(std::abs((f * one)[k] - f[k]) <= 1e-14);
        }
        const Series inv = f.inverse();
        const Series prod = f * inv;
        CHECK(std::abs(prod[0] - 1.0) < 1e-10);
        for (std::size_t k = 1; k < T; ++k) CHECK(std::abs(prod[k]) < 1e-8 * (1 + inv.max_abs()));
    }
}

TEST_CASE("poly_roots examples") {
    auto sorted = [](std::vector<Complex> v) {
        std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return v;
    };
    auto r1 = sorted(poly_roots(MonicPoly{{0.0, -1.0}}));
    CHECK(std::abs(r1[0] + 1.0) < 1e-12);
    CHECK(std::abs(r1[1] - 1.0) < 1e-12);
    auto r2 = poly_roots(MonicPoly{{2.0, 1.0}});
    CHECK(std::abs(r2[0] - 1.0) < 1e-7);
    CHECK(std::abs(r2[1] - 1.0) < 1e-7);
    const Complex I(0, 1);
    auto r3 = poly_roots(MonicPoly{{1.0 + I, I, 0.0}});
    CHECK(oracle::multiset_distance(r3, {0.0, 1.0, I}) < 1e-12);
}

TEST_CASE("Vieta round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 8;
        std::vector<Complex> roots(n);
        for (auto& r : roots) r = oracle::rand_c(rng, 7.0);
        const MonicPoly p = from_roots(roots);
        // Cross-check the elementary symmetric functions against direct expansion.
        const auto c = oracle::expand_roots(roots);
        for (int j = 1; j <= n; ++j) CHECK(std::abs(p.power_coeffs()[n - j] - c[n - j]) < 1e-9 * (1 + std::abs(c[n - j])));
        CHECK(oracle::multiset_distance(poly_roots(p), roots) < 1e-8);
    }
}

TEST_CASE("delta_k examples and permutation invariance") {
    CHECK(delta_k({1.0, -1.0}, 2) == Complex(4.0));
    CHECK(delta_k({2.5, 2.5}, 2) == Complex(0.0));
    CHECK(delta_k({0.0, 1.0, 1.0}, 2) == Complex(2.0));
    CHECK(delta_k({0.0, 1.0, 1.0}, 3) == Complex(0.0));
    CHECK(distinct_count({1.0, -1.0}, 1e-12) == 2);
    CHECK(distinct_count({1.0, 1.0, 1.0}, 1e-12) == 1);
    CHECK(distinct_count({0.0, 1.0, 1.0}, 1e-12) == 2);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> roots(5);
        for (auto& r : roots) r = Complex(std::round(oracle::rand_c(rng, 4).real()), std::round(oracle::rand_c(rng, 4).imag()));
        for (int k = 2; k <= 5; ++k) {
            auto perm = roots;
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(delta_k(perm, k) == delta_k(roots, k));
        }
        CHECK(distinct_count(roots, 1e-9) == static_cast<int>(cluster_roots(roots, 1e-9).size()));
    }
}

TEST_CASE("Poly2 algebra and charts") {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    const Poly2 p = x * x + y * y;
    const Poly2 c1 = p.substitute_chart(1);
    CHECK(c1 == x * x + x * x * y * y);
    CHECK(x.substitute_chart(1) == x);
    CHECK(y.substitute_chart(2) == y);
    CHECK(y.substitute_chart(1) == x * y);
    CHECK(x.substitute_chart(2) == x * y);
    CHECK(c1.divide_monomial({2, 0}) == Poly2(1.0) + y * y);
    CHECK_THROWS_AS(p.divide_monomial({1, 0}), InvalidArgument);
    CHECK(p.min_exponent() == Exponent{0, 0});
    CHECK((x * y * 3.0).derivative(0) == y * 3.0);
    const Poly2 q = Poly2::from_univariate({1.0, 2.0, 3.0});
    const Poly2 qs = q.shift_univariate(2.0);
    for (double t : {-1.0, 0.0, 0.7})
        CHECK(std::abs(qs.eval(t) - q.eval(t + 2.0)) < 1e-12);
    bool lost = false;
    q.to_series(2, &lost);
    CHECK(lost);
    CHECK((p - p).is_zero());
}
