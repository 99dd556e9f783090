#include <doctest.h>

#include "mag/scalar.hpp"

#include <random>

using namespace mag;

namespace {

ScalarExpr var(const Chart& c, const std::string& n) { return ScalarExpr::variable(c, n); }
ScalarExpr konst(const Chart& c, long v) { return ScalarExpr::constant(c, Rational(v)); }

// Small random polynomial expression, at most three terms of degree <= 2.
ScalarExpr random_poly_expr(const Chart& c, std::mt19937_64& rng) {
    Poly p(c);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        Mono m(c.size(), 0);
        for (int k = 0; k < 2; ++k)
            if (rng() % 2)
                m[rng() % c.size()] += 1;
        long coeff = static_cast<long>(rng() % 11) - 5;
        p.add_term(m, Rational(coeff));
    }
    return ScalarExpr(p);
}

} // namespace

TEST_CASE("normalize cancels common factors") {
    Chart c = base_chart();
    ScalarExpr x = var(c, "x"), y = var(c, "y");
    // (x^2 - y^2)/(x - y) = x + y
    ScalarExpr e = (x * x - y * y) / (x - y);
    CHECK(e == x + y);
}

TEST_CASE("normalize zero and content") {
    Chart c = base_chart();
    ScalarExpr p = var(c, "p"), q = var(c, "q"), x = var(c, "x");
    ScalarExpr zero = konst(c, 0) / (p * q + konst(c, 1));
    CHECK(zero.is_zero());
    CHECK(zero.den() == Poly::constant(c, 1));
    CHECK((x + x) / konst(c, 2) == x);
}

TEST_CASE("canonical form: denominator monic, coprime") {
    Chart c = base_chart();
    ScalarExpr x = var(c, "x"), y = var(c, "y");
    ScalarExpr e = x / (konst(c, 2) * y);
    CHECK(e.den() == Poly::variable(c, 1));
    CHECK(e.num() == (Poly::variable(c, 0) * Rational(1, 2)));
    ScalarExpr f = ScalarExpr::fraction(Poly::variable(c, 0) * Poly::variable(c, 0),
                                        Poly::variable(c, 0));
    CHECK(f == x);
}

TEST_CASE("field arithmetic") {
    Chart c = base_chart();
    ScalarExpr x = var(c, "x"), y = var(c, "y"), p = var(c, "p"), q = var(c, "q");
    CHECK((p + (-p)).is_zero());
    CHECK((x + y) * (x - y) == x * x - y * y);
    ScalarExpr inv = konst(c, 1) / q;
    CHECK(inv * q == konst(c, 1));
    CHECK_THROWS_AS(x / (q - q), DivisionByZeroError);
    CHECK_THROWS_AS(ScalarExpr::fraction(Poly::variable(c, 0), Poly(c)), DivisionByZeroError);
}

TEST_CASE("partial derivatives") {
    Chart c = base_chart();
    ScalarExpr x = var(c, "x"), y = var(c, "y"), z = var(c, "z"), p = var(c, "p"), q = var(c, "q");
    CHECK((p * x * x).partial("x") == konst(c, 2) * p * x);
    CHECK((konst(c, 1) / q).partial("q") == -(konst(c, 1) / (q * q)));
    ScalarExpr legendre = z - p * x - q * y;
    CHECK(legendre.partial("z") == konst(c, 1));
    CHECK_THROWS_AS(x.partial("w"), DomainError);
}

TEST_CASE("substitution") {
    Chart c = base_chart();
    Chart s = surface_chart();
    ScalarExpr x = var(c, "x"), y = var(c, "y"), z = var(c, "z"), p = var(c, "p"), q = var(c, "q");
    ScalarExpr legendre = z - p * x - q * y;

    std::map<std::string, ScalarExpr> to_surface = {
        {"x", var(s, "u")}, {"y", var(s, "v")},
        {"z", konst(s, 0)}, {"p", konst(s, 0)}, {"q", konst(s, 0)}};
    CHECK(legendre.substitute(to_surface).is_zero());

    std::map<std::string, ScalarExpr> identity;
    for (const auto& n : c.names())
        identity.emplace(n, var(c, n));
    CHECK(x.substitute(identity) == x);

    Chart nf({"X", "Y", "Z", "P", "Q"});
    ScalarExpr XY = var(nf, "X") * var(nf, "Y");
    std::map<std::string, ScalarExpr> remark = {
        {"X", p}, {"Y", q}, {"Z", z - p * x - q * y}, {"P", -x}, {"Q", -y}};
    CHECK(XY.substitute(remark) == p * q);

    std::map<std::string, ScalarExpr> partial_map = {{"x", var(s, "u")}};
    CHECK_THROWS_AS(x.substitute(partial_map), DomainError);

    // substitution hitting a pole of the result
    ScalarExpr inv = konst(c, 1) / z;
    std::map<std::string, ScalarExpr> zk = to_surface;
    CHECK_THROWS_AS(inv.substitute(zk), DivisionByZeroError);
}

TEST_CASE("eval_at") {
    Chart c = base_chart();
    ScalarExpr x = var(c, "x"), y = var(c, "y"), p = var(c, "p"), q = var(c, "q");
    std::map<std::string, Rational> pt = {
        {"x", 1}, {"y", 2}, {"z", 0}, {"p", 0}, {"q", 0}};
    CHECK((x + y).eval_at(pt) == 3);
    CHECK_THROWS_AS((konst(c, 1) / q).eval_at(pt), PoleError);
    pt["p"] = 3;
    pt["q"] = 9;
    CHECK((p * p - q).eval_at(pt) == 0);
}

TEST_CASE("field axioms and oracle on random expressions") {
    Chart c = base_chart();
    std::mt19937_64 rng(20240721);
    for (int iter = 0; iter < 50; ++iter) {
        ScalarExpr a = random_poly_expr(c, rng);
        ScalarExpr b = random_poly_expr(c, rng);
        ScalarExpr d = random_poly_expr(c, rng);
        CHECK((a + b) + d == a + (b + d));
        CHECK(a * (b + d) == a * b + a * d);
        CHECK((a + (-a)).is_zero());
        if (!a.is_zero())
            CHECK(a * (konst(c, 1) / a) == konst(c, 1));

        // Leibniz and commuting partials
        for (std::size_t v = 0; v < 2; ++v) {
            CHECK((a * b).partial(v) == a.partial(v) * b + a * b.partial(v));
            CHECK(a.partial(0).partial(v + 1) == a.partial(v + 1).partial(0));
        }

        // numeric homomorphism oracle
        for (int s = 0; s < 4; ++s) {
            std::map<std::string, Rational> pt;
            for (const auto& n : c.names())
                pt[n] = Rational(static_cast<long>(rng() % 21) - 10);
            try {
                Rational lhs = (a * b + d).eval_at(pt);
                Rational rhs = a.eval_at(pt) * b.eval_at(pt) + d.eval_at(pt);
                CHECK(lhs == rhs);
            } catch (const PoleError&) {
                // polynomial expressions have no poles; unreachable
                CHECK(false);
            }
        }
    }
}

TEST_CASE("gcd and sqrt corner cases") {
    Chart c = base_chart();
    Poly x = Poly::variable(c, 0), y = Poly::variable(c, 1);
    Poly a = (x + y) * (x - y);
    Poly b = (x + y) * (x + y);
    Poly g = poly_gcd(a, b);
    CHECK(g == x + y);

    auto s = poly_sqrt(b);
    REQUIRE(s.has_value());
    CHECK(*s == x + y);
    CHECK(!poly_sqrt(a).has_value());
    CHECK(!poly_sqrt(x).has_value());
    auto s2 = poly_sqrt(Poly::constant(c, Rational(9, 4)));
    REQUIRE(s2.has_value());
    CHECK(s2->constant_value() == Rational(3, 2));
    CHECK(!poly_sqrt(Poly::constant(c, -1)).has_value());
}

TEST_CASE("scalar rendering is canonical") {
    Chart c = base_chart();
    ScalarExpr x = var(c, "x"), y = var(c, "y");
    CHECK(to_string(x + y) == "x + y");
    CHECK(to_string(konst(c, 0)) == "0");
    CHECK(to_string(-x) == "-x");
    CHECK(to_string((x - y) / (x + y)) == "(x - y)/(x + y)");
    CHECK(to_string(konst(c, 3) * x * y) == "3*x*y");
    CHECK(to_string(x.pow(2) - konst(c, 1) / konst(c, 2)) == "x^2 - 1/2");
}
