#include <doctest.h>

#include "mag/dsl.hpp"

using namespace mag;

namespace {

ScalarExpr var(const Chart& c, const std::string& n) { return ScalarExpr::variable(c, n); }
ScalarExpr konst(const Chart& c, long v) { return ScalarExpr::constant(c, Rational(v)); }
DiffForm d(const Chart& c, const std::string& n) { return DiffForm::differential(c, n); }

const char* wave_doc = R"(system "wave"
coords x y z p q
A = 0  B = 0  C = 1  D = 0  E = 0
integral F1 = p - x^2
surface N1: x = u, y = v, z = u^3/3, p = u^2, q = 0
check classify characteristics derived-flag hypotheses integral F1 surface N1 with F1
)";

const char* counterexample_doc = R"(system "counterexample"
coords x y z p q
A = 0  B = 0  C = 0  D = 0  E = 1
integral F1 = z
surface N1: x = u, y = v, z = 0, p = 0, q = 0
check classify characteristics hypotheses integral F1 surface N1 with F1
)";

} // namespace

TEST_CASE("scalar and form expression parsing") {
    Chart c = base_chart();
    CHECK(parse_scalar_text("p - x^2", c) == var(c, "p") - var(c, "x").pow(2));
    CHECK(parse_scalar_text("u^3/3", surface_chart()) ==
          var(surface_chart(), "u").pow(3) / konst(surface_chart(), 3));
    CHECK(parse_scalar_text("1/2", c) == konst(c, 1) / konst(c, 2));
    CHECK(parse_scalar_text("-x*-y", c) == var(c, "x") * var(c, "y"));

    CHECK(parse_form_text("dz - p*dx - q*dy", c) ==
          d(c, "z") - d(c, "x") * var(c, "p") - d(c, "y") * var(c, "q"));
    CHECK(parse_form_text("dx /\\ dx", c).is_zero());
    CHECK(parse_form_text("dp /\\ dy", c) == wedge(d(c, "p"), d(c, "y")));

    // the generator display with bound coefficient names
    std::map<std::string, ScalarExpr> bindings = {{"A", konst(c, 1)}, {"E", konst(c, 0)}};
    CHECK(parse_form_text("A*dp/\\dq + E*dx/\\dy", c, bindings) == wedge(d(c, "p"), d(c, "q")));

    // wedge binds tighter than +, looser than *
    CHECK(parse_form_text("2*dx/\\dy + dp/\\dq", c) ==
          wedge(d(c, "x"), d(c, "y")) * konst(c, 2) + wedge(d(c, "p"), d(c, "q")));
}

TEST_CASE("expression errors carry locations") {
    Chart c = base_chart();
    CHECK_THROWS_AS(parse_scalar_text("p + w", c), ParseError);
    CHECK_THROWS_AS(parse_scalar_text("dx + dz", c), ParseError);     // scalar expected
    CHECK_THROWS_AS(parse_form_text("dx + dz/\\dp", c), ParseError);  // mixed degrees
    CHECK_THROWS_AS(parse_form_text("dx * dz", c), ParseError);       // * on two forms
    CHECK_THROWS_AS(parse_form_text("x / dz", c), ParseError);        // divide by form
    CHECK_THROWS_AS(parse_scalar_text("x / 0", c), ParseError);
    CHECK_THROWS_AS(parse_scalar_text("x ^ y", c), ParseError);
    CHECK_THROWS_AS(parse_scalar_text("x + ", c), ParseError);
    CHECK_THROWS_AS(parse_scalar_text("x $ y", c), ParseError);

    try {
        parse_scalar_text("p +\n  ww", c);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
        CHECK(e.token == "ww");
    }
}

TEST_CASE("tokenizing examples") {
    Chart c = base_chart();
    // "A = 0" style assignments parse inside a document; "dp /\ dy" is a wedge
    CHECK(parse_form_text("dp /\\ dy", c) == wedge(d(c, "p"), d(c, "y")));
    // reserved differential vs identifier: du belongs to the surface chart only
    CHECK_THROWS_AS(parse_form_text("du", c), ParseError);
    CHECK(parse_form_text("du", surface_chart()) == d(surface_chart(), "u"));
}

TEST_CASE("parsing the wave document") {
    SystemSpec spec = parse_system_file(wave_doc);
    Chart c = base_chart();
    CHECK(spec.name == "wave");
    CHECK(spec.chart == c);
    CHECK(spec.equation_mode);
    REQUIRE(spec.coefficients.has_value());
    CHECK(spec.coefficients->C == konst(c, 1));
    CHECK(spec.coefficients->A.is_zero());
    CHECK(spec.coefficients->E.is_zero());
    REQUIRE(spec.integrals.size() == 1);
    CHECK(spec.integrals[0].first == "F1");
    CHECK(spec.integrals[0].second == var(c, "p") - var(c, "x").pow(2));
    REQUIRE(spec.surfaces.size() == 1);
    const auto& comps = spec.surfaces[0].second.components();
    Chart s = surface_chart();
    CHECK(comps.at("z") == var(s, "u").pow(3) / konst(s, 3));
    CHECK(comps.at("q").is_zero());
    REQUIRE(spec.checks.size() == 6);
    CHECK(spec.checks[0].kind == CheckRequest::Kind::Classify);
    CHECK(spec.checks[2].kind == CheckRequest::Kind::DerivedFlag);
    CHECK(spec.checks[4].kind == CheckRequest::Kind::Integral);
    CHECK(spec.checks[4].name == "F1");
    CHECK(spec.checks[5].kind == CheckRequest::Kind::Surface);
    CHECK(spec.checks[5].with_integral == "F1");
}

TEST_CASE("parsing the counterexample document") {
    SystemSpec spec = parse_system_file(counterexample_doc);
    CHECK(spec.name == "counterexample");
    CHECK(spec.coefficients->E == konst(base_chart(), 1));
    CHECK(spec.integrals[0].second == var(base_chart(), "z"));
    for (const auto& n : {"x", "y"})
        CHECK(spec.surfaces[0].second.components().at(n) ==
              var(surface_chart(), n == std::string("x") ? "u" : "v"));
    CHECK(spec.surfaces[0].second.components().at("z").is_zero());
}

TEST_CASE("forms mode and normalform blocks") {
    const char* doc = R"(system "forms"
coords x y z p q
theta = dz - p*dx - q*dy
omega = dx/\dy
normalform NF: X = x, Y = y, Z = z, P = p, Q = q, F = Z
check classify normal-form NF
)";
    SystemSpec spec = parse_system_file(doc);
    CHECK(!spec.equation_mode);
    Chart c = base_chart();
    CHECK(*spec.theta == d(c, "z") - d(c, "x") * var(c, "p") - d(c, "y") * var(c, "q"));
    CHECK(*spec.omega == wedge(d(c, "x"), d(c, "y")));
    REQUIRE(spec.normal_forms.size() == 1);
    CHECK(spec.normal_forms[0].second.F == var(normal_form_chart(), "Z"));
    CHECK(spec.normal_forms[0].second.Z == var(c, "z"));
    REQUIRE(spec.checks.size() == 2);
    CHECK(spec.checks[1].kind == CheckRequest::Kind::NormalForm);
    CHECK(spec.checks[1].name == "NF");
}

TEST_CASE("document errors") {
    CHECK_THROWS_AS(parse_system_file("system \"x\"\ncoords x y z p w\nA = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_system_file("system \"x\"\ncoords x y z p q\nA = dx\n"), ParseError);
    CHECK_THROWS_AS(parse_system_file("system \"x\"\ncoords x y z p q\nA = 1\ntheta = dz\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_system_file("system \"x\"\ncoords x y z p q\n"), ParseError);
    CHECK_THROWS_AS(parse_system_file("system \"x\"\ncoords x y z p q\nA = 1\nA = 2\n"), ParseError);
    CHECK_THROWS_AS(
        parse_system_file("system \"x\"\ncoords x y z p q\nA = 1\ncheck integral F9\n"), ParseError);
    CHECK_THROWS_AS(
        parse_system_file("system \"x\"\ncoords x y z p q\nA = 1\ncheck classify classify extra\n"),
        ParseError);
    // degenerate surface (rank-1 Jacobian)
    CHECK_THROWS_AS(parse_system_file("system \"x\"\ncoords x y z p q\nA = 1\n"
                                      "surface N: x = u, y = u, z = 0, p = 0, q = 0\n"),
                    ParseError);
    try {
        parse_system_file("system \"x\"\ncoords x y z p q\nB = dx/\\dy\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("print/parse round trip") {
    for (const char* doc : {wave_doc, counterexample_doc}) {
        SystemSpec spec = parse_system_file(doc);
        std::string rendered = render(spec);
        SystemSpec again = parse_system_file(rendered);
        CHECK(again == spec);
        CHECK(render(again) == rendered);
    }

    const char* forms_doc = R"(system "remark"
coords X Y Z P Q
theta = dZ - P*dX - Q*dY
omega = dP/\dQ
check classify
)";
    SystemSpec spec = parse_system_file(forms_doc);
    SystemSpec again = parse_system_file(render(spec));
    CHECK(again == spec);
}

TEST_CASE("parsing is deterministic") {
    SystemSpec a = parse_system_file(wave_doc);
    SystemSpec b = parse_system_file(wave_doc);
    CHECK(a == b);
    std::string e1, e2;
    try {
        parse_system_file("system \"x\"\ncoords x y z p q\nA = $\n");
    } catch (const ParseError& e) {
        e1 = e.what();
    }
    try {
        parse_system_file("system \"x\"\ncoords x y z p q\nA = $\n");
    } catch (const ParseError& e) {
        e2 = e.what();
    }
    CHECK(e1 == e2);
    CHECK(!e1.empty());
}
