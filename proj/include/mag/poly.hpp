#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mag/chart.hpp"
#include "mag/rational.hpp"

namespace mag {

// Exponent vector over a chart; size always equals the chart size.
using Mono = std::vector<unsigned>;

unsigned total_degree(const Mono& m);

// Graded lexicographic order, descending, so that map iteration starts at the
// leading term. Ties in total degree break lexicographically with earlier
// chart coordinates weighing more.
struct GradedLexDesc {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no stored coefficient is zero.
class Poly {
public:
    using TermMap = std::map<Mono, Rational, GradedLexDesc>;

    Poly() = default;
    explicit Poly(Chart chart) : chart_(std::move(chart)) {}

    static Poly constant(const Chart& chart, const Rational& c);
    static Poly variable(const Chart& chart, std::size_t index);

    const Chart& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }
    Rational constant_value() const; // requires is_constant()

    // Leading term under graded lex; requires nonzero.
    const Mono& leading_mono() const;
    const Rational& leading_coeff() const;

    unsigned degree() const;                 // total degree, 0 for the zero polynomial
    unsigned degree_in(std::size_t v) const; // max exponent of coordinate v

    void add_term(const Mono& m, const Rational& c); // accumulate, dropping zeros

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& c) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& o) const { return chart_ == o.chart_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(std::size_t v) const;
    Rational eval(const std::vector<Rational>& point) const;

    // Scale to integer coefficients with content 1 and positive leading
    // coefficient. The zero polynomial maps to itself.
    Poly primitive_integer() const;

private:
    Chart chart_;
    TermMap terms_;

    void check_chart(const Poly& o) const;
};

// Exact quotient a/b when b divides a; nullopt otherwise.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

// Primitive integer gcd with positive leading coefficient; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact polynomial square root if the argument is a perfect square in Q[chart].
std::optional<Poly> poly_sqrt(const Poly& f);

// Canonical rendering: terms in descending graded lex, "^" for powers,
// explicit "*" products, rationals as a/b. Re-parsable by the dsl module.
std::string to_string(const Poly& p);

} // namespace mag
