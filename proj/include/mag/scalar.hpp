#pragma once

#include <map>
#include <string>
#include <vector>

#include "mag/poly.hpp"

namespace mag {

// Element of the rational-function field over a chart, kept in canonical
// form: numerator and denominator coprime, denominator monic under graded
// lex, zero stored as 0/1. Equality of canonical forms is syntactic.
class ScalarExpr {
public:
    ScalarExpr() = default;
    explicit ScalarExpr(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.chart(), 1)) {}

    // normalize: canonical form of a raw fraction. Throws DivisionByZeroError
    // when the denominator is identically zero.
    static ScalarExpr fraction(Poly numerator, Poly denominator);
    static ScalarExpr constant(const Chart& chart, const Rational& c);
    static ScalarExpr variable(const Chart& chart, std::size_t index);
    static ScalarExpr variable(const Chart& chart, const std::string& name);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Chart& chart() const { return num_.chart(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    ScalarExpr operator-() const;
    ScalarExpr operator+(const ScalarExpr& o) const;
    ScalarExpr operator-(const ScalarExpr& o) const;
    ScalarExpr operator*(const ScalarExpr& o) const;
    ScalarExpr operator/(const ScalarExpr& o) const; // throws on division by zero
    ScalarExpr pow(int e) const;                     // negative exponents invert

    bool operator==(const ScalarExpr& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ScalarExpr& o) const { return !(*this == o); }

    // Quotient-rule partial derivative by a chart coordinate.
    ScalarExpr partial(std::size_t v) const;
    ScalarExpr partial(const std::string& name) const;

    // Simultaneous substitution; sigma must assign every coordinate of this
    // chart to an expression over the (common) target chart.
    ScalarExpr substitute(const std::map<std::string, ScalarExpr>& sigma) const;

    // Exact rational evaluation; throws PoleError at denominator zeros.
    Rational eval_at(const std::map<std::string, Rational>& point) const;
    Rational eval_at(const std::vector<Rational>& point) const;

private:
    Poly num_;
    Poly den_;
};

// Perfect-square test in the rational function field: returns a square root
// if e = r^2 for some rational function r.
std::optional<ScalarExpr> scalar_sqrt(const ScalarExpr& e);

std::string to_string(const ScalarExpr& e);

} // namespace mag
