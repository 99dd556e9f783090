#include "mag/scalar.hpp"

#include <sstream>

namespace mag {

ScalarExpr ScalarExpr::fraction(Poly numerator, Poly denominator) {
    if (numerator.chart() != denominator.chart())
        throw DomainError("fraction chart mismatch");
    if (denominator.is_zero())
        throw DivisionByZeroError("denominator is identically zero");
    ScalarExpr e;
    if (numerator.is_zero()) {
        e.num_ = numerator;
        e.den_ = Poly::constant(numerator.chart(), 1);
        return e;
    }
    Poly g = poly_gcd(numerator, denominator);
    if (!g.is_constant()) {
        numerator = *exact_divide(numerator, g);
        denominator = *exact_divide(denominator, g);
    }
    Rational lc = denominator.leading_coeff();
    e.num_ = numerator * (1 / lc);
    e.den_ = denominator * (1 / lc);
    return e;
}

ScalarExpr ScalarExpr::constant(const Chart& chart, const Rational& c) {
    return ScalarExpr(Poly::constant(chart, c));
}

ScalarExpr ScalarExpr::variable(const Chart& chart, std::size_t index) {
    return ScalarExpr(Poly::variable(chart, index));
}

ScalarExpr ScalarExpr::variable(const Chart& chart, const std::string& name) {
    return ScalarExpr(Poly::variable(chart, chart.index_of(name)));
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr e;
    e.num_ = -num_;
    e.den_ = den_;
    return e;
}

ScalarExpr ScalarExpr::operator+(const ScalarExpr& o) const {
    return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ScalarExpr ScalarExpr::operator-(const ScalarExpr& o) const {
    return fraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

ScalarExpr ScalarExpr::operator*(const ScalarExpr& o) const {
    return fraction(num_ * o.num_, den_ * o.den_);
}

ScalarExpr ScalarExpr::operator/(const ScalarExpr& o) const {
    if (o.is_zero())
        throw DivisionByZeroError("division by the zero expression");
    return fraction(num_ * o.den_, den_ * o.num_);
}

ScalarExpr ScalarExpr::pow(int e) const {
    if (e < 0) {
        if (is_zero())
            throw DivisionByZeroError("negative power of zero");
        return fraction(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
    }
    return fraction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

ScalarExpr ScalarExpr::partial(std::size_t v) const {
    return fraction(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

ScalarExpr ScalarExpr::partial(const std::string& name) const {
    return partial(chart().index_of(name));
}

ScalarExpr ScalarExpr::substitute(const std::map<std::string, ScalarExpr>& sigma) const {
    const Chart& source = chart();
    if (sigma.empty())
        throw DomainError("empty substitution");
    const Chart& target = sigma.begin()->second.chart();
    std::vector<ScalarExpr> images;
    images.reserve(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        auto it = sigma.find(source.name(i));
        if (it == sigma.end())
            throw DomainError("substitution misses coordinate '" + source.name(i) + "'");
        if (it->second.chart() != target)
            throw DomainError("substitution images live over different charts");
        images.push_back(it->second);
    }
    for (const auto& [name, image] : sigma) {
        (void)image;
        if (!source.has(name))
            throw DomainError("substitution assigns unknown coordinate '" + name + "'");
    }

    auto compose = [&](const Poly& p) {
        ScalarExpr acc = ScalarExpr::constant(target, 0);
        for (const auto& [m, c] : p.terms()) {
            ScalarExpr t = ScalarExpr::constant(target, c);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0)
                    t = t * images[i].pow(static_cast<int>(m[i]));
            acc = acc + t;
        }
        return acc;
    };

    ScalarExpr n = compose(num_);
    ScalarExpr d = compose(den_);
    if (d.is_zero())
        throw DivisionByZeroError("substitution produced a zero denominator");
    return n / d;
}

Rational ScalarExpr::eval_at(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0)
        throw PoleError("sample rejected: denominator vanishes at the point");
    return num_.eval(point) / d;
}

Rational ScalarExpr::eval_at(const std::map<std::string, Rational>& point) const {
    const Chart& c = chart();
    std::vector<Rational> pt;
    pt.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto it = point.find(c.name(i));
        if (it == point.end())
            throw DomainError("evaluation point misses coordinate '" + c.name(i) + "'");
        pt.push_back(it->second);
    }
    return eval_at(pt);
}

std::optional<ScalarExpr> scalar_sqrt(const ScalarExpr& e) {
    auto n = poly_sqrt(e.num());
    if (!n)
        return std::nullopt;
    auto d = poly_sqrt(e.den());
    if (!d)
        return std::nullopt;
    return ScalarExpr::fraction(*n, *d);
}

std::string to_string(const ScalarExpr& e) {
    if (e.den() == Poly::constant(e.chart(), 1))
        return to_string(e.num());
    std::ostringstream out;
    out << "(" << to_string(e.num()) << ")/(" << to_string(e.den()) << ")";
    return out.str();
}

} // namespace mag
