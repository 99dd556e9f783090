#include "mag/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace mag {

unsigned total_degree(const Mono& m) {
    unsigned d = 0;
    for (unsigned e : m)
        d += e;
    return d;
}

bool GradedLexDesc::operator()(const Mono& a, const Mono& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da > db;
    // lexicographic: larger exponent on an earlier coordinate wins
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i])
            return a[i] > b[i];
    }
    return a.size() > b.size();
}

Poly Poly::constant(const Chart& chart, const Rational& c) {
    Poly p(chart);
    if (c != 0)
        p.terms_.emplace(Mono(chart.size(), 0), c);
    return p;
}

Poly Poly::variable(const Chart& chart, std::size_t index) {
    if (index >= chart.size())
        throw DomainError("variable index out of range");
    Poly p(chart);
    Mono m(chart.size(), 0);
    m[index] = 1;
    p.terms_.emplace(m, Rational(1));
    return p;
}

Rational Poly::constant_value() const {
    if (terms_.empty())
        return Rational(0);
    return terms_.begin()->second;
}

const Mono& Poly::leading_mono() const {
    if (terms_.empty())
        throw DomainError("leading term of the zero polynomial");
    return terms_.begin()->first;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty())
        throw DomainError("leading term of the zero polynomial");
    return terms_.begin()->second;
}

unsigned Poly::degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

unsigned Poly::degree_in(std::size_t v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.at(v));
    return d;
}

void Poly::add_term(const Mono& m, const Rational& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void Poly::check_chart(const Poly& o) const {
    if (chart_ != o.chart_)
        throw DomainError("polynomial chart mismatch");
}

Poly Poly::operator-() const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    check_chart(o);
    Poly r = *this;
    for (const auto& [m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    check_chart(o);
    Poly r = *this;
    for (const auto& [m, c] : o.terms_)
        r.add_term(m, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_chart(o);
    Poly r(chart_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Mono m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(chart_);
    if (c == 0)
        return r;
    for (const auto& [m, k] : terms_)
        r.terms_.emplace(m, k * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(chart_, 1);
    Poly b = *this;
    while (e > 0) {
        if (e & 1u)
            r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

Poly Poly::derivative(std::size_t v) const {
    if (v >= chart_.size())
        throw DomainError("derivative coordinate index out of range");
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0)
            continue;
        Mono d = m;
        d[v] -= 1;
        r.add_term(d, c * Rational(m[v]));
    }
    return r;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
    if (point.size() != chart_.size())
        throw DomainError("evaluation point size mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (unsigned e = 0; e < m[i]; ++e)
                t *= point[i];
        }
        total += t;
    }
    return total;
}

Poly Poly::primitive_integer() const {
    if (terms_.empty())
        return *this;
    Integer l(1);
    for (const auto& [m, c] : terms_)
        l = boost::multiprecision::lcm(l, den(c));
    Integer g(0);
    for (const auto& [m, c] : terms_)
        g = boost::multiprecision::gcd(g, num(c) * (l / den(c)));
    Rational scale(l, g);
    if (leading_coeff() < 0)
        scale = -scale;
    return *this * scale;
}

// ---------------------------------------------------------------------------
// Exact division

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
    if (a.chart() != b.chart())
        throw DomainError("polynomial chart mismatch");
    if (b.is_zero())
        throw DivisionByZeroError("polynomial division by zero");
    Poly q(a.chart());
    Poly r = a;
    // When b | a, the leading term of each remainder stays divisible by the
    // leading term of b, so plain leading-term division terminates with r = 0.
    while (!r.is_zero()) {
        const Mono& mr = r.leading_mono();
        const Mono& mb = b.leading_mono();
        Mono m(mr.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (mr[i] < mb[i])
                return std::nullopt;
            m[i] = mr[i] - mb[i];
        }
        Rational c = r.leading_coeff() / b.leading_coeff();
        Poly t(a.chart());
        t.add_term(m, c);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

// ---------------------------------------------------------------------------
// GCD: recursive content/primitive-part reduction with a subresultant PRS in
// the innermost variable. Everything stays in exact integer arithmetic.

namespace {

// View of p as a univariate polynomial in coordinate v with Poly coefficients.
std::map<unsigned, Poly> coefficients_in(const Poly& p, std::size_t v) {
    std::map<unsigned, Poly> out;
    for (const auto& [m, c] : p.terms()) {
        Mono rest = m;
        unsigned e = rest[v];
        rest[v] = 0;
        auto it = out.find(e);
        if (it == out.end())
            it = out.emplace(e, Poly(p.chart())).first;
        it->second.add_term(rest, c);
    }
    return out;
}

Poly leading_coeff_in(const Poly& p, std::size_t v) {
    auto cs = coefficients_in(p, v);
    return cs.rbegin()->second;
}

Poly shift_by(const Poly& p, std::size_t v, unsigned e) {
    Poly r(p.chart());
    for (const auto& [m, c] : p.terms()) {
        Mono s = m;
        s[v] += e;
        r.add_term(s, c);
    }
    return r;
}

Poly must_divide(const Poly& a, const Poly& b) {
    auto q = exact_divide(a, b);
    if (!q)
        throw Error("internal error: expected exact polynomial division failed");
    return *q;
}

Poly gcd_integer(const Poly& a, const Poly& b);

// gcd of the coefficients of p viewed in v.
Poly content_in(const Poly& p, std::size_t v) {
    Poly g(p.chart());
    for (const auto& [e, c] : coefficients_in(p, v)) {
        (void)e;
        g = gcd_integer(g, c);
        if (g.is_constant() && !g.is_zero())
            break;
    }
    return g;
}

// Pseudo-remainder of a by b in v: lc_v(b)^(deg a - deg b + 1) * a mod b.
Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t v) {
    Poly r = a;
    Poly lb = leading_coeff_in(b, v);
    unsigned db = b.degree_in(v);
    int e = static_cast<int>(a.degree_in(v)) - static_cast<int>(db) + 1;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        Poly lr = leading_coeff_in(r, v);
        unsigned k = r.degree_in(v) - db;
        r = r * lb - shift_by(lr * b, v, k);
        e -= 1;
    }
    for (; e > 0; --e)
        r = r * lb;
    return r;
}

// Subresultant PRS gcd of a, b that are primitive in v with positive v-degree.
Poly gcd_subresultant(Poly a, Poly b, std::size_t v) {
    if (a.degree_in(v) < b.degree_in(v))
        std::swap(a, b);
    Poly one = Poly::constant(a.chart(), 1);
    Poly g = one, h = one;
    for (;;) {
        unsigned d = a.degree_in(v) - b.degree_in(v);
        Poly r = pseudo_remainder(a, b, v);
        if (r.is_zero())
            break;
        if (r.degree_in(v) == 0)
            return one;
        a = b;
        b = must_divide(r, g * h.pow(d));
        g = leading_coeff_in(a, v);
        h = (d == 0) ? h : must_divide(g.pow(d), h.pow(d - 1));
    }
    return must_divide(b, content_in(b, v));
}

// gcd of integer-coefficient polynomials, primitive with positive lc.
Poly gcd_integer(const Poly& a, const Poly& b) {
    if (a.is_zero())
        return b.primitive_integer();
    if (b.is_zero())
        return a.primitive_integer();
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.chart(), 1);

    std::size_t v = 0;
    bool found = false;
    for (std::size_t i = a.chart().size(); i-- > 0;) {
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            v = i;
            found = true;
            break;
        }
    }
    assert(found);
    (void)found;

    if (a.degree_in(v) == 0)
        return gcd_integer(a, content_in(b, v));
    if (b.degree_in(v) == 0)
        return gcd_integer(content_in(a, v), b);

    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly pa = must_divide(a, ca);
    Poly pb = must_divide(b, cb);
    Poly g = gcd_integer(ca, cb) * gcd_subresultant(pa, pb, v);
    return g.primitive_integer();
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.chart() != b.chart())
        throw DomainError("polynomial chart mismatch");
    return gcd_integer(a.primitive_integer(), b.primitive_integer());
}

// ---------------------------------------------------------------------------
// Square root by descending leading-term extraction.

std::optional<Poly> poly_sqrt(const Poly& f) {
    if (f.is_zero())
        return f;
    const Mono& lm = f.leading_mono();
    Mono half(lm.size());
    for (std::size_t i = 0; i < lm.size(); ++i) {
        if (lm[i] % 2 != 0)
            return std::nullopt;
        half[i] = lm[i] / 2;
    }
    auto lc = rational_sqrt(f.leading_coeff());
    if (!lc)
        return std::nullopt;

    Poly g(f.chart());
    g.add_term(half, *lc);
    Rational twice = 2 * (*lc);
    Mono prev = half;
    Poly r = f - g * g;
    while (!r.is_zero()) {
        const Mono& mr = r.leading_mono();
        Mono t(mr.size());
        for (std::size_t i = 0; i < mr.size(); ++i) {
            if (mr[i] < half[i])
                return std::nullopt;
            t[i] = mr[i] - half[i];
        }
        // terms must keep strictly decreasing or the candidate is not a square
        if (!GradedLexDesc{}(prev, t))
            return std::nullopt;
        prev = t;
        g.add_term(t, r.leading_coeff() / twice);
        r = f - g * g;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string mono_string(const Chart& chart, const Mono& m) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!first)
            out << "*";
        out << chart.name(i);
        if (m[i] > 1)
            out << "^" << m[i];
        first = false;
    }
    return out.str();
}

std::string coeff_string(const Rational& c) {
    return to_string(c);
}

} // namespace

std::string to_string(const Poly& p) {
    if (p.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational abs = c < 0 ? Rational(-c) : c;
        std::string ms = mono_string(p.chart(), m);
        if (first) {
            if (c < 0)
                out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (ms.empty())
            out << coeff_string(abs);
        else if (abs == 1)
            out << ms;
        else
            out << coeff_string(abs) << "*" << ms;
    }
    return out.str();
}

} // namespace mag
