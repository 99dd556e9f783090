#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace mag {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return numerator(r); }
inline Integer den(const Rational& r) { return denominator(r); }

// Exact integer square root if n is a perfect square.
std::optional<Integer> integer_sqrt(const Integer& n);

// Exact rational square root if r is a square of a rational (requires r >= 0).
std::optional<Rational> rational_sqrt(const Rational& r);

std::string to_string(const Rational& r);

} // namespace mag
