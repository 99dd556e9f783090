#include "mag/rational.hpp"

namespace mag {

std::optional<Integer> integer_sqrt(const Integer& n) {
    if (n < 0)
        return std::nullopt;
    Integer r = boost::multiprecision::sqrt(n);
    if (r * r != n)
        return std::nullopt;
    return r;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0)
        return std::nullopt;
    auto sn = integer_sqrt(num(r));
    if (!sn)
        return std::nullopt;
    auto sd = integer_sqrt(den(r));
    if (!sd)
        return std::nullopt;
    return Rational(*sn, *sd);
}

std::string to_string(const Rational& r) {
    return r.str();
}

} // namespace mag
