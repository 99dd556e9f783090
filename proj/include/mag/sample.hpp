#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mag/scalar.hpp"

namespace mag {

// Numeric fallback for pointwise "never vanishes on M" hypotheses: sample
// random rational points with integer coordinates in [-10, 10], resampling
// at poles, and look for a common zero of the given expressions. Purely a
// reporting aid; the symbolic checks stay authoritative.
class Sampler {
public:
    Sampler(std::uint64_t seed, int count) : rng_(seed), count_(count) {}

    int count() const { return count_; }

    // Point where every expression vanishes, if one of `count` samples hits it.
    std::optional<std::vector<Rational>> find_common_zero(const std::vector<ScalarExpr>& exprs);

    std::optional<std::vector<Rational>> find_zero(const ScalarExpr& e) {
        return find_common_zero({e});
    }

private:
    std::mt19937_64 rng_;
    int count_;

    std::vector<Rational> draw_point(std::size_t dim);
};

std::string point_to_string(const Chart& chart, const std::vector<Rational>& pt);

} // namespace mag
