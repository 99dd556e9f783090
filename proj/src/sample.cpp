#include "mag/sample.hpp"

#include <sstream>

namespace mag {

std::vector<Rational> Sampler::draw_point(std::size_t dim) {
    std::vector<Rational> pt;
    pt.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        // avoid std::uniform_int_distribution: not identical across platforms
        long v = static_cast<long>(rng_() % 21) - 10;
        pt.emplace_back(v);
    }
    return pt;
}

std::optional<std::vector<Rational>> Sampler::find_common_zero(const std::vector<ScalarExpr>& exprs) {
    if (exprs.empty())
        return std::nullopt;
    std::size_t dim = exprs.front().chart().size();
    int produced = 0;
    int attempts = 0;
    const int max_attempts = count_ * 40 + 100;
    while (produced < count_ && attempts < max_attempts) {
        ++attempts;
        auto pt = draw_point(dim);
        bool all_zero = true;
        try {
            for (const auto& e : exprs) {
                if (e.eval_at(pt) != 0) {
                    all_zero = false;
                    break;
                }
            }
        } catch (const PoleError&) {
            continue; // resample
        }
        ++produced;
        if (all_zero)
            return pt;
    }
    return std::nullopt;
}

std::string point_to_string(const Chart& chart, const std::vector<Rational>& pt) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i > 0)
            out << ", ";
        out << chart.name(i) << " = " << to_string(pt[i]);
    }
    out << ")";
    return out.str();
}

} // namespace mag
