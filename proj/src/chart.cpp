#include "mag/chart.hpp"

#include <algorithm>
#include <set>

namespace mag {

namespace {

// Reserved differential tokens of the input grammar; coordinate names may
// not collide with them.
const std::set<std::string>& reserved_differentials() {
    static const std::set<std::string> tokens = {
        "dx", "dy", "dz", "dp", "dq", "dX", "dY", "dZ", "dP", "dQ", "du", "dv"};
    return tokens;
}

} // namespace

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty())
            throw DomainError("chart coordinate name is empty");
        if (reserved_differentials().count(n))
            throw DomainError("coordinate name '" + n + "' collides with a reserved differential token");
        if (!seen.insert(n).second)
            throw DomainError("duplicate coordinate name '" + n + "' in chart");
    }
}

std::size_t Chart::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        throw DomainError("unknown coordinate '" + name + "' in chart");
    return static_cast<std::size_t>(it - names_.begin());
}

bool Chart::has(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Chart base_chart() { return Chart({"x", "y", "z", "p", "q"}); }
Chart surface_chart() { return Chart({"u", "v"}); }
Chart normal_form_chart() { return Chart({"X", "Y", "Z"}); }

} // namespace mag
