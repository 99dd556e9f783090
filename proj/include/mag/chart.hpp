#pragma once

#include <string>
#include <vector>

#include "mag/error.hpp"

namespace mag {

// An ordered coordinate chart. The order is fixed at construction and
// induces the monomial order, the storage order of differential-form
// indices, and every pivot rule downstream.
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    // Index of a coordinate; throws DomainError if absent.
    std::size_t index_of(const std::string& name) const;
    bool has(const std::string& name) const;

    bool operator==(const Chart& other) const { return names_ == other.names_; }
    bool operator!=(const Chart& other) const { return !(*this == other); }

    // Differential token of coordinate i, e.g. "dx".
    std::string differential(std::size_t i) const { return "d" + names_.at(i); }

private:
    std::vector<std::string> names_;
};

// The three charts the toolkit works in.
Chart base_chart();         // x y z p q
Chart surface_chart();      // u v
Chart normal_form_chart();  // X Y Z  (domain of the Proposition's F)

} // namespace mag
