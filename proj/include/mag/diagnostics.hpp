#pragma once

#include <string>
#include <vector>

namespace mag {

// Optional sink for warnings an operation wants to surface in reports:
// pivot choices, cleared denominators, sampling findings. Operations accept
// a Notes* and ignore nullptr.
struct Notes {
    std::vector<std::string> items;

    void add(std::string s) { items.push_back(std::move(s)); }
};

inline void note(Notes* n, std::string s) {
    if (n)
        n->add(std::move(s));
}

} // namespace mag
