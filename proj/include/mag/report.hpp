#pragma once

#include <cstdint>
#include <string>

#include "mag/dsl.hpp"

namespace mag {

// Exit codes: 0 all requested checks passed, 1 negative verdict (exceptional
// surface, refused integral, failed normal form), 2 parse error,
// 3 unsupported request (elliptic factorization, non-square discriminant,
// non-integrable normal form, invalid system).
struct RunOptions {
    std::string subcommand = "report";
    bool json = false;
    int sample = 0; // number of sample points for pointwise checks; 0 = off
    std::uint64_t seed = 0;
};

struct RunResult {
    int exit_code = 0;
    std::string output;      // report (stdout)
    std::string diagnostics; // errors (stderr)
};

RunResult run_analysis(const SystemSpec& spec, const RunOptions& opt);

// Parse a document and run it; parse failures yield exit code 2.
RunResult run_document(const std::string& text, const RunOptions& opt);

} // namespace mag
