#pragma once

#include "mag/integrals.hpp"

namespace mag {

// One entry of a document's `check` line.
struct CheckRequest {
    enum class Kind { Classify, Characteristics, DerivedFlag, Hypotheses, Integral, Surface, NormalForm };

    Kind kind = Kind::Classify;
    std::string name;                         // Integral / Surface / NormalForm target
    std::optional<std::string> with_integral; // Surface only

    bool operator==(const CheckRequest& o) const = default;
};

// Parsed document: one system, its declarations, and the requested checks.
struct SystemSpec {
    std::string name;
    Chart chart;
    bool equation_mode = true;
    std::optional<MACoefficients> coefficients; // equation mode
    std::optional<DiffForm> theta;              // forms mode
    std::optional<DiffForm> omega;
    std::vector<std::pair<std::string, ScalarExpr>> integrals;
    std::vector<std::pair<std::string, SurfaceMap>> surfaces;
    std::vector<std::pair<std::string, NormalFormData>> normal_forms;
    std::vector<CheckRequest> checks;

    bool operator==(const SystemSpec& o) const = default;
};

// Grammar (newline-insensitive; expressions end where the next token cannot
// extend them):
//
//   system "<name>"
//   coords x y z p q                       (or: X Y Z P Q, forms mode only)
//   A = <scalar> ... E = <scalar>          (equation mode; omitted letters = 0)
//   theta = <1-form>   omega = <2-form>    (forms mode)
//   integral <name> = <scalar>
//   surface <name>: x = <scalar over u,v>, ..., q = <scalar over u,v>
//   normalform <name>: X = <scalar>, ..., Q = <scalar>, F = <scalar over X,Y,Z>
//   check <item> ...                       items: classify characteristics
//        derived-flag hypotheses | integral <name> | surface <name> [with
//        <integral>] | normal-form <name>
//
// Operator precedence, tightest first: ^  unary-  * /  /\  + -.
// Differentials are atomic reserved tokens (dx ... dv).
SystemSpec parse_system_file(const std::string& text);

// Standalone expression parsers used by reports and tests. `bindings` makes
// extra named scalars visible (including the coefficient letters A..E).
ScalarExpr parse_scalar_text(const std::string& text, const Chart& chart,
                             const std::map<std::string, ScalarExpr>& bindings = {});
DiffForm parse_form_text(const std::string& text, const Chart& chart,
                         const std::map<std::string, ScalarExpr>& bindings = {});

// Canonical document rendering; render(parse(text)) parses to an equal spec.
std::string render(const SystemSpec& spec);

std::string to_string(const CheckRequest& c);

} // namespace mag
