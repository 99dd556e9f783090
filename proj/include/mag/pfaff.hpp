#pragma once

#include "mag/diagnostics.hpp"
#include "mag/form.hpp"

namespace mag {

// Ordered list of generically independent 1-form generators.
class PfaffianSystem {
public:
    PfaffianSystem() = default;
    explicit PfaffianSystem(std::vector<DiffForm> generators);

    const std::vector<DiffForm>& generators() const { return generators_; }
    std::size_t rank() const { return generators_.size(); }
    const Chart& chart() const;
    bool empty() const { return generators_.empty(); }

    bool operator==(const PfaffianSystem& o) const { return generators_ == o.generators_; }

private:
    std::vector<DiffForm> generators_;
};

// Same span over the function field (canonical rref comparison).
bool span_equal(const PfaffianSystem& a, const PfaffianSystem& b);

// Scale a 1-form to polynomial coefficients with content 1; the sign makes
// the leading coefficient of the first nonzero slot positive. Cleared
// denominators and nonconstant common factors are reported through notes.
DiffForm clear_generator(const DiffForm& f, Notes* notes = nullptr);

struct DerivedFlag {
    std::vector<PfaffianSystem> systems; // J, J', J'', ...
    std::vector<std::size_t> dims;
};

struct StructureCoefficients {
    ScalarExpr r0, r1, r2; // coefficients of omega3 ^ omega4 in d(theta), d(omega1), d(omega2) mod J
    DiffForm omega3, omega4;
};

struct Containment {
    bool contained = false;
    std::vector<ScalarExpr> coefficients;                      // one per generator when contained
    std::vector<std::pair<std::string, ScalarExpr>> residual;  // nonzero complement slots otherwise
};

// { alpha in span J : d(alpha) = 0 mod J }, computed as the null space of
// f |-> sum f_i (d alpha_i mod J) over the function field. Generators
// reproduced verbatim when the combination is a standard basis vector,
// cleared to polynomial form otherwise.
PfaffianSystem derived_system(const PfaffianSystem& j, Notes* notes = nullptr);

// Iterate derived systems. The flag keeps the first stabilized repetition;
// a system that is already stable records just itself.
DerivedFlag derived_flag(const PfaffianSystem& j, Notes* notes = nullptr);

// Frobenius criterion: derived system has full rank.
bool is_integrable(const PfaffianSystem& j);

// For a rank-3 system over a 5-chart whose first generator is the contact
// form: complete to a coframe and read the omega3 ^ omega4 component of each
// d(generator) mod J.
StructureCoefficients structure_coefficients(const PfaffianSystem& j);

// Replace (omega1, omega2) so that the first rotated generator has structure
// coefficient identically zero; requires r0 = 0 and (r1, r2) != (0, 0).
PfaffianSystem rotate_for_parabolic(const PfaffianSystem& j, const StructureCoefficients& sc);

// Solve dF = sum f_i alpha_i; refusal carries the nonzero residual
// coefficients on the completed-coframe complement.
Containment contains_differential(const PfaffianSystem& j, const ScalarExpr& F);

std::string to_string(const PfaffianSystem& j);

} // namespace mag
