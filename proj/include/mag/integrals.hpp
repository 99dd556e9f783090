#pragma once

#include "mag/ma.hpp"

namespace mag {

// Parametrized 2-surface (u, v) -> chart of the ambient system; components
// keyed by ambient coordinate name. Validated as a generic immersion.
class SurfaceMap {
public:
    SurfaceMap() = default;
    SurfaceMap(const Chart& target, std::map<std::string, ScalarExpr> components);

    const std::map<std::string, ScalarExpr>& components() const { return components_; }
    const Chart& target() const { return target_; }

    bool operator==(const SurfaceMap& o) const {
        return target_ == o.target_ && components_ == o.components_;
    }

private:
    Chart target_;
    std::map<std::string, ScalarExpr> components_;
};

// dF = a theta + b omega1 + c omega2, plus the last-derived-system check.
struct IntegralCertificate {
    ScalarExpr F;
    ScalarExpr a, b, c;
    bool in_last_derived = false;
    std::string all_zero_note;
};

struct IntegralOutcome {
    bool accepted = false;
    IntegralCertificate certificate;                          // valid when accepted
    std::vector<std::pair<std::string, ScalarExpr>> residual; // refusal reasons otherwise
};

enum class SurfaceVerdict { Solution, Exceptional, NotInK };

std::string to_string(SurfaceVerdict v);

struct ExceptionalReport {
    SurfaceMap surface;
    DiffForm pulled_theta;
    DiffForm pulled_omega;
    DiffForm independence; // pullback of dx ^ dy
    std::optional<ScalarExpr> pulled_F;
    std::optional<ScalarExpr> pulled_b, pulled_c;
    SurfaceVerdict verdict = SurfaceVerdict::NotInK;
};

// Diffeomorphism components (target coordinate -> expression over the source
// chart) together with the conformal factor of the contact form.
struct ContactMap {
    std::map<std::string, ScalarExpr> components;
    ScalarExpr mu;
};

// The Proposition's data: coordinates X, Y, Z, P, Q over the base chart and
// an intermediate integral F over the (X, Y, Z) chart.
struct NormalFormData {
    ScalarExpr X, Y, Z, P, Q;
    ScalarExpr F;

    bool operator==(const NormalFormData& o) const = default;
};

struct NormalFormResult {
    ScalarExpr mu;  // dZ - P dX - Q dY = mu theta
    ScalarExpr f_z; // F_Z composed with (X, Y, Z), must be nonzero
    ScalarExpr new_x, new_y, new_z, new_p, new_q;
    std::vector<ScalarExpr> exceptional_equations; // new_z = new_p = new_q = 0
};

// Certify dF in J via the coframe decomposition; reports whether dF also
// lies in the last derived system (always true when accepted).
IntegralOutcome verify_intermediate_integral(const MongeAmpereSystem& s, const CharacteristicSystem& cs,
                                             const ScalarExpr& F, Notes* notes = nullptr,
                                             Sampler* sampler = nullptr);

// Pull the ideal back to the surface and classify: solution of the system,
// exceptional integral manifold of K = {theta, d theta, F}, or neither.
ExceptionalReport check_surface(const MongeAmpereSystem& s, const SurfaceMap& n,
                                const std::optional<ScalarExpr>& F,
                                const CharacteristicSystem* cs = nullptr,
                                const IntegralCertificate* cert = nullptr);

// Validates psi* target_theta = mu source_theta with mu != 0.
ContactMap verify_contact_map(const std::map<std::string, ScalarExpr>& components,
                              const DiffForm& source_theta, const DiffForm& target_theta);

// Pull a whole system through a verified contact map.
MongeAmpereSystem transport_system(const ContactMap& m, const MongeAmpereSystem& target,
                                   Notes* notes = nullptr);

// Check the NormalFormData invariants against an integrable J, build the
// Proposition's new coordinates, and emit the exceptional-surface equations.
NormalFormResult verify_normal_form(const DiffForm& theta, const PfaffianSystem& j,
                                    const NormalFormData& nf);

} // namespace mag
