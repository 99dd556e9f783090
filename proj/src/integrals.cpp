#include "mag/integrals.hpp"

#include <sstream>

namespace mag {

namespace {

// phi = mu * reference for a scalar mu; nullopt when not proportional.
std::optional<ScalarExpr> proportionality_factor(const DiffForm& phi, const DiffForm& reference) {
    if (reference.is_zero())
        throw DomainError("proportionality against the zero form");
    const auto& [slot, ref_coeff] = *reference.terms().begin();
    ScalarExpr mu = phi.coefficient(slot) / ref_coeff;
    if ((phi - reference * mu).is_zero())
        return mu;
    return std::nullopt;
}

} // namespace

SurfaceMap::SurfaceMap(const Chart& target, std::map<std::string, ScalarExpr> components)
    : target_(target), components_(std::move(components)) {
    Chart domain = surface_chart();
    for (std::size_t i = 0; i < target_.size(); ++i) {
        auto it = components_.find(target_.name(i));
        if (it == components_.end())
            throw DomainError("surface map misses component '" + target_.name(i) + "'");
        if (it->second.chart() != domain)
            throw DomainError("surface components must live over the (u, v) chart");
    }
    if (components_.size() != target_.size())
        throw DomainError("surface map assigns unknown coordinates");

    // generic immersion: the 2 x n Jacobian has rank 2
    ScalarMatrix jac = zero_matrix(domain, 2, target_.size());
    for (std::size_t i = 0; i < target_.size(); ++i) {
        const ScalarExpr& comp = components_.at(target_.name(i));
        jac[0][i] = comp.partial(0);
        jac[1][i] = comp.partial(1);
    }
    if (generic_rank(jac) != 2)
        throw ValidationError("surface map is not a generic immersion (Jacobian rank < 2)");
}

std::string to_string(SurfaceVerdict v) {
    switch (v) {
    case SurfaceVerdict::Solution: return "solution";
    case SurfaceVerdict::Exceptional: return "exceptional";
    case SurfaceVerdict::NotInK: return "not-in-K";
    }
    return "unknown";
}

IntegralOutcome verify_intermediate_integral(const MongeAmpereSystem& s, const CharacteristicSystem& cs,
                                             const ScalarExpr& F, Notes* notes, Sampler* sampler) {
    if (F.chart() != s.chart())
        throw DomainError("integral candidate lives over the wrong chart");
    DiffForm dF = exterior_derivative(DiffForm::from_scalar(F));
    if (dF.is_zero())
        throw DomainError("dF vanishes identically");

    IntegralOutcome out;
    Containment res = contains_differential(cs.J, F);
    if (!res.contained) {
        out.residual = res.residual;
        return out;
    }
    out.accepted = true;
    out.certificate.F = F;
    out.certificate.a = res.coefficients[0];
    out.certificate.b = res.coefficients[1];
    out.certificate.c = res.coefficients[2];

    DerivedFlag flag = derived_flag(cs.J);
    const PfaffianSystem& last = flag.systems.back();
    out.certificate.in_last_derived = !last.empty() && contains_differential(last, F).contained;
    if (!out.certificate.in_last_derived)
        throw ValidationError("accepted intermediate integral must lie in the last derived system");

    out.certificate.all_zero_note = "a, b, c are not simultaneously identically zero";
    if (sampler) {
        if (auto pt = sampler->find_common_zero(
                {out.certificate.a, out.certificate.b, out.certificate.c})) {
            out.certificate.all_zero_note +=
                "; common zero at sampled point " + point_to_string(s.chart(), *pt);
            note(notes, "integral coefficients (a, b, c) vanish simultaneously at sampled point " +
                            point_to_string(s.chart(), *pt));
        }
    }
    return out;
}

ExceptionalReport check_surface(const MongeAmpereSystem& s, const SurfaceMap& n,
                                const std::optional<ScalarExpr>& F, const CharacteristicSystem* cs,
                                const IntegralCertificate* cert) {
    if (n.target() != s.chart())
        throw DomainError("surface maps into a different chart");
    const auto& sigma = n.components();

    ExceptionalReport r;
    r.surface = n;
    r.pulled_theta = pullback(s.theta(), sigma);
    DiffForm pulled_dtheta = pullback(s.dtheta(), sigma);
    if (pulled_dtheta != exterior_derivative(r.pulled_theta))
        throw ValidationError("naturality failed: i*(dtheta) != d(i*theta)");
    r.pulled_omega = pullback(s.omega(), sigma);
    r.independence =
        pullback(wedge(DiffForm::differential(s.chart(), std::size_t{0}),
                       DiffForm::differential(s.chart(), std::size_t{1})),
                 sigma);
    if (F)
        r.pulled_F = F->substitute(sigma);

    if (r.pulled_theta.is_zero() && r.pulled_omega.is_zero())
        r.verdict = SurfaceVerdict::Solution;
    else if (r.pulled_theta.is_zero() && r.pulled_F && r.pulled_F->is_zero())
        r.verdict = SurfaceVerdict::Exceptional;
    else
        r.verdict = SurfaceVerdict::NotInK;

    if (cs && cert) {
        r.pulled_b = cert->b.substitute(sigma);
        r.pulled_c = cert->c.substitute(sigma);
        if (r.verdict == SurfaceVerdict::Exceptional &&
            (!r.pulled_b->is_zero() || !r.pulled_c->is_zero()))
            throw ValidationError("exceptional surface must pull b and c back to zero");
    }
    return r;
}

ContactMap verify_contact_map(const std::map<std::string, ScalarExpr>& components,
                              const DiffForm& source_theta, const DiffForm& target_theta) {
    DiffForm phi = pullback(target_theta, components);
    if (phi.is_zero())
        throw ValidationError("not a contact transformation: pullback of the contact form vanishes");
    if (phi.chart() != source_theta.chart())
        throw DomainError("contact map components must live over the source chart");
    auto mu = proportionality_factor(phi, source_theta);
    if (!mu)
        throw ValidationError("not a contact transformation; pullback is " + to_string(phi) +
                              ", not proportional to " + to_string(source_theta));
    return ContactMap{components, *mu};
}

MongeAmpereSystem transport_system(const ContactMap& m, const MongeAmpereSystem& target,
                                   Notes* notes) {
    DiffForm theta = pullback(target.theta(), m.components);
    DiffForm omega = pullback(target.omega(), m.components);
    return MongeAmpereSystem::from_forms(std::move(theta), std::move(omega), notes);
}

NormalFormResult verify_normal_form(const DiffForm& theta, const PfaffianSystem& j,
                                    const NormalFormData& nf) {
    const Chart& chart = theta.chart();
    for (const ScalarExpr* e : {&nf.X, &nf.Y, &nf.Z, &nf.P, &nf.Q})
        if (e->chart() != chart)
            throw DomainError("normal form coordinates must live over the system chart");
    if (nf.F.chart() != normal_form_chart())
        throw DomainError("F must be a function of (X, Y, Z)");
    if (j.rank() != 3)
        throw DomainError("normal form requires a rank-3 system");
    if (!is_integrable(j))
        throw UnsupportedError("normal form requires an integrable characteristic system");

    DiffForm dX = exterior_derivative(DiffForm::from_scalar(nf.X));
    DiffForm dY = exterior_derivative(DiffForm::from_scalar(nf.Y));
    DiffForm dZ = exterior_derivative(DiffForm::from_scalar(nf.Z));
    PfaffianSystem dspan({dX, dY, dZ}); // throws if X, Y, Z are dependent
    if (!span_equal(dspan, j))
        throw ValidationError("dX, dY, dZ do not span the given system");

    DiffForm pfaff_form = dZ - dX * nf.P - dY * nf.Q;
    auto mu = proportionality_factor(pfaff_form, theta);
    if (!mu || mu->is_zero())
        throw ValidationError("dZ - P dX - Q dY is not a nonzero multiple of theta (got " +
                              to_string(pfaff_form) + ")");

    std::map<std::string, ScalarExpr> sub = {{"X", nf.X}, {"Y", nf.Y}, {"Z", nf.Z}};
    ScalarExpr fz = nf.F.partial("Z").substitute(sub);
    if (fz.is_zero())
        throw DomainError("F_Z vanishes identically");

    NormalFormResult out;
    out.mu = *mu;
    out.f_z = fz;
    out.new_x = nf.X;
    out.new_y = nf.Y;
    out.new_z = nf.F.substitute(sub);
    out.new_p = nf.F.partial("X").substitute(sub) + nf.P * fz;
    out.new_q = nf.F.partial("Y").substitute(sub) + nf.Q * fz;

    DiffForm lhs = exterior_derivative(DiffForm::from_scalar(out.new_z)) -
                   exterior_derivative(DiffForm::from_scalar(out.new_x)) * out.new_p -
                   exterior_derivative(DiffForm::from_scalar(out.new_y)) * out.new_q;
    if (lhs != theta * (fz * *mu))
        throw ValidationError("contact identity dz~ - p~ dx~ - q~ dy~ = F_Z theta failed");

    out.exceptional_equations = {out.new_z, out.new_p, out.new_q};
    return out;
}

} // namespace mag
