#include "mag/ma.hpp"

#include <algorithm>
#include <sstream>

namespace mag {

namespace {

// Coefficient of the single 4-form basis element that survives reduction
// mod theta (the wedge of the four non-pivot differentials).
ScalarExpr top_coefficient(const DiffForm& four_form) {
    if (four_form.degree() != 4)
        throw DomainError("expected a 4-form");
    if (four_form.is_zero())
        return ScalarExpr::constant(four_form.chart(), 0);
    if (four_form.terms().size() != 1)
        throw DomainError("4-form reduced mod theta should have a single component");
    return four_form.terms().begin()->second;
}

DiffForm theta_of(const Chart& chart) {
    return DiffForm::differential(chart, 2) -
           DiffForm::differential(chart, 0) * ScalarExpr::variable(chart, 3) -
           DiffForm::differential(chart, 1) * ScalarExpr::variable(chart, 4);
}

} // namespace

MongeAmpereSystem MongeAmpereSystem::validated(DiffForm theta, DiffForm omega,
                                               std::optional<MACoefficients> source, Notes* notes,
                                               Sampler* sampler) {
    if (theta.chart() != omega.chart())
        throw DomainError("theta and Omega live over different charts");
    if (theta.chart().size() != 5)
        throw DomainError("Monge-Ampere systems require a 5-dimensional chart");
    if (theta.degree() != 1)
        throw DomainError("theta must be a 1-form");
    if (omega.degree() != 2)
        throw DomainError("Omega must be a 2-form");

    MongeAmpereSystem s;
    s.theta_ = theta;
    s.dtheta_ = exterior_derivative(theta);
    s.omega_ = omega;
    s.source_ = std::move(source);

    DiffForm contact = wedge(theta, wedge(s.dtheta_, s.dtheta_));
    if (contact.is_zero())
        throw ValidationError("contact condition fails: theta/\\dtheta/\\dtheta = " +
                              to_string(contact));
    if (sampler) {
        if (auto pt = sampler->find_zero(contact.terms().begin()->second))
            note(notes, "contact 5-form vanishes at sampled point " +
                            point_to_string(theta.chart(), *pt));
    }

    auto pivots = choose_pivots({theta});
    DiffForm omega_red = reduce_mod(omega, pivots);
    DiffForm dtheta_red = reduce_mod(s.dtheta_, pivots);
    if (omega_red.is_zero())
        throw ValidationError("not a Monge-Ampere system: Omega = 0 mod theta");
    // stack the two reduced 2-forms over the basis of pairs and ask for rank 2
    std::vector<IndexSet> keys;
    for (const auto& [k, c] : omega_red.terms()) {
        (void)c;
        keys.push_back(k);
    }
    for (const auto& [k, c] : dtheta_red.terms()) {
        (void)c;
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    ScalarMatrix m = zero_matrix(theta.chart(), 2, keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        m[0][i] = omega_red.coefficient(keys[i]);
        m[1][i] = dtheta_red.coefficient(keys[i]);
    }
    if (generic_rank(m) != 2)
        throw ValidationError("not a Monge-Ampere system: Omega and dtheta dependent mod theta");
    return s;
}

MongeAmpereSystem MongeAmpereSystem::from_equation(const MACoefficients& c, Notes* notes,
                                                   Sampler* sampler) {
    Chart chart = base_chart();
    for (const auto& e : {c.A, c.B, c.C, c.D, c.E})
        if (e.chart() != chart)
            throw DomainError("equation coefficients must live over the base chart");
    if (c.A.is_zero() && c.B.is_zero() && c.C.is_zero() && c.D.is_zero() && c.E.is_zero())
        throw DomainError("all equation coefficients vanish identically");
    if (sampler) {
        if (auto pt = sampler->find_common_zero({c.A, c.B, c.C, c.D, c.E}))
            note(notes, "coefficients A..E vanish simultaneously at sampled point " +
                            point_to_string(chart, *pt));
    }

    auto d = [&](const char* n) { return DiffForm::differential(chart, chart.index_of(n)); };
    DiffForm omega = wedge(d("p"), d("q")) * c.A + wedge(d("p"), d("y")) * c.B +
                     (wedge(d("x"), d("p")) + wedge(d("q"), d("y"))) * c.C +
                     wedge(d("x"), d("q")) * c.D + wedge(d("x"), d("y")) * c.E;
    return validated(theta_of(chart), omega, c, notes, sampler);
}

MongeAmpereSystem MongeAmpereSystem::from_forms(DiffForm theta, DiffForm omega, Notes* notes,
                                                Sampler* sampler) {
    return validated(std::move(theta), std::move(omega), std::nullopt, notes, sampler);
}

std::string to_string(EquationKind k) {
    switch (k) {
    case EquationKind::Parabolic: return "parabolic";
    case EquationKind::Hyperbolic: return "hyperbolic";
    case EquationKind::Elliptic: return "elliptic";
    case EquationKind::Indefinite: return "indefinite";
    case EquationKind::Degenerate: return "degenerate";
    }
    return "unknown";
}

std::array<ScalarExpr, 3> characteristic_quadratic(const MongeAmpereSystem& s) {
    auto pivots = choose_pivots({s.theta()});
    DiffForm omega = reduce_mod(s.omega(), pivots);
    DiffForm dtheta = reduce_mod(s.dtheta(), pivots);
    ScalarExpr two = ScalarExpr::constant(s.chart(), 2);
    ScalarExpr c2 = top_coefficient(wedge(dtheta, dtheta));
    ScalarExpr c1 = top_coefficient(wedge(omega, dtheta)) * two;
    ScalarExpr c0 = top_coefficient(wedge(omega, omega));
    return {c2, c1, c0};
}

Classification classify(const MongeAmpereSystem& s, Notes* notes) {
    auto [c2, c1, c0] = characteristic_quadratic(s);
    Classification cl;
    cl.c2 = c2;
    cl.c1 = c1;
    cl.c0 = c0;
    const Chart& chart = s.chart();
    ScalarExpr four = ScalarExpr::constant(chart, 4);
    cl.discriminant = c1 * c1 - four * c2 * c0;

    if (c2.is_zero()) {
        // cannot happen for a validated system: theta/\(dtheta)^2 != 0 forces c2 != 0
        cl.kind = EquationKind::Degenerate;
        note(notes, "quadratic degenerates: c2 = 0");
        return cl;
    }
    ScalarExpr two_c2 = ScalarExpr::constant(chart, 2) * c2;
    if (cl.discriminant.is_zero()) {
        cl.kind = EquationKind::Parabolic;
        cl.roots.push_back(-c1 / two_c2);
        return cl;
    }
    if (auto root = scalar_sqrt(cl.discriminant)) {
        cl.kind = EquationKind::Hyperbolic;
        cl.roots.push_back((-c1 + *root) / two_c2);
        cl.roots.push_back((-c1 - *root) / two_c2);
        return cl;
    }
    if (scalar_sqrt(-cl.discriminant)) {
        cl.kind = EquationKind::Elliptic;
        return cl;
    }
    cl.kind = EquationKind::Indefinite;
    note(notes, "discriminant is not a perfect square or its negative; sign undecided in-field");
    return cl;
}

std::vector<CharacteristicSystem> characteristic_systems(const MongeAmpereSystem& s, Notes* notes) {
    Classification cl = classify(s, notes);
    if (cl.kind == EquationKind::Elliptic)
        throw UnsupportedError("elliptic system: characteristic 1-forms would be complex-valued");
    if (cl.kind == EquationKind::Indefinite)
        throw UnsupportedError("root not in rational function field (discriminant " +
                               to_string(cl.discriminant) + " is not a perfect square)");
    if (cl.kind == EquationKind::Degenerate)
        throw UnsupportedError("degenerate quadratic; no characteristic extraction");

    auto pivots = choose_pivots({s.theta()});
    std::vector<CharacteristicSystem> out;
    for (const auto& lambda : cl.roots) {
        DiffForm rep = reduce_mod(s.omega() + s.dtheta() * lambda, pivots);
        Factorization f = factor_decomposable(rep);
        if (wedge(f.omega1, f.omega2) != rep)
            throw ValidationError("characteristic factorization failed re-verification");
        note(notes, "factorization pivot for lambda = " + to_string(lambda) + ": d" +
                        s.chart().name(f.pivot_i) + "/\\d" + s.chart().name(f.pivot_j));
        PfaffianSystem j({s.theta(), clear_generator(f.omega1, notes), clear_generator(f.omega2, notes)});
        out.push_back(CharacteristicSystem{lambda, f.omega1, f.omega2, std::move(j)});
    }
    return out;
}

HypothesisReport check_theorem_hypotheses(const MongeAmpereSystem& s, const CharacteristicSystem& cs,
                                          Notes* notes, Sampler* sampler) {
    HypothesisReport r;
    r.integrable = is_integrable(cs.J);

    // assumption 1: d(theta) = 0 mod J, decided on the completed-coframe complement
    Coframe cf = complete_to_coframe(cs.J.generators());
    ScalarMatrix w = two_form_in_coframe(s.dtheta(), cf);
    r.assumption1 = true;
    for (std::size_t a = cs.J.rank(); a < cf.size() && r.assumption1; ++a)
        for (std::size_t b = a + 1; b < cf.size(); ++b)
            if (!w[a][b].is_zero()) {
                r.assumption1 = false;
                break;
            }

    // assumption 2, with Omega read as the decomposable representative
    note(notes, "assumption 2 evaluated with the decomposable representative omega1/\\omega2");
    DiffForm five = wedge(s.theta(), wedge(s.dtheta(), wedge(cs.omega1, cs.omega2)));
    r.assumption2 = !five.is_zero();
    if (r.assumption2 && sampler) {
        if (auto pt = sampler->find_zero(five.terms().begin()->second))
            note(notes, "assumption-2 5-form vanishes at sampled point " +
                            point_to_string(s.chart(), *pt));
    }

    if (r.integrable)
        r.verdict = "Proposition applies (exceptional manifolds possible)";
    else if (r.assumption1 || r.assumption2)
        r.verdict = "Theorem applies";
    else
        r.verdict = "inconclusive: J is not integrable but neither assumption holds";
    return r;
}

} // namespace mag
