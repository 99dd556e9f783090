#include "mag/pfaff.hpp"

#include <sstream>

namespace mag {

PfaffianSystem::PfaffianSystem(std::vector<DiffForm> generators) : generators_(std::move(generators)) {
    if (generators_.empty())
        return;
    const Chart& chart = generators_.front().chart();
    for (const auto& g : generators_) {
        if (g.degree() != 1)
            throw DomainError("Pfaffian generators must be 1-forms");
        if (g.chart() != chart)
            throw DomainError("Pfaffian generators live over different charts");
    }
    if (generic_rank(one_form_matrix(generators_)) != generators_.size())
        throw DomainError("dependent generators in Pfaffian system");
}

const Chart& PfaffianSystem::chart() const {
    if (generators_.empty())
        throw DomainError("empty Pfaffian system has no chart");
    return generators_.front().chart();
}

bool span_equal(const PfaffianSystem& a, const PfaffianSystem& b) {
    if (a.rank() != b.rank())
        return false;
    if (a.empty())
        return true;
    ScalarMatrix ma = one_form_matrix(a.generators());
    ScalarMatrix mb = one_form_matrix(b.generators());
    rref(ma);
    rref(mb);
    return ma == mb;
}

DiffForm clear_generator(const DiffForm& f, Notes* notes) {
    if (f.degree() != 1)
        throw DomainError("clear_generator expects a 1-form");
    if (f.is_zero())
        return f;
    const Chart& chart = f.chart();

    // common denominator
    Poly lcm = Poly::constant(chart, 1);
    for (const auto& [k, c] : f.terms()) {
        (void)k;
        Poly g = poly_gcd(lcm, c.den());
        lcm = g.is_constant() ? lcm * c.den() : lcm * *exact_divide(c.den(), g);
    }
    std::vector<Poly> nums;
    for (const auto& [k, c] : f.terms()) {
        (void)k;
        nums.push_back(c.num() * *exact_divide(lcm, c.den()));
    }
    if (!lcm.is_constant())
        note(notes, "generator cleared of denominator (" + to_string(lcm) + "); locus " +
                        to_string(lcm) + " = 0 excluded");

    // common polynomial factor
    Poly content(chart);
    for (const auto& n : nums)
        content = poly_gcd(content, n);
    if (!content.is_constant()) {
        for (auto& n : nums)
            n = *exact_divide(n, content);
        note(notes, "generator divided by common factor (" + to_string(content) +
                        "); rank may drop where it vanishes");
    }

    // integer content and deterministic sign
    Integer cd(1), cn(0);
    for (const auto& n : nums)
        for (const auto& [m, c] : n.terms()) {
            (void)m;
            cd = boost::multiprecision::lcm(cd, den(c));
        }
    for (const auto& n : nums)
        for (const auto& [m, c] : n.terms()) {
            (void)m;
            cn = boost::multiprecision::gcd(cn, num(c) * (cd / den(c)));
        }
    Rational scale(cd, cn);
    if (nums.front().leading_coeff() < 0)
        scale = -scale;

    DiffForm out(chart, 1);
    std::size_t i = 0;
    for (const auto& [k, c] : f.terms()) {
        (void)c;
        out.add_term(k, ScalarExpr(nums[i] * scale));
        ++i;
    }
    return out;
}

namespace {

// Rows: complement pairs (a, b) of the completed coframe, a < b; column i:
// expansion of d(alpha_i) mod J on those pairs.
ScalarMatrix derived_matrix(const PfaffianSystem& j, const Coframe& cf) {
    const Chart& chart = j.chart();
    std::size_t n = chart.size(), k = j.rank();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = k; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            pairs.emplace_back(a, b);
    ScalarMatrix m = zero_matrix(chart, pairs.size(), k);
    for (std::size_t i = 0; i < k; ++i) {
        ScalarMatrix w = two_form_in_coframe(exterior_derivative(j.generators()[i]), cf);
        for (std::size_t r = 0; r < pairs.size(); ++r)
            m[r][i] = w[pairs[r].first][pairs[r].second];
    }
    return m;
}

} // namespace

PfaffianSystem derived_system(const PfaffianSystem& j, Notes* notes) {
    if (j.empty() || j.rank() == j.chart().size())
        return j; // no complement 2-forms left to obstruct
    Coframe cf = complete_to_coframe(j.generators());
    ScalarMatrix m = derived_matrix(j, cf);
    auto basis = nullspace(m);

    std::vector<DiffForm> gens;
    for (const auto& f : basis) {
        // keep original generators verbatim when the combination is e_i
        std::size_t nonzero = 0, slot = 0;
        bool unit = true;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i].is_zero())
                continue;
            ++nonzero;
            slot = i;
            if (!f[i].is_constant() || f[i].constant_value() != 1)
                unit = false;
        }
        if (nonzero == 1 && unit) {
            gens.push_back(j.generators()[slot]);
            continue;
        }
        DiffForm combo(j.chart(), 1);
        for (std::size_t i = 0; i < f.size(); ++i)
            if (!f[i].is_zero())
                combo = combo + j.generators()[i] * f[i];
        gens.push_back(clear_generator(combo, notes));
    }
    return PfaffianSystem(gens);
}

DerivedFlag derived_flag(const PfaffianSystem& j, Notes* notes) {
    DerivedFlag flag;
    flag.systems.push_back(j);
    flag.dims.push_back(j.rank());
    for (;;) {
        PfaffianSystem next = derived_system(flag.systems.back(), notes);
        if (span_equal(next, flag.systems.back())) {
            if (flag.systems.size() > 1) {
                flag.systems.push_back(next);
                flag.dims.push_back(next.rank());
            }
            break;
        }
        flag.systems.push_back(next);
        flag.dims.push_back(next.rank());
        if (flag.systems.back().empty())
            break;
    }
    return flag;
}

bool is_integrable(const PfaffianSystem& j) {
    return derived_system(j).rank() == j.rank();
}

StructureCoefficients structure_coefficients(const PfaffianSystem& j) {
    if (j.rank() != 3)
        throw DomainError("structure coefficients require a rank-3 system");
    if (j.chart().size() != 5)
        throw DomainError("structure coefficients require a 5-dimensional chart");
    Coframe cf = complete_to_coframe(j.generators());
    StructureCoefficients sc{ScalarExpr::constant(j.chart(), 0), ScalarExpr::constant(j.chart(), 0),
                             ScalarExpr::constant(j.chart(), 0), cf.forms()[3], cf.forms()[4]};
    ScalarExpr* rs[3] = {&sc.r0, &sc.r1, &sc.r2};
    for (std::size_t i = 0; i < 3; ++i) {
        ScalarMatrix w = two_form_in_coframe(exterior_derivative(j.generators()[i]), cf);
        *rs[i] = w[3][4];
        // the reduction mod J must hit exactly r * omega3 ^ omega4
        for (std::size_t a = 3; a < 5; ++a)
            for (std::size_t b = a + 1; b < 5; ++b)
                if (!(a == 3 && b == 4) && !w[a][b].is_zero())
                    throw ValidationError("structure reduction left unexpected 2-form components");
    }
    return sc;
}

PfaffianSystem rotate_for_parabolic(const PfaffianSystem& j, const StructureCoefficients& sc) {
    if (j.rank() != 3)
        throw DomainError("rotation requires a rank-3 system");
    if (!sc.r0.is_zero())
        throw DomainError("rotation requires d(theta) = 0 mod J (r0 = 0)");
    if (sc.r1.is_zero() && sc.r2.is_zero())
        throw UnsupportedError("system is integrable; Proposition applies");
    const auto& g = j.generators();
    if (sc.r1.is_zero())
        return j;
    if (sc.r2.is_zero())
        return PfaffianSystem({g[0], g[2], g[1]});
    DiffForm rotated = g[1] * sc.r2 - g[2] * sc.r1;
    return PfaffianSystem({g[0], clear_generator(rotated), g[2]});
}

Containment contains_differential(const PfaffianSystem& j, const ScalarExpr& F) {
    if (j.empty())
        throw DomainError("containment test against an empty system");
    Coframe cf = complete_to_coframe(j.generators());
    DiffForm dF = exterior_derivative(DiffForm::from_scalar(F));
    std::vector<ScalarExpr> coeffs =
        dF.is_zero() ? std::vector<ScalarExpr>(cf.size(), ScalarExpr::constant(j.chart(), 0))
                     : coefficients_in_coframe(dF, cf);
    Containment out;
    for (std::size_t i = j.rank(); i < cf.size(); ++i) {
        if (!coeffs[i].is_zero()) {
            // appended coframe elements are single coordinate differentials
            std::size_t coord = cf.forms()[i].terms().begin()->first[0];
            out.residual.emplace_back("d" + j.chart().name(coord), coeffs[i]);
        }
    }
    if (!out.residual.empty())
        return out;
    out.contained = true;
    out.coefficients.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(j.rank()));
    return out;
}

std::string to_string(const PfaffianSystem& j) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < j.generators().size(); ++i) {
        if (i > 0)
            out << ", ";
        out << to_string(j.generators()[i]);
    }
    out << "}";
    return out.str();
}

} // namespace mag
