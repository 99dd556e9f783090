#include "mag/form.hpp"

#include <algorithm>
#include <sstream>

namespace mag {

DiffForm::DiffForm(Chart chart, unsigned degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree_ > chart_.size())
        throw DomainError("form degree exceeds chart size");
}

DiffForm DiffForm::from_scalar(const ScalarExpr& s) {
    DiffForm f(s.chart(), 0);
    f.add_term({}, s);
    return f;
}

DiffForm DiffForm::differential(const Chart& chart, std::size_t index) {
    if (index >= chart.size())
        throw DomainError("differential index out of range");
    DiffForm f(chart, 1);
    f.add_term({index}, ScalarExpr::constant(chart, 1));
    return f;
}

DiffForm DiffForm::differential(const Chart& chart, const std::string& name) {
    return differential(chart, chart.index_of(name));
}

ScalarExpr DiffForm::coefficient(const IndexSet& key) const {
    auto it = terms_.find(key);
    if (it == terms_.end())
        return ScalarExpr::constant(chart_, 0);
    return it->second;
}

void DiffForm::add_term(const IndexSet& key, const ScalarExpr& coeff) {
    if (key.size() != degree_)
        throw DomainError("term index set size does not match form degree");
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (key[i] >= chart_.size())
            throw DomainError("term index out of chart range");
        if (i > 0 && key[i - 1] >= key[i])
            throw DomainError("term index set must be strictly increasing");
    }
    if (coeff.chart() != chart_)
        throw DomainError("coefficient chart mismatch");
    if (coeff.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void DiffForm::add_term_signed(std::vector<std::size_t> key, const ScalarExpr& coeff) {
    // insertion sort, counting transpositions for the permutation sign
    int swaps = 0;
    for (std::size_t i = 1; i < key.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && key[j - 1] > key[j]) {
            std::swap(key[j - 1], key[j]);
            ++swaps;
            --j;
        }
    }
    for (std::size_t i = 1; i < key.size(); ++i)
        if (key[i - 1] == key[i])
            return; // repeated differential
    add_term(key, (swaps % 2 == 0) ? coeff : -coeff);
}

DiffForm DiffForm::operator-() const {
    DiffForm f(chart_, degree_);
    for (const auto& [k, c] : terms_)
        f.terms_.emplace(k, -c);
    return f;
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
    if (chart_ != o.chart_)
        throw DomainError("form chart mismatch");
    if (degree_ != o.degree_ && !is_zero() && !o.is_zero())
        throw DomainError("cannot add forms of different degrees");
    DiffForm f = is_zero() && degree_ != o.degree_ ? DiffForm(chart_, o.degree_) : *this;
    for (const auto& [k, c] : o.terms_)
        f.add_term(k, c);
    return f;
}

DiffForm DiffForm::operator-(const DiffForm& o) const {
    return *this + (-o);
}

DiffForm DiffForm::operator*(const ScalarExpr& s) const {
    DiffForm f(chart_, degree_);
    for (const auto& [k, c] : terms_)
        f.add_term(k, c * s);
    return f;
}

ScalarExpr DiffForm::scalar_value() const {
    if (degree_ != 0)
        throw DomainError("scalar_value on a form of positive degree");
    if (terms_.empty())
        return ScalarExpr::constant(chart_, 0);
    return terms_.begin()->second;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (a.chart() != b.chart())
        throw DomainError("form chart mismatch");
    unsigned deg = a.degree() + b.degree();
    if (deg > a.chart().size())
        return DiffForm(a.chart(), static_cast<unsigned>(a.chart().size())); // zero: repeated differentials
    DiffForm f(a.chart(), deg);
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            std::vector<std::size_t> key = ka;
            key.insert(key.end(), kb.begin(), kb.end());
            f.add_term_signed(std::move(key), ca * cb);
        }
    }
    return f;
}

DiffForm exterior_derivative(const DiffForm& a) {
    const Chart& chart = a.chart();
    unsigned deg = a.degree();
    if (deg >= chart.size())
        return DiffForm(chart, static_cast<unsigned>(chart.size()));
    DiffForm f(chart, deg + 1);
    for (const auto& [k, c] : a.terms()) {
        for (std::size_t v = 0; v < chart.size(); ++v) {
            ScalarExpr dc = c.partial(v);
            if (dc.is_zero())
                continue;
            std::vector<std::size_t> key;
            key.reserve(k.size() + 1);
            key.push_back(v);
            key.insert(key.end(), k.begin(), k.end());
            f.add_term_signed(std::move(key), dc);
        }
    }
    return f;
}

DiffForm pullback(const DiffForm& a, const std::map<std::string, ScalarExpr>& sigma) {
    const Chart& source = a.chart();
    if (sigma.empty())
        throw DomainError("empty pullback map");
    const Chart& target = sigma.begin()->second.chart();

    std::vector<ScalarExpr> images;
    std::vector<DiffForm> dimages;
    images.reserve(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        auto it = sigma.find(source.name(i));
        if (it == sigma.end())
            throw DomainError("pullback map misses coordinate '" + source.name(i) + "'");
        images.push_back(it->second);
        dimages.push_back(exterior_derivative(DiffForm::from_scalar(it->second)));
    }

    unsigned deg = std::min<unsigned>(a.degree(), static_cast<unsigned>(target.size()));
    DiffForm out(target, deg);
    for (const auto& [k, c] : a.terms()) {
        ScalarExpr coeff = c.substitute(sigma);
        DiffForm part = DiffForm::from_scalar(coeff);
        for (std::size_t idx : k)
            part = wedge(part, dimages[idx]);
        if (part.is_zero())
            continue;
        out = out + part;
    }
    return out;
}

std::vector<Pivot> choose_pivots(const std::vector<DiffForm>& generators) {
    std::vector<Pivot> pivots;
    std::vector<bool> used;
    for (const auto& g : generators) {
        if (g.degree() != 1)
            throw DomainError("pivot generators must be 1-forms");
        const Chart& chart = g.chart();
        used.resize(chart.size(), false);
        std::optional<std::size_t> constant_slot, nonzero_slot;
        for (std::size_t v = 0; v < chart.size(); ++v) {
            if (used[v])
                continue;
            ScalarExpr c = g.coefficient({v});
            if (c.is_zero())
                continue;
            if (!nonzero_slot)
                nonzero_slot = v;
            if (!constant_slot && c.is_constant())
                constant_slot = v;
        }
        if (!nonzero_slot)
            throw DomainError("zero generator cannot be a pivot form");
        std::size_t coord = constant_slot ? *constant_slot : *nonzero_slot;
        used[coord] = true;
        pivots.push_back(Pivot{g, coord});
    }
    return pivots;
}

DiffForm reduce_mod(const DiffForm& a, const std::vector<Pivot>& pivots) {
    if (pivots.empty())
        return a;
    const Chart& chart = a.chart();
    std::size_t k = pivots.size();

    std::vector<bool> is_pivot(chart.size(), false);
    for (const auto& p : pivots) {
        if (p.form.chart() != chart)
            throw DomainError("pivot chart mismatch");
        if (p.form.coefficient({p.coord}).is_zero())
            throw DomainError("pivot coefficient on d" + chart.name(p.coord) + " is zero");
        if (is_pivot[p.coord])
            throw DomainError("duplicate pivot coordinate " + chart.name(p.coord));
        is_pivot[p.coord] = true;
    }

    // Solve the pivot block: M_piv * d(pivots) = -M_rest * d(rest).
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < chart.size(); ++v)
        if (!is_pivot[v])
            rest.push_back(v);
    ScalarMatrix m_piv = zero_matrix(chart, k, k);
    ScalarMatrix m_rest = zero_matrix(chart, k, rest.size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < k; ++l)
            m_piv[i][l] = pivots[i].form.coefficient({pivots[l].coord});
        for (std::size_t r = 0; r < rest.size(); ++r)
            m_rest[i][r] = pivots[i].form.coefficient({rest[r]});
    }
    auto inv = invert(m_piv);
    if (!inv)
        throw DomainError("pivot block is singular; cannot solve for pivot differentials");
    ScalarMatrix sol = matrix_product(*inv, m_rest); // d(pivot_l) = -sum sol[l][r] d(rest_r)

    std::vector<DiffForm> replacement(chart.size());
    for (std::size_t v = 0; v < chart.size(); ++v)
        replacement[v] = DiffForm::differential(chart, v);
    for (std::size_t l = 0; l < k; ++l) {
        DiffForm f(chart, 1);
        for (std::size_t r = 0; r < rest.size(); ++r)
            f.add_term({rest[r]}, -sol[l][r]);
        replacement[pivots[l].coord] = f;
    }

    DiffForm out(chart, a.degree());
    for (const auto& [key, c] : a.terms()) {
        DiffForm part = DiffForm::from_scalar(c);
        for (std::size_t idx : key)
            part = wedge(part, replacement[idx]);
        out = out + part;
    }
    return out;
}

DiffForm reduce_mod(const DiffForm& a, const std::vector<DiffForm>& generators) {
    return reduce_mod(a, choose_pivots(generators));
}

bool is_decomposable(const DiffForm& w) {
    if (w.degree() != 2)
        throw DomainError("decomposability test expects a 2-form");
    return wedge(w, w).is_zero();
}

ScalarMatrix two_form_matrix(const DiffForm& w) {
    if (w.degree() != 2)
        throw DomainError("two_form_matrix expects a 2-form");
    const Chart& chart = w.chart();
    std::size_t n = chart.size();
    ScalarMatrix m = zero_matrix(chart, n, n);
    for (const auto& [k, c] : w.terms()) {
        m[k[0]][k[1]] = c;
        m[k[1]][k[0]] = -c;
    }
    return m;
}

ScalarMatrix one_form_matrix(const std::vector<DiffForm>& forms) {
    if (forms.empty())
        throw DomainError("one_form_matrix expects at least one form");
    const Chart& chart = forms.front().chart();
    ScalarMatrix m = zero_matrix(chart, forms.size(), chart.size());
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (forms[i].degree() != 1)
            throw DomainError("one_form_matrix expects 1-forms");
        if (forms[i].chart() != chart)
            throw DomainError("form chart mismatch");
        for (const auto& [k, c] : forms[i].terms())
            m[i][k[0]] = c;
    }
    return m;
}

Factorization factor_decomposable(const DiffForm& w) {
    if (w.degree() != 2)
        throw DomainError("factor_decomposable expects a 2-form");
    if (w.is_zero())
        throw DomainError("factor_decomposable expects a nonzero form");
    if (!is_decomposable(w))
        throw DomainError("2-form is not decomposable (w ^ w != 0)");

    const Chart& chart = w.chart();
    // stored keys are already in lexicographic pair order; the first one is
    // the pivot entry c_ij != 0
    const auto& [key, c_ij] = *w.terms().begin();
    std::size_t i = key[0], j = key[1];

    ScalarMatrix m = two_form_matrix(w);
    DiffForm omega1(chart, 1), omega2(chart, 1);
    for (std::size_t kk = 0; kk < chart.size(); ++kk) {
        omega1.add_term({kk}, m[kk][j] / c_ij);
        omega2.add_term({kk}, m[i][kk]);
    }
    if (wedge(omega1, omega2) != w)
        throw ValidationError("decomposable factorization failed verification");
    return Factorization{omega1, omega2, i, j};
}

Coframe::Coframe(std::vector<DiffForm> forms) : forms_(std::move(forms)) {
    if (forms_.empty())
        throw DomainError("empty coframe");
    const Chart& chart = forms_.front().chart();
    if (forms_.size() != chart.size())
        throw DomainError("coframe needs as many 1-forms as coordinates");
    matrix_ = one_form_matrix(forms_);
    if (determinant(matrix_).is_zero())
        throw ValidationError("coframe coefficient matrix is singular");
}

std::vector<ScalarExpr> coefficients_in_coframe(const DiffForm& alpha, const Coframe& cf) {
    if (alpha.degree() != 1)
        throw DomainError("coframe expansion expects a 1-form");
    if (alpha.chart() != cf.chart())
        throw DomainError("form chart mismatch");
    const Chart& chart = cf.chart();
    std::vector<ScalarExpr> v;
    for (std::size_t j = 0; j < chart.size(); ++j)
        v.push_back(alpha.coefficient({j}));
    auto x = solve(matrix_transpose(cf.matrix()), v);
    if (!x)
        throw DomainError("singular coframe matrix");
    return *x;
}

ScalarMatrix two_form_in_coframe(const DiffForm& w, const Coframe& cf) {
    // w = 1/2 sum w'_{ab} pi_a ^ pi_b with w' = Pinv^T W Pinv
    auto inv = invert(cf.matrix());
    if (!inv)
        throw DomainError("singular coframe matrix");
    return matrix_product(matrix_transpose(*inv), matrix_product(two_form_matrix(w), *inv));
}

Coframe complete_to_coframe(const std::vector<DiffForm>& part) {
    if (part.empty())
        throw DomainError("complete_to_coframe expects at least one form");
    const Chart& chart = part.front().chart();
    ScalarMatrix m = one_form_matrix(part);
    std::size_t r = generic_rank(m);
    if (r != part.size())
        throw DomainError("dependent input generators");
    std::vector<DiffForm> forms = part;
    for (std::size_t v = 0; v < chart.size() && forms.size() < chart.size(); ++v) {
        std::vector<DiffForm> trial = forms;
        trial.push_back(DiffForm::differential(chart, v));
        if (generic_rank(one_form_matrix(trial)) == trial.size())
            forms = std::move(trial);
    }
    if (forms.size() != chart.size())
        throw DomainError("could not complete to a coframe");
    return Coframe(forms);
}

std::string to_string(const DiffForm& f) {
    if (f.is_zero())
        return "0";
    if (f.degree() == 0)
        return to_string(f.scalar_value());
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : f.terms()) {
        std::ostringstream differentials;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i > 0)
                differentials << "/\\";
            differentials << "d" << f.chart().name(k[i]);
        }
        // decide how to splice the coefficient in front of the differentials
        std::string cs = to_string(c);
        bool negative = false;
        std::string body;
        if (cs == "1") {
            body = differentials.str();
        } else if (cs == "-1") {
            negative = true;
            body = differentials.str();
        } else if (c.num().terms().size() > 1) {
            body = "(" + cs + ")*" + differentials.str();
        } else if (!cs.empty() && cs[0] == '-') {
            negative = true;
            body = cs.substr(1) + "*" + differentials.str();
        } else {
            body = cs + "*" + differentials.str();
        }
        if (first) {
            if (negative)
                out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        out << body;
    }
    return out.str();
}

} // namespace mag
