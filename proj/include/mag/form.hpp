#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mag/linalg.hpp"
#include "mag/scalar.hpp"

namespace mag {

// Strictly increasing coordinate indices; the storage key of a form term.
using IndexSet = std::vector<std::size_t>;

// Homogeneous-degree exterior form with rational-function coefficients.
// Terms are stored sign-normalized on strictly increasing index sets and
// zero coefficients are deleted, so equality is term-by-term comparison.
class DiffForm {
public:
    DiffForm() = default;
    DiffForm(Chart chart, unsigned degree);

    static DiffForm from_scalar(const ScalarExpr& s);                      // degree 0
    static DiffForm differential(const Chart& chart, std::size_t index);   // d(coord)
    static DiffForm differential(const Chart& chart, const std::string& name);

    const Chart& chart() const { return chart_; }
    unsigned degree() const { return degree_; }
    const std::map<IndexSet, ScalarExpr>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    ScalarExpr coefficient(const IndexSet& key) const; // zero when absent

    // Accumulate a term; the key must be strictly increasing of size degree.
    void add_term(const IndexSet& key, const ScalarExpr& coeff);
    // Accumulate with sign normalization of an arbitrary (possibly unsorted)
    // index tuple; duplicate indices annihilate the term.
    void add_term_signed(std::vector<std::size_t> key, const ScalarExpr& coeff);

    DiffForm operator-() const;
    DiffForm operator+(const DiffForm& o) const;
    DiffForm operator-(const DiffForm& o) const;
    DiffForm operator*(const ScalarExpr& s) const;

    bool operator==(const DiffForm& o) const {
        return chart_ == o.chart_ && degree_ == o.degree_ && terms_ == o.terms_;
    }
    bool operator!=(const DiffForm& o) const { return !(*this == o); }

    // ScalarExpr value of a degree-0 form.
    ScalarExpr scalar_value() const;

private:
    Chart chart_;
    unsigned degree_ = 0;
    std::map<IndexSet, ScalarExpr> terms_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);

DiffForm exterior_derivative(const DiffForm& a);

// Pullback along the map whose components are sigma; sigma must assign every
// source coordinate an expression over a common target chart.
DiffForm pullback(const DiffForm& a, const std::map<std::string, ScalarExpr>& sigma);

// A 1-form together with the coordinate solved for when reducing modulo it.
struct Pivot {
    DiffForm form;
    std::size_t coord;
};

// Deterministic pivot choice: first coordinate in chart order whose
// coefficient is a nonzero constant, else first with nonzero coefficient;
// coordinates already used by earlier generators are skipped.
std::vector<Pivot> choose_pivots(const std::vector<DiffForm>& generators);

// Substitute each pivot differential by its solved expression; the result
// contains no pivot differentials and is congruent to a modulo the ideal
// generated by the pivot forms.
DiffForm reduce_mod(const DiffForm& a, const std::vector<Pivot>& pivots);
DiffForm reduce_mod(const DiffForm& a, const std::vector<DiffForm>& generators);

// Degree-2 test: w decomposable iff w ^ w = 0.
bool is_decomposable(const DiffForm& w);

struct Factorization {
    DiffForm omega1;
    DiffForm omega2;
    std::size_t pivot_i;
    std::size_t pivot_j;
};

// Split a nonzero decomposable 2-form into omega1 ^ omega2 using the first
// nonzero entry in lexicographic pair order as pivot. The identity
// omega1 ^ omega2 = w is re-checked symbolically before returning.
Factorization factor_decomposable(const DiffForm& w);

// Antisymmetric coefficient matrix of a 2-form in the coordinate basis.
ScalarMatrix two_form_matrix(const DiffForm& w);

// Row i = coefficients of the i-th 1-form on the coordinate differentials.
ScalarMatrix one_form_matrix(const std::vector<DiffForm>& forms);

// An ordered basis of 1-forms with generically nonzero determinant.
class Coframe {
public:
    explicit Coframe(std::vector<DiffForm> forms);

    const std::vector<DiffForm>& forms() const { return forms_; }
    std::size_t size() const { return forms_.size(); }
    const Chart& chart() const { return forms_.front().chart(); }
    const ScalarMatrix& matrix() const { return matrix_; }

private:
    std::vector<DiffForm> forms_;
    ScalarMatrix matrix_;
};

// Unique expansion of a 1-form in a coframe, by exact linear elimination.
std::vector<ScalarExpr> coefficients_in_coframe(const DiffForm& alpha, const Coframe& cf);

// Expand a 2-form in the wedge basis of a coframe; entry (a, b) with a < b.
ScalarMatrix two_form_in_coframe(const DiffForm& w, const Coframe& cf);

// Greedily append coordinate differentials (in chart order) that keep the
// collection independent until a full coframe is reached.
Coframe complete_to_coframe(const std::vector<DiffForm>& part);

std::string to_string(const DiffForm& f);

} // namespace mag
