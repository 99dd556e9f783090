#include "mag/linalg.hpp"

namespace mag {

ScalarMatrix zero_matrix(const Chart& chart, std::size_t rows, std::size_t cols) {
    return ScalarMatrix(rows, std::vector<ScalarExpr>(cols, ScalarExpr::constant(chart, 0)));
}

std::vector<std::size_t> rref(ScalarMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty())
        return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot_row = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!m[i][c].is_zero()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == rows)
            continue;
        std::swap(m[r], m[pivot_row]);
        ScalarExpr inv = m[r][c];
        for (std::size_t j = c; j < cols; ++j)
            m[r][j] = m[r][j] / inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero())
                continue;
            ScalarExpr f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t generic_rank(ScalarMatrix m) {
    return rref(m).size();
}

ScalarExpr determinant(ScalarMatrix m) {
    if (m.empty())
        throw DomainError("determinant of an empty matrix");
    std::size_t n = m.size();
    if (m[0].size() != n)
        throw DomainError("determinant of a non-square matrix");
    const Chart& chart = m[0][0].chart();
    ScalarExpr det = ScalarExpr::constant(chart, 1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot_row = n;
        for (std::size_t i = c; i < n; ++i) {
            if (!m[i][c].is_zero()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == n)
            return ScalarExpr::constant(chart, 0);
        if (pivot_row != c) {
            std::swap(m[c], m[pivot_row]);
            det = -det;
        }
        det = det * m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero())
                continue;
            ScalarExpr f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j)
                m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return det;
}

std::optional<std::vector<ScalarExpr>> solve(ScalarMatrix a, std::vector<ScalarExpr> b) {
    std::size_t n = a.size();
    if (n == 0 || a[0].size() != n || b.size() != n)
        throw DomainError("solve expects a square system");
    for (std::size_t i = 0; i < n; ++i)
        a[i].push_back(b[i]);
    auto pivots = rref(a);
    if (pivots.size() != n)
        return std::nullopt;
    std::vector<ScalarExpr> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        x.push_back(a[i][n]);
    return x;
}

std::optional<ScalarMatrix> invert(ScalarMatrix a) {
    std::size_t n = a.size();
    if (n == 0 || a[0].size() != n)
        throw DomainError("invert expects a square matrix");
    Chart chart = a[0][0].chart(); // by value: push_back below reallocates rows
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i].push_back(ScalarExpr::constant(chart, i == j ? 1 : 0));
    auto pivots = rref(a);
    if (pivots.size() != n)
        return std::nullopt;
    ScalarMatrix inv(n);
    for (std::size_t i = 0; i < n; ++i)
        inv[i].assign(a[i].begin() + static_cast<std::ptrdiff_t>(n), a[i].end());
    return inv;
}

std::vector<std::vector<ScalarExpr>> nullspace(ScalarMatrix a) {
    if (a.empty())
        return {};
    std::size_t cols = a[0].size();
    Chart chart = a[0][0].chart();
    ScalarMatrix r = a;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<ScalarExpr>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<ScalarExpr> v(cols, ScalarExpr::constant(chart, 0));
        v[free] = ScalarExpr::constant(chart, 1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

ScalarMatrix matrix_product(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.empty() || b.empty())
        throw DomainError("product of empty matrices");
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    if (a[0].size() != k)
        throw DomainError("matrix product shape mismatch");
    const Chart& chart = a[0][0].chart();
    ScalarMatrix out = zero_matrix(chart, n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero())
                continue;
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] = out[i][j] + a[i][l] * b[l][j];
        }
    return out;
}

ScalarMatrix matrix_transpose(const ScalarMatrix& a) {
    if (a.empty())
        return a;
    ScalarMatrix out(a[0].size(), std::vector<ScalarExpr>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j)
            out[j][i] = a[i][j];
    return out;
}

} // namespace mag
