#pragma once

#include <optional>
#include <vector>

#include "mag/scalar.hpp"

namespace mag {

// Dense matrices over the rational function field. Sizes here are tiny
// (at most the chart dimension plus a few), so plain Gaussian elimination
// with exact field arithmetic is the right tool.
using ScalarMatrix = std::vector<std::vector<ScalarExpr>>;

ScalarMatrix zero_matrix(const Chart& chart, std::size_t rows, std::size_t cols);

// Reduced row echelon form in place; returns the pivot columns in order.
// Pivoting is deterministic: first row with a nonzero entry.
std::vector<std::size_t> rref(ScalarMatrix& m);

std::size_t generic_rank(ScalarMatrix m);

ScalarExpr determinant(ScalarMatrix m);

// Unique solution of a square nonsingular system; nullopt when singular.
std::optional<std::vector<ScalarExpr>> solve(ScalarMatrix a, std::vector<ScalarExpr> b);

std::optional<ScalarMatrix> invert(ScalarMatrix a);

// Basis of the right null space, one vector per free column of the rref,
// in ascending free-column order.
std::vector<std::vector<ScalarExpr>> nullspace(ScalarMatrix a);

ScalarMatrix matrix_product(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix matrix_transpose(const ScalarMatrix& a);

} // namespace mag
