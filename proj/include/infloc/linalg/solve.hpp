#pragma once

#include <optional>
#include <vector>

#include "infloc/linalg/matrix.hpp"

namespace infloc {

// U * m * V = D, D diagonal with d1 | d2 | ..., U and V unimodular.
struct SmithForm {
  Matrix U, D, V;
  std::size_t rank = 0;
  std::vector<mpz_class> invariant_factors() const;  // the nonzero diagonal
};

SmithForm smith_normal_form(const Matrix& m);
// Diagonal only; skips the transform bookkeeping.
std::vector<mpz_class> invariant_factors(const Matrix& m);

std::size_t rank(const Matrix& m);

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

// Over Z the solution and kernel basis are integral (kernel is a lattice basis).
std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b);
std::vector<Vec> kernel_basis(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

// Reduced row echelon form over a field (Z input is treated over Q).
struct Echelon {
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows;  // leading entry 1
  std::vector<std::size_t> pivots;                                // pivot column per row
};
Echelon row_echelon(const Matrix& m);

// Columns extending the given independent columns to a basis of the ambient
// space, drawn from the standard basis in index order (field coefficients).
std::vector<Vec> complete_basis(const Ring& ring, std::size_t n, const std::vector<Vec>& independent);

}  // namespace infloc
