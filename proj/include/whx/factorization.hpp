#pragma once

#include <cstddef>
#include <vector>

#include "whx/matrix_function.hpp"

namespace whx {

enum class Side { left, right };

// Left: G = plus * diag(t^kappa) * minus. Right: G = minus * diag(t^kappa) * plus.
struct Factorization {
  MatrixFunction plus;
  MatrixFunction minus;
  std::vector<int> partial_indices;
  double residual_inf = 0.0;
  double analyticity_defect = 0.0;
  Side side = Side::left;
};

MatrixFunction reconstruct(const Factorization& f);
// Residual measured on the doubled grid, so interpolation error of the factor
// representations shows up.
double factorization_residual(const MatrixFunction& g, const Factorization& f);
// Wrong-sided coefficients: k < 0 in plus, k > 0 in minus.
double analyticity_defect(const Factorization& f);
// Same for the inverse factors.
double inverse_analyticity_defect(const Factorization& f);
// Permute to kappa_1 >= ... >= kappa_n.
void sort_indices(Factorization& f);  // left side only
// Fills residual_inf and analyticity_defect.
void finalize(Factorization& f, const MatrixFunction& g);

}  // namespace whx
