#pragma once

#include <climits>
#include <vector>

#include "whx/factorization.hpp"

namespace whx {

// G = [[zeta1, 0], [a, zeta2]] on the unit circle.
struct Triangular2x2 {
  LaurentFunction zeta1, zeta2, a;
  MatrixFunction matrix() const;
};

constexpr int order_of_zero = INT_MAX;  // entry vanishes identically

// X+ = G X- with X- column-reduced at infinity once `normal` is set.
struct CanonicalMatrix {
  MatrixFunction X_plus, X_minus;
  // order at infinity of each X- entry: f ~ z^{-order}
  std::vector<std::vector<int>> orders_at_infinity;
  std::vector<int> partial_indices;  // minus the column degrees of X-
  std::vector<int> mu;               // order of phi_i^- at infinity (order_of_zero if phi_i^- = 0)
  int steps = 0;                     // polynomial quotients used by the normalization
  bool normal = false;
  double boundary_residual = 0.0;    // sup |X+ - G X-|
  double det_min = 0.0;              // min |det X| over the grid and the probe points
};

struct TriangularResult {
  CanonicalMatrix canonical;
  Factorization factorization;
  bool normal_on_entry = false;  // the raw canonical matrix already had normal form
};

TriangularResult chebotarev_2x2(const Triangular2x2& T, const Tolerances& tol = default_tolerances());
CanonicalMatrix normalize_at_infinity(const CanonicalMatrix& X, const MatrixFunction& G,
                                      const Tolerances& tol = default_tolerances());
// Lower-triangular B, factored through the bordered reduction one row at a time.
Factorization reduce_triangular_n(const MatrixFunction& B, const Tolerances& tol = default_tolerances());

}  // namespace whx
