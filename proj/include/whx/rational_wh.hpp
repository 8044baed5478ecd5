#pragma once

#include <cstddef>
#include <vector>

#include "whx/factorization.hpp"
#include "whx/polynomial.hpp"

namespace whx {

// alpha: the real line is the contour (upper half-plane is the plus side).
// t: the unit circle (the disc is the plus side).
enum class Variable { alpha, t };

struct RationalScalar {
  Poly num{0.0};
  Poly den{1.0};
  cplx eval(cplx z) const { return poly_eval(num, z) / poly_eval(den, z); }
};

struct DetRoot {
  cplx z;
  int multiplicity = 1;
  bool upper = false;  // upper half-plane (alpha) or open disc (t)
};

class RationalMatrixFunction {
 public:
  RationalMatrixFunction() = default;
  // Validates entries (nonzero leading coefficients, no common roots) and that
  // det has no roots or poles on the contour.
  RationalMatrixFunction(std::size_t rows, std::size_t cols, std::vector<RationalScalar> entries,
                         Variable var = Variable::alpha, const Tolerances& tol = default_tolerances());
  // Skips the contour checks (R of an elimination step is singular at alpha = infinity).
  static RationalMatrixFunction unchecked(std::size_t rows, std::size_t cols, std::vector<RationalScalar> entries,
                                          Variable var);
  static RationalMatrixFunction from_polynomial(const PolyMatrix& P, Variable var = Variable::alpha);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Variable variable() const { return var_; }
  const RationalScalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  const std::vector<RationalScalar>& entries() const { return e_; }
  const std::vector<DetRoot>& cached_det_roots() const { return det_roots_; }

  CMat eval(cplx z) const;
  RationalMatrixFunction to_circle() const;
  RationalMatrixFunction transpose() const;
  // Values on the n-point circle grid (through the circle form).
  MatrixFunction sample(std::size_t n) const;

  // M = P / q with q the least common denominator (roots clustered at 1e-9).
  PolyMatrix numerator_matrix(Poly* q) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RationalScalar> e_;
  Variable var_ = Variable::alpha;
  std::vector<DetRoot> det_roots_;
};

// R = I with column k replaced by (c_1, ..., c_n)^T / (z - z0), c_k = 1.
struct EliminationStep {
  cplx z0;
  std::size_t k = 0;
  CVec c;
  RationalMatrixFunction R(Variable var) const;
  PolyMatrix R_inverse() const;  // polynomial, det = z - z0
};

// L = P R is polynomial with the root z0 of det P removed.
// multiplicity: size of the det-root cluster around z0 (Newton is run with it as well as with 1).
std::pair<PolyMatrix, EliminationStep> eliminate_root(const PolyMatrix& P, cplx z0,
                                                      const Tolerances& tol = default_tolerances(), int multiplicity = 1);
int count_upper_roots(const Poly& p, Variable var, double band = 0.0);

struct RationalFactorization {
  Factorization factorization;     // sampled on the circle grid
  std::vector<EliminationStep> steps;
  PolyMatrix L;                    // after all eliminations (t variable)
  PolyMatrix row_reduced;          // V * R^{-1}, row degrees give the P-part of the indices
  int denominator_inside = 0;      // roots of q inside the disc
  std::size_t grid = 0;
};

RationalFactorization factor_rational(const RationalMatrixFunction& M, const Tolerances& tol = default_tolerances());

struct WHSolution {
  MatrixFunction phi_plus;
  MatrixFunction psi_minus;
  double residual = 0.0;            // sup |A Phi+ + Psi- + C| on the grid
  double analyticity_defect = 0.0;  // wrong-sided coefficients of Phi+ and Psi-
};

struct PoleRemovalOptions {
  // Line problems: pin the free parameters (if any) by Phi+(alpha = infinity) = 0.
  bool decay_at_infinity = false;
};

struct PoleRemovalResult : WHSolution {
  std::vector<cplx> poles;      // in the input variable
  std::vector<CVecX> residues;  // A_i, the residues of A Phi+ (circle variable)
  double condition = 1.0;
  int nullity = 0;              // dimension of the residue-system null space
  bool ill_conditioned = false;
};

// A Phi+ + Psi- + C = 0 with rational A; C is an n x 1 column on the circle grid.
// The residues are fixed by requiring A^{-1}(sum A_i/(t - z_i) - C+) to have no
// negative Fourier modes.
PoleRemovalResult pole_removal_solve(const RationalMatrixFunction& A, const MatrixFunction& C,
                                     const PoleRemovalOptions& opt = {},
                                     const Tolerances& tol = default_tolerances());
// Same equation through a right factorization A = A- A+ (all partial indices zero).
WHSolution solve_rational_wh(const RationalMatrixFunction& A, const MatrixFunction& C,
                             const Tolerances& tol = default_tolerances());

}  // namespace whx
