#pragma once

#include <vector>

#include "whx/factorization.hpp"
#include "whx/polynomial.hpp"
#include "whx/rational_wh.hpp"

namespace whx {

struct IndexTuple {
  std::vector<int> kappas;  // nonincreasing
  static IndexTuple sorted(std::vector<int> k);
};

// kappa_1 - kappa_n <= 1
bool is_stable(const IndexTuple& k);

struct IndexSumReport {
  int index_sum = 0;
  int det_winding = 0;
  double residual = 0.0;
  bool pass = false;
};
IndexSumReport index_sum_check(const MatrixFunction& G, const Factorization& f, double residual_tol = 1e-8);

enum class EquivalenceStatus {
  constant,               // equal indices, H constant
  triangular_polynomial,  // 2x2, kappa1 > kappa2, H = [[c1, P], [0, c2]]
  unverified_structure,   // n > 2 with unequal indices; only the polynomial band is checked
  mismatch,
};

struct EquivalenceWitness {
  EquivalenceStatus status = EquivalenceStatus::mismatch;
  CMat H;           // constant part (the whole H when status == constant)
  cplx c1 = 0.0, c2 = 0.0;
  Poly P;           // ascending coefficients in the circle variable
  double defect = 0.0;  // size of the part of H outside the allowed structure, relative to |H|
  bool equivalent() const { return status != EquivalenceStatus::mismatch; }
};

// H = (G1+)^{-1} G2+ on the grid, checked against the non-uniqueness structure.
EquivalenceWitness equivalence_check(const Factorization& f1, const Factorization& f2, double threshold = 1e-8);
// The pair (G+ H, Lambda^{-1} H^{-1} Lambda G-) for a polynomial matrix H.
Factorization transform_factorization(const Factorization& f, const PolyMatrix& H);

struct PerturbationReport {
  double eps = 0.0;
  Factorization explicit_factors;  // [[1, t], [0, eps]] * I * [[0, -1/eps], [1, 1/(eps t)]]
  double explicit_residual = 0.0;
  std::vector<int> unperturbed_indices, perturbed_indices;  // recovered by the rational factorizer
  double factor_sup = 0.0;  // largest entry of the explicit factors on the circle
};
// [[t, 0], [eps, 1/t]] on the circle (the transported line example).
PerturbationReport perturbation_experiment(double eps, std::size_t n = 256);

struct ShubinReport {
  std::vector<double> deltas;
  std::vector<double> factor_change;  // aligned plus-factor distance for each delta
  bool monotone = false;
};
// Adds delta * E to G and compares the recovered plus factors after removing the constant freedom.
ShubinReport shubin_smoke(const RationalMatrixFunction& G, const CMat& E, const std::vector<double>& deltas);

}  // namespace whx
