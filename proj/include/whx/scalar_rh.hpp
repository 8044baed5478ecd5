#pragma once

#include <vector>

#include "whx/factorization.hpp"
#include "whx/laurent.hpp"

namespace whx {

// G = X_plus * t^kappa * X_minus with X_minus -> 1 at infinity.
struct ScalarFactorization {
  LaurentFunction X_plus;
  LaurentFunction X_minus;
  int kappa = 0;
};

ScalarFactorization factor_scalar(const LaurentFunction& G, const Tolerances& tol = default_tolerances());
Factorization to_factorization(const ScalarFactorization& s, const LaurentFunction& G);

// Phi+ = G Phi- + g on the circle, Phi- bounded at infinity.
struct ScalarRHProblem {
  LaurentFunction G;
  LaurentFunction g;
};

struct ScalarRHSolution {
  int kappa = 0;
  // Particular solution (free polynomial set to zero).
  LaurentFunction phi_plus;
  LaurentFunction phi_minus;
  // Homogeneous solutions, one per free polynomial coefficient (kappa + 1 of them).
  std::vector<LaurentFunction> basis_plus;
  std::vector<LaurentFunction> basis_minus;
  // For kappa < 0: the moments of g / X+ against t^{k-1}, k = 1..-kappa-1.
  std::vector<cplx> moments;
  int polynomial_dof() const { return static_cast<int>(basis_plus.size()); }
};

ScalarRHSolution solve_scalar_rh(const ScalarRHProblem& p, const Tolerances& tol = default_tolerances());

// K Phi+ + Psi- + C = 0 with K of index zero; J is a polynomial of degree <= growth_n.
struct StripSolution {
  LaurentFunction phi_plus;   // J = 0
  LaurentFunction psi_minus;  // J = 0
  // Contribution of J = t^m to (Phi+, Psi-), m = 0..growth_n.
  std::vector<LaurentFunction> j_phi_plus;
  std::vector<LaurentFunction> j_psi_minus;
  ScalarFactorization K_factors;
  // Assembles the solution for a given set of J coefficients.
  std::pair<LaurentFunction, LaurentFunction> with_j(const std::vector<cplx>& j_coeffs) const;
};

StripSolution solve_wh_strip(const LaurentFunction& K, const LaurentFunction& C, int growth_n,
                             const Tolerances& tol = default_tolerances());

// Paired equation: P+[(1 + K1) f - g] = 0 and P-[(1 + K2) f - g] = 0, where P+
// keeps k >= 0 (the x > 0 half) and P- keeps k < 0.
LaurentFunction solve_dual(const LaurentFunction& K1, const LaurentFunction& K2, const LaurentFunction& g,
                           const Tolerances& tol = default_tolerances());

// Shared core for continuous and discrete paired problems:
// P+[A X - C] = 0, P-[B X - D] = 0 with C one-sided plus and D strictly minus.
struct PairedSolution {
  LaurentFunction X;
  std::vector<LaurentFunction> homogeneous;  // extra solutions when the reduced index is >= 0
  int reduced_kappa = 0;
};
PairedSolution solve_paired(const LaurentFunction& A, const LaurentFunction& B, const LaurentFunction& C,
                            const LaurentFunction& D, const Tolerances& tol = default_tolerances());

}  // namespace whx
