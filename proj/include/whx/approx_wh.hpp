#pragma once

#include <cstddef>
#include <vector>

#include "whx/factorization.hpp"
#include "whx/rational_wh.hpp"

namespace whx {

// I + eps G ~ S- S+, built order by order.
struct AsymptoticState {
  int j = 0;
  MatrixFunction S_minus, S_plus;
  std::vector<MatrixFunction> G_minus, G_plus;  // G_i-, G_i+ for i = 0..j-1
  std::vector<double> delta_norm_history;       // sup |Delta_j|, one entry per step
};

struct AsymptoticResult {
  Factorization factorization;  // right-sided: I + eps G ~ minus * plus, indices zero
  AsymptoticState state;
};

// Throws divergence (data = history so far) after two consecutive increases of |Delta_j|.
// check_size rejects sup |eps G| >= 1 up front.
AsymptoticResult asymptotic_factor(const MatrixFunction& G, double eps, int j_max, double tol, bool check_size = true);
// I + eps G - S- S+ for the current partial products.
MatrixFunction asymptotic_defect(const MatrixFunction& G, double eps, const AsymptoticState& s);

struct RationalFit {
  RationalMatrixFunction approximant;  // t variable
  RationalFactorization factors;       // of the approximant
  double fit_error = 0.0;              // sup |K - K_rat| on the grid of K
  double residual = 0.0;               // factor residual against the original K
  // Roots of the (1, 1) entry after spurious pairs are removed.
  std::vector<cplx> poles, zeros;
  int spurious_removed = 0;
};

// Entrywise least squares p/q on the circle grid with Sanathanan-Koerner
// reweighting, then an exact rational factorization of the result.
RationalFit rational_fit_factor(const MatrixFunction& K, int num_deg, int den_deg,
                                const Tolerances& tol = default_tolerances());
RationalFit rational_fit_factor(const LaurentFunction& K, int num_deg, int den_deg,
                                const Tolerances& tol = default_tolerances());
// Fit only (no factorization). Throws contour_singularity if q vanishes on the circle.
RationalScalar fit_rational(const LaurentFunction& K, int num_deg, int den_deg, int* spurious_removed = nullptr);

struct FitSweep {
  std::vector<int> degrees;  // m for type (m, m)
  std::vector<double> raw_errors;  // the type (m, m) fit itself
  std::vector<double> errors;      // best over types up to (m, m)
  bool stagnated = false;          // some degree failed to improve on the previous one
};
FitSweep rational_fit_sweep(const LaurentFunction& K, int max_deg);

// sup |K - r| over grid nodes whose line preimage satisfies |alpha| <= alpha_max (inside = true)
// or |alpha| > alpha_max (inside = false).
double windowed_error(const LaurentFunction& K, const RationalScalar& r, double alpha_max, bool inside);

// exp(i alpha L) is carried by t^L on the circle (integer L): bounded and analytic in the
// disc, decaying like |t|^L inside.
// Phi0- = A Psi0+ + B e Psi_L+ + f1,  Phi_L- = C e^{-1} Psi0+ + f2.
struct ExponentialSystem {
  LaurentFunction A, B, C, f1, f2;
  int L = 1;
};

struct ExponentialSolution {
  LaurentFunction phi0_minus, phiL_minus, psi0_plus, psiL_plus;
  std::vector<double> change_history;  // sup change of the iterate, one entry per sweep
  int iterations = 0;                  // sweeps that moved the iterate by tol or more
  double residual = 0.0;               // both rows, doubled grid
  double analyticity_defect = 0.0;     // wrong-sided coefficients of the four unknowns
};

ExponentialSolution iterative_exponential_solve(const ExponentialSystem& sys, double tol, int max_iter);

}  // namespace whx
