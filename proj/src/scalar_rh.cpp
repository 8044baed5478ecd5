#include "whx/scalar_rh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "whx/error.hpp"

namespace whx {

namespace {

std::size_t common_n(const LaurentFunction& a, const LaurentFunction& b) {
  return std::max(a.n_samples(), b.n_samples());
}

}  // namespace

ScalarFactorization factor_scalar(const LaurentFunction& G, const Tolerances& tol) {
  ScalarFactorization s;
  s.kappa = winding_index(G, tol);
  auto [gp, gm] = cauchy_split(carrier_log(G, s.kappa, tol));
  s.X_plus = exp(gp);
  s.X_minus = exp(gm);
  return s;
}

Factorization to_factorization(const ScalarFactorization& s, const LaurentFunction& G) {
  Factorization f;
  f.plus = MatrixFunction::scalar(s.X_plus);
  f.minus = MatrixFunction::scalar(s.X_minus);
  f.partial_indices = {s.kappa};
  finalize(f, MatrixFunction::scalar(G));
  return f;
}

ScalarRHSolution solve_scalar_rh(const ScalarRHProblem& p, const Tolerances& tol) {
  const std::size_t n = common_n(p.G, p.g);
  LaurentFunction G = p.G.resized(n), g = p.g.resized(n);
  ScalarFactorization X = factor_scalar(G, tol);
  ScalarRHSolution out;
  out.kappa = X.kappa;

  auto [psi_p, psi_m] = cauchy_split(g / X.X_plus);
  const int k = X.kappa;

  if (k < 0) {
    double scale = std::max(1.0, psi_m.coeff_max(psi_m.k_min(), -1));
    double worst = 0.0;
    for (int j = 1; j <= -k - 1; ++j) {
      cplx m = cplx(0.0, 2.0 * std::numbers::pi) * psi_m.coeff(-j);
      out.moments.push_back(m);
      worst = std::max(worst, std::abs(m));
    }
    if (worst > tol.residual * scale) {
      std::vector<double> data;
      for (const cplx& m : out.moments) {
        data.push_back(m.real());
        data.push_back(m.imag());
      }
      throw Error(ErrorKind::no_solution, "solvability conditions fail for negative index", data);
    }
  }

  // Phi+ = X+ (psi+ + P), Phi- = t^{-kappa} (P - psi-) / X-
  out.phi_plus = X.X_plus * psi_p;
  // For kappa < 0 the first -kappa - 1 coefficients of psi- vanish, so this
  // stays bounded at infinity.
  out.phi_minus = (-minus_part(psi_m / X.X_minus)).shifted(-k).resized(n);
  LaurentFunction inv = pointwise(X.X_minus, [](cplx v) { return 1.0 / v; });
  for (int j = 0; j <= k; ++j) {
    out.basis_plus.push_back(X.X_plus.shifted(j).resized(n));
    out.basis_minus.push_back(inv.shifted(j - k).resized(n));
  }
  return out;
}

std::pair<LaurentFunction, LaurentFunction> StripSolution::with_j(const std::vector<cplx>& j_coeffs) const {
  if (j_coeffs.size() > j_phi_plus.size())
    throw Error(ErrorKind::invalid_input, "more J coefficients than the growth order allows");
  LaurentFunction a = phi_plus, b = psi_minus;
  for (std::size_t m = 0; m < j_coeffs.size(); ++m) {
    a += j_coeffs[m] * j_phi_plus[m];
    b += j_coeffs[m] * j_psi_minus[m];
  }
  return {a, b};
}

StripSolution solve_wh_strip(const LaurentFunction& K, const LaurentFunction& C, int growth_n,
                             const Tolerances& tol) {
  if (growth_n < -1) throw Error(ErrorKind::invalid_input, "growth order must be >= -1");
  const std::size_t n = common_n(K, C);
  StripSolution s;
  s.K_factors = factor_scalar(K.resized(n), tol);
  if (s.K_factors.kappa != 0)
    throw Error(ErrorKind::not_canonical, "kernel has nonzero index; use solve_scalar_rh",
                {static_cast<double>(s.K_factors.kappa)});
  const auto& Kp = s.K_factors.X_plus;
  const auto& Km = s.K_factors.X_minus;
  auto [cp, cm] = cauchy_split(C.resized(n) / Km);
  // Phi+ = (J - C+) / K+, Psi- = -K- (J + C-)
  s.phi_plus = -(cp / Kp);
  s.psi_minus = -(Km * cm);
  for (int m = 0; m <= growth_n; ++m) {
    auto tm = LaurentFunction::monomial(m, n);
    s.j_phi_plus.push_back(tm / Kp);
    s.j_psi_minus.push_back(-(Km * tm));
  }
  return s;
}

PairedSolution solve_paired(const LaurentFunction& A, const LaurentFunction& B, const LaurentFunction& C,
                            const LaurentFunction& D, const Tolerances& tol) {
  std::size_t n = std::max({A.n_samples(), B.n_samples(), C.n_samples(), D.n_samples()});
  LaurentFunction a = A.resized(n), b = B.resized(n), c = C.resized(n), d = D.resized(n);
  if (a.min_abs() <= tol.singularity || b.min_abs() <= tol.singularity)
    throw Error(ErrorKind::contour_singularity, "paired-equation symbol vanishes on the contour");
  // A X - C = M- (strictly minus), B X - D = N+.  With R = B/A:
  // N+ = (R/t) (t M-) + (R C - D), a Riemann-Hilbert problem with bounded t M-.
  LaurentFunction R = b / a;
  ScalarRHProblem rh{R.shifted(-1).resized(n), R * c - d};
  ScalarRHSolution sol = solve_scalar_rh(rh, tol);
  PairedSolution out;
  out.reduced_kappa = sol.kappa;
  LaurentFunction Mm = sol.phi_minus.shifted(-1).resized(n);
  out.X = ((c + Mm) / a).resized(n);
  for (const auto& h : sol.basis_minus) out.homogeneous.push_back((h.shifted(-1) / a).resized(n));
  return out;
}

LaurentFunction solve_dual(const LaurentFunction& K1, const LaurentFunction& K2, const LaurentFunction& g,
                           const Tolerances& tol) {
  std::size_t n = std::max({K1.n_samples(), K2.n_samples(), g.n_samples()});
  auto one = LaurentFunction::constant(1.0, n);
  auto [gp, gm] = cauchy_split(g.resized(n));
  PairedSolution s = solve_paired(one + K1, one + K2, gp, gm, tol);
  return s.X;
}

}  // namespace whx
