#include "whx/factorization.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "whx/error.hpp"

namespace whx {

MatrixFunction reconstruct(const Factorization& f) {
  const std::size_t n = std::max(f.plus.n_samples(), f.minus.n_samples());
  if (f.side == Side::right) return product({f.minus, lambda_matrix(f.partial_indices, n), f.plus});
  return product({f.plus, lambda_matrix(f.partial_indices, n), f.minus});
}

double factorization_residual(const MatrixFunction& g, const Factorization& f) {
  const std::size_t n = 2 * std::max({g.n_samples(), f.plus.n_samples(), f.minus.n_samples()});
  auto gp = f.plus.grid(n), gm = f.minus.grid(n), gg = g.grid(n);
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    CVecX lam(static_cast<Eigen::Index>(f.partial_indices.size()));
    for (std::size_t i = 0; i < f.partial_indices.size(); ++i) {
      long e = (static_cast<long>(j) * f.partial_indices[i]) % static_cast<long>(n);
      lam(static_cast<Eigen::Index>(i)) =
          std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
    }
    CMat r = (f.side == Side::left ? CMat(gp[j] * lam.asDiagonal() * gm[j]) : CMat(gm[j] * lam.asDiagonal() * gp[j])) - gg[j];
    m = std::max(m, r.cwiseAbs().maxCoeff());
  }
  return m;
}

double analyticity_defect(const Factorization& f) {
  return std::max(f.plus.coeff_max(f.plus.k_min(), -1), f.minus.coeff_max(1, f.minus.k_max()));
}

double inverse_analyticity_defect(const Factorization& f) {
  MatrixFunction ip = inverse(f.plus), im = inverse(f.minus);
  return std::max(ip.coeff_max(ip.k_min(), -1), im.coeff_max(1, im.k_max()));
}

void sort_indices(Factorization& f) {
  if (f.side == Side::right) throw Error(ErrorKind::unsupported, "index sorting of a right factorization");
  const std::size_t m = f.partial_indices.size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return f.partial_indices[a] > f.partial_indices[b]; });
  std::vector<LaurentFunction> pe, me;
  for (std::size_t i = 0; i < f.plus.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) pe.push_back(f.plus(i, perm[j]));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < f.minus.cols(); ++j) me.push_back(f.minus(perm[i], j));
  std::vector<int> k(m);
  for (std::size_t i = 0; i < m; ++i) k[i] = f.partial_indices[perm[i]];
  f.plus = MatrixFunction(f.plus.rows(), m, std::move(pe), f.plus.domain());
  f.minus = MatrixFunction(m, f.minus.cols(), std::move(me), f.minus.domain());
  f.partial_indices = k;
}

void finalize(Factorization& f, const MatrixFunction& g) {
  if (f.partial_indices.size() != f.plus.rows())
    throw Error(ErrorKind::invalid_input, "index vector length differs from factor size");
  f.residual_inf = factorization_residual(g, f);
  f.analyticity_defect = analyticity_defect(f);
}

}  // namespace whx
