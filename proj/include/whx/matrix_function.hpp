#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "whx/laurent.hpp"

namespace whx {

using CMat = Eigen::MatrixXcd;
using CVecX = Eigen::VectorXcd;

enum class Domain { circle, line };

// Rectangular array of LaurentFunctions sharing one grid size.
class MatrixFunction {
 public:
  MatrixFunction() = default;
  MatrixFunction(std::size_t rows, std::size_t cols, std::vector<LaurentFunction> entries,
                 Domain domain = Domain::circle);

  static MatrixFunction from_grid(const std::vector<CMat>& values, Domain domain = Domain::circle);
  static MatrixFunction on_grid(const std::function<CMat(cplx)>& f, std::size_t rows, std::size_t cols,
                                std::size_t n);
  static MatrixFunction identity(std::size_t dim, std::size_t n);
  static MatrixFunction constant(const CMat& c, std::size_t n);
  static MatrixFunction diagonal(const std::vector<LaurentFunction>& d);
  static MatrixFunction scalar(const LaurentFunction& f) { return MatrixFunction(1, 1, {f}); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t n_samples() const { return n_; }
  Domain domain() const { return domain_; }
  bool square() const { return rows_ == cols_; }
  const LaurentFunction& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<LaurentFunction>& entries() const { return entries_; }

  MatrixFunction with_entry(std::size_t i, std::size_t j, const LaurentFunction& f) const;
  MatrixFunction with_domain(Domain d) const;

  std::vector<CMat> grid() const { return grid(n_); }
  std::vector<CMat> grid(std::size_t n) const;
  CMat eval(cplx z) const;
  MatrixFunction resized(std::size_t n) const;
  MatrixFunction transpose() const;

  double sup_norm() const;
  // max |c_k| over all entries for from <= k <= to
  double coeff_max(int from, int to) const;
  int k_min() const;
  int k_max() const;

 private:
  std::size_t rows_ = 0, cols_ = 0, n_ = 8;
  std::vector<LaurentFunction> entries_;
  Domain domain_ = Domain::circle;
};

MatrixFunction operator+(const MatrixFunction& a, const MatrixFunction& b);
MatrixFunction operator-(const MatrixFunction& a, const MatrixFunction& b);
MatrixFunction operator*(cplx s, const MatrixFunction& a);
MatrixFunction product(const MatrixFunction& a, const MatrixFunction& b);
MatrixFunction product(const std::vector<MatrixFunction>& factors);
MatrixFunction inverse(const MatrixFunction& a, const Tolerances& tol = default_tolerances());
LaurentFunction det(const MatrixFunction& a);
double min_abs_det(const MatrixFunction& a);

MatrixFunction plus_part(const MatrixFunction& m);
MatrixFunction minus_part(const MatrixFunction& m);
MatrixFunction shifted(const MatrixFunction& m, int k);

// diag(t^kappa_1, ..., t^kappa_n)
MatrixFunction lambda_matrix(const std::vector<int>& kappas, std::size_t n);

// max over the n-point grid of the largest entrywise |a - b|
double sup_distance(const MatrixFunction& a, const MatrixFunction& b, std::size_t n);

std::vector<CMat> grid_product(const std::vector<CMat>& a, const std::vector<CMat>& b);
std::vector<CMat> grid_inverse(const std::vector<CMat>& a);

}  // namespace whx
