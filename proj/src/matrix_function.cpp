#include "whx/matrix_function.hpp"

#include <algorithm>
#include <cmath>

#include "whx/error.hpp"

namespace whx {

MatrixFunction::MatrixFunction(std::size_t rows, std::size_t cols, std::vector<LaurentFunction> entries,
                               Domain domain)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), domain_(domain) {
  if (rows == 0 || cols == 0 || entries_.size() != rows * cols)
    throw Error(ErrorKind::invalid_input, "matrix function shape does not match entry count");
  n_ = 4;
  for (const auto& e : entries_) n_ = std::max(n_, e.n_samples());
  for (auto& e : entries_)
    if (e.n_samples() != n_) e = e.resized(n_);
}

MatrixFunction MatrixFunction::from_grid(const std::vector<CMat>& values, Domain domain) {
  if (values.empty()) throw Error(ErrorKind::invalid_input, "empty grid");
  const std::size_t n = values.size();
  const auto r = static_cast<std::size_t>(values[0].rows());
  const auto c = static_cast<std::size_t>(values[0].cols());
  std::vector<LaurentFunction> e;
  e.reserve(r * c);
  CVec s(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t k = 0; k < n; ++k) s[k] = values[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      e.push_back(LaurentFunction::from_samples(s));
    }
  return MatrixFunction(r, c, std::move(e), domain);
}

MatrixFunction MatrixFunction::on_grid(const std::function<CMat(cplx)>& f, std::size_t rows, std::size_t cols,
                                       std::size_t n) {
  CVec t = grid_nodes(n);
  std::vector<CMat> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = f(t[j]);
    if (static_cast<std::size_t>(v[j].rows()) != rows || static_cast<std::size_t>(v[j].cols()) != cols)
      throw Error(ErrorKind::invalid_input, "matrix callback returned the wrong shape");
  }
  return from_grid(v);
}

MatrixFunction MatrixFunction::identity(std::size_t dim, std::size_t n) {
  return constant(CMat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)), n);
}

MatrixFunction MatrixFunction::constant(const CMat& c, std::size_t n) {
  std::vector<LaurentFunction> e;
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) e.push_back(LaurentFunction::constant(c(i, j), n));
  return MatrixFunction(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()), std::move(e));
}

MatrixFunction MatrixFunction::diagonal(const std::vector<LaurentFunction>& d) {
  const std::size_t m = d.size();
  std::size_t n = 4;
  for (const auto& f : d) n = std::max(n, f.n_samples());
  std::vector<LaurentFunction> e(m * m, LaurentFunction::constant(0.0, n));
  for (std::size_t i = 0; i < m; ++i) e[i * m + i] = d[i];
  return MatrixFunction(m, m, std::move(e));
}

MatrixFunction MatrixFunction::with_entry(std::size_t i, std::size_t j, const LaurentFunction& f) const {
  auto e = entries_;
  e.at(i * cols_ + j) = f;
  return MatrixFunction(rows_, cols_, std::move(e), domain_);
}

MatrixFunction MatrixFunction::with_domain(Domain d) const {
  MatrixFunction m = *this;
  m.domain_ = d;
  return m;
}

std::vector<CMat> MatrixFunction::grid(std::size_t n) const {
  std::vector<CMat> out(n, CMat::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_)));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      CVec s = entries_[i * cols_ + j].samples(n);
      for (std::size_t k = 0; k < n; ++k) out[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s[k];
    }
  return out;
}

CMat MatrixFunction::eval(cplx z) const {
  CMat m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries_[i * cols_ + j](z);
  return m;
}

MatrixFunction MatrixFunction::resized(std::size_t n) const {
  auto e = entries_;
  for (auto& f : e) f = f.resized(n);
  return MatrixFunction(rows_, cols_, std::move(e), domain_);
}

MatrixFunction MatrixFunction::transpose() const {
  std::vector<LaurentFunction> e;
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) e.push_back(entries_[i * cols_ + j]);
  return MatrixFunction(cols_, rows_, std::move(e), domain_);
}

double MatrixFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.sup_norm());
  return m;
}

double MatrixFunction::coeff_max(int from, int to) const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.coeff_max(from, to));
  return m;
}

int MatrixFunction::k_min() const {
  int k = 0;
  for (const auto& e : entries_) k = std::min(k, e.k_min());
  return k;
}

int MatrixFunction::k_max() const {
  int k = 0;
  for (const auto& e : entries_) k = std::max(k, e.k_max());
  return k;
}

MatrixFunction operator+(const MatrixFunction& a, const MatrixFunction& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::invalid_input, "shape mismatch in sum");
  std::vector<LaurentFunction> e;
  for (std::size_t k = 0; k < a.entries().size(); ++k) e.push_back(a.entries()[k] + b.entries()[k]);
  return MatrixFunction(a.rows(), a.cols(), std::move(e), a.domain());
}

MatrixFunction operator-(const MatrixFunction& a, const MatrixFunction& b) { return a + cplx{-1.0} * b; }

MatrixFunction operator*(cplx s, const MatrixFunction& a) {
  std::vector<LaurentFunction> e;
  for (const auto& f : a.entries()) e.push_back(s * f);
  return MatrixFunction(a.rows(), a.cols(), std::move(e), a.domain());
}

std::vector<CMat> grid_product(const std::vector<CMat>& a, const std::vector<CMat>& b) {
  std::vector<CMat> r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] * b[k];
  return r;
}

std::vector<CMat> grid_inverse(const std::vector<CMat>& a) {
  std::vector<CMat> r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k].partialPivLu().inverse();
  return r;
}

MatrixFunction product(const MatrixFunction& a, const MatrixFunction& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::invalid_input, "shape mismatch in product");
  const std::size_t n = std::max(a.n_samples(), b.n_samples());
  return MatrixFunction::from_grid(grid_product(a.grid(n), b.grid(n)), a.domain());
}

MatrixFunction product(const std::vector<MatrixFunction>& factors) {
  if (factors.empty()) throw Error(ErrorKind::invalid_input, "empty product");
  std::size_t n = 4;
  for (const auto& f : factors) n = std::max(n, f.n_samples());
  std::vector<CMat> acc = factors[0].grid(n);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (factors[i - 1].cols() != factors[i].rows()) throw Error(ErrorKind::invalid_input, "shape mismatch in product");
    acc = grid_product(acc, factors[i].grid(n));
  }
  return MatrixFunction::from_grid(acc, factors[0].domain());
}

LaurentFunction det(const MatrixFunction& a) {
  if (!a.square()) throw Error(ErrorKind::invalid_input, "determinant of a non-square matrix");
  auto g = a.grid();
  CVec d(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) d[k] = g[k].determinant();
  return LaurentFunction::from_samples(d);
}

double min_abs_det(const MatrixFunction& a) {
  auto g = a.grid();
  double m = std::abs(g[0].determinant());
  for (const auto& v : g) m = std::min(m, std::abs(v.determinant()));
  return m;
}

MatrixFunction inverse(const MatrixFunction& a, const Tolerances& tol) {
  if (!a.square()) throw Error(ErrorKind::invalid_input, "inverse of a non-square matrix");
  double m = min_abs_det(a);
  if (m <= tol.singularity) throw Error(ErrorKind::contour_singularity, "matrix singular on the contour", {m});
  return MatrixFunction::from_grid(grid_inverse(a.grid()), a.domain());
}

MatrixFunction plus_part(const MatrixFunction& m) {
  std::vector<LaurentFunction> e;
  for (const auto& f : m.entries()) e.push_back(plus_part(f));
  return MatrixFunction(m.rows(), m.cols(), std::move(e), m.domain());
}

MatrixFunction minus_part(const MatrixFunction& m) {
  std::vector<LaurentFunction> e;
  for (const auto& f : m.entries()) e.push_back(minus_part(f));
  return MatrixFunction(m.rows(), m.cols(), std::move(e), m.domain());
}

MatrixFunction shifted(const MatrixFunction& m, int k) {
  std::vector<LaurentFunction> e;
  for (const auto& f : m.entries()) e.push_back(f.shifted(k));
  return MatrixFunction(m.rows(), m.cols(), std::move(e), m.domain());
}

MatrixFunction lambda_matrix(const std::vector<int>& kappas, std::size_t n) {
  std::vector<LaurentFunction> d;
  for (int k : kappas) d.push_back(LaurentFunction::monomial(k, n));
  return MatrixFunction::diagonal(d);
}

double sup_distance(const MatrixFunction& a, const MatrixFunction& b, std::size_t n) {
  auto ga = a.grid(n), gb = b.grid(n);
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, (ga[k] - gb[k]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace whx
