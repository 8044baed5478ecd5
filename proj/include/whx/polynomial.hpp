#pragma once

#include <cstddef>
#include <vector>

#include "whx/laurent.hpp"
#include "whx/matrix_function.hpp"

namespace whx {

// Coefficients in ascending degree.
using Poly = CVec;

int degree(const Poly& p, double eps = 0.0);
Poly trim(const Poly& p, double eps = 0.0);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, cplx s);
Poly poly_shift(const Poly& a, int m);  // multiply by z^m, m >= 0
cplx poly_eval(const Poly& p, cplx z);
Poly poly_derivative(const Poly& p);
Poly poly_from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);
// Quotient of p by (z - z0); the remainder p(z0) is returned through rem.
Poly deflate(const Poly& p, cplx z0, cplx* rem = nullptr);
// Companion-matrix eigenvalues followed by a few Newton polishing steps.
std::vector<cplx> poly_roots(const Poly& p);
double poly_norm(const Poly& p);

// p(alpha) rewritten in t = (alpha - i)/(alpha + i) and multiplied by (1 - t)^d,
// d >= deg p.
Poly mobius_to_circle(const Poly& p, int d);

struct RootCluster {
  cplx z;
  int multiplicity = 1;
};
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double radius);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Poly{0.0}) {}
  static PolyMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  CMat eval(cplx z) const;
  int degree(double eps = 0.0) const;
  double norm() const;
  PolyMatrix trimmed(double eps) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> e_;
};

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b);
Poly poly_det(const PolyMatrix& a);
bool poly_equal(const PolyMatrix& a, const PolyMatrix& b, double tol);

}  // namespace whx
