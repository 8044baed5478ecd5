#include "whx/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "whx/error.hpp"

namespace whx {

int degree(const Poly& p, double eps) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (std::abs(p[static_cast<std::size_t>(k)]) > eps) return k;
  return -1;
}

Poly trim(const Poly& p, double eps) {
  int d = degree(p, eps);
  if (d < 0) return {0.0};
  return Poly(p.begin(), p.begin() + d + 1);
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, -1.0)); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {0.0};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_scale(const Poly& a, cplx s) {
  Poly r = a;
  for (auto& c : r) c *= s;
  return r;
}

Poly poly_shift(const Poly& a, int m) {
  if (m < 0) throw Error(ErrorKind::invalid_input, "negative polynomial shift");
  Poly r(static_cast<std::size_t>(m), 0.0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

cplx poly_eval(const Poly& p, cplx z) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly r(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) r[k - 1] = static_cast<double>(k) * p[k];
  return r;
}

Poly poly_from_roots(const std::vector<cplx>& roots, cplx lead) {
  Poly p{lead};
  for (cplx r : roots) p = poly_mul(p, Poly{-r, 1.0});
  return p;
}

Poly deflate(const Poly& p, cplx z0, cplx* rem) {
  const int n = static_cast<int>(p.size()) - 1;
  if (n <= 0) {
    if (rem) *rem = p.empty() ? cplx{0.0} : p[0];
    return {0.0};
  }
  Poly q(static_cast<std::size_t>(n));
  cplx acc = p[static_cast<std::size_t>(n)];
  for (int k = n - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = acc;
    acc = acc * z0 + p[static_cast<std::size_t>(k)];
  }
  if (rem) *rem = acc;
  return q;
}

double poly_norm(const Poly& p) {
  double m = 0.0;
  for (auto c : p) m = std::max(m, std::abs(c));
  return m;
}

std::vector<cplx> poly_roots(const Poly& p0) {
  Poly p = trim(p0, 0.0);
  const int n = degree(p);
  if (n <= 0) return {};
  // Strip exact zero roots first; the companion matrix handles the rest.
  int zeros = 0;
  while (zeros < n && p[static_cast<std::size_t>(zeros)] == cplx{0.0}) ++zeros;
  Poly q(p.begin() + zeros, p.end());
  const int m = static_cast<int>(q.size()) - 1;
  std::vector<cplx> roots(static_cast<std::size_t>(zeros), cplx{0.0});
  if (m <= 0) return roots;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) C(i, m - 1) = -q[static_cast<std::size_t>(i)] / q[static_cast<std::size_t>(m)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  Poly dq = poly_derivative(q);
  for (int i = 0; i < m; ++i) {
    cplx z = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      cplx d = poly_eval(dq, z);
      if (std::abs(d) < 1e-300) break;
      cplx step = poly_eval(q, z) / d;
      if (!(std::abs(step) < 1e-3 * std::max(1.0, std::abs(z)))) break;
      z -= step;
    }
    roots.push_back(z);
  }
  return roots;
}

Poly mobius_to_circle(const Poly& p, int d) {
  const cplx I{0.0, 1.0};
  Poly out{0.0};
  cplx ik = 1.0;
  for (int k = 0; k < static_cast<int>(p.size()); ++k) {
    if (p[static_cast<std::size_t>(k)] != cplx{0.0}) {
      Poly term{p[static_cast<std::size_t>(k)] * ik};
      for (int a = 0; a < k; ++a) term = poly_mul(term, Poly{1.0, 1.0});
      for (int b = 0; b < d - k; ++b) term = poly_mul(term, Poly{1.0, -1.0});
      out = poly_add(out, term);
    }
    ik *= I;
  }
  return out;
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double radius) {
  std::vector<RootCluster> out;
  std::vector<std::vector<cplx>> members;
  for (cplx r : roots) {
    bool placed = false;
    for (std::size_t c = 0; c < out.size(); ++c)
      if (std::abs(out[c].z - r) <= radius * std::max(1.0, std::abs(r))) {
        members[c].push_back(r);
        cplx s = 0.0;
        for (cplx v : members[c]) s += v;
        out[c].z = s / static_cast<double>(members[c].size());
        out[c].multiplicity++;
        placed = true;
        break;
      }
    if (!placed) {
      out.push_back({r, 1});
      members.push_back({r});
    }
  }
  return out;
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = {1.0};
  return m;
}

CMat PolyMatrix::eval(cplx z) const {
  CMat m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = poly_eval((*this)(i, j), z);
  return m;
}

int PolyMatrix::degree(double eps) const {
  int d = -1;
  for (const auto& p : e_) d = std::max(d, whx::degree(p, eps));
  return d;
}

double PolyMatrix::norm() const {
  double m = 0.0;
  for (const auto& p : e_) m = std::max(m, poly_norm(p));
  return m;
}

PolyMatrix PolyMatrix::trimmed(double eps) const {
  PolyMatrix r = *this;
  for (auto& p : r.e_) p = trim(p, eps);
  return r;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::invalid_input, "shape mismatch in polynomial product");
  PolyMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) r(i, j) = poly_add(r(i, j), poly_mul(a(i, k), b(k, j)));
  return r;
}

Poly poly_det(const PolyMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Error(ErrorKind::invalid_input, "determinant of a non-square polynomial matrix");
  if (n == 1) return a(0, 0);
  if (n == 2) return poly_sub(poly_mul(a(0, 0), a(1, 1)), poly_mul(a(0, 1), a(1, 0)));
  Poly d{0.0};
  for (std::size_t j = 0; j < n; ++j) {
    PolyMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    Poly term = poly_mul(a(0, j), poly_det(minor));
    d = (j % 2 == 0) ? poly_add(d, term) : poly_sub(d, term);
  }
  return d;
}

bool poly_equal(const PolyMatrix& a, const PolyMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (poly_norm(poly_sub(a(i, j), b(i, j))) > tol) return false;
  return true;
}

}  // namespace whx
