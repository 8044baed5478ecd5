#include "whx/triangular_wh.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "whx/error.hpp"
#include "whx/scalar_rh.hpp"

namespace whx {

namespace {

using Idx = Eigen::Index;
constexpr double order_threshold = 1e-9;
constexpr int max_quotients = 64;

double scale_of(const std::vector<LaurentFunction>& es) {
  double s = 0.0;
  for (const auto& e : es) s = std::max(s, e.coeff_max(e.k_min(), e.k_max()));
  return s;
}

int top_degree(const LaurentFunction& f, double thr) {
  for (int k = f.k_max(); k >= f.k_min(); --k)
    if (std::abs(f.coeff(k)) > thr) return k;
  return INT_MIN;
}

// Last row (beta, c) under a diagonal block d: the bordered ("arrow") form.
struct Arrow {
  std::vector<LaurentFunction> d, beta;
  LaurentFunction c;
  std::size_t size() const { return d.size() + 1; }
};

MatrixFunction arrow_matrix(const Arrow& a) {
  const std::size_t n = a.size();
  std::size_t N = a.c.n_samples();
  for (const auto& x : a.d) N = std::max(N, x.n_samples());
  for (const auto& x : a.beta) N = std::max(N, x.n_samples());
  std::vector<LaurentFunction> e(n * n, LaurentFunction::constant(0.0, N));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    e[i * n + i] = a.d[i];
    e[(n - 1) * n + i] = a.beta[i];
  }
  e[n * n - 1] = a.c;
  return MatrixFunction(n, n, std::move(e));
}

struct Column {
  std::vector<int> degree;
  CMat lead;
};

Column leading(const std::vector<LaurentFunction>& X, std::size_t n) {
  const double thr = order_threshold * scale_of(X);
  Column c{std::vector<int>(n, INT_MIN), CMat::Zero(static_cast<Idx>(n), static_cast<Idx>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) c.degree[j] = std::max(c.degree[j], top_degree(X[i * n + j], thr));
    if (c.degree[j] == INT_MIN) throw Error(ErrorKind::resolution, "column of the minus matrix vanished");
    for (std::size_t i = 0; i < n; ++i) {
      cplx v = X[i * n + j].coeff(c.degree[j]);
      c.lead(static_cast<Idx>(i), static_cast<Idx>(j)) = std::abs(v) > thr ? v : cplx{0.0};
    }
  }
  return c;
}

bool lead_regular(const CMat& L) {
  Eigen::JacobiSVD<CMat> svd(L);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 1e-9 * s(0);
}

void fill_orders(CanonicalMatrix& X) {
  const std::size_t n = X.X_minus.rows();
  const double thr = order_threshold * scale_of(X.X_minus.entries());
  X.orders_at_infinity.assign(n, std::vector<int>(n, order_of_zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int d = top_degree(X.X_minus(i, j), thr);
      if (d != INT_MIN) X.orders_at_infinity[i][j] = -d;
    }
}

double boundary_residual(const CanonicalMatrix& X, const MatrixFunction& G) {
  const std::size_t N = std::max({X.X_plus.n_samples(), X.X_minus.n_samples(), G.n_samples()});
  auto p = X.X_plus.grid(N), m = X.X_minus.grid(N), g = G.grid(N);
  double r = 0.0;
  for (std::size_t j = 0; j < N; ++j) r = std::max(r, (p[j] - g[j] * m[j]).cwiseAbs().maxCoeff());
  return r;
}

double det_minimum(const CanonicalMatrix& X) {
  const std::size_t N = std::max(X.X_plus.n_samples(), X.X_minus.n_samples());
  double m = INFINITY;
  auto p = X.X_plus.grid(N);
  for (const auto& v : p) m = std::min(m, std::abs(v.determinant()));
  // probes: 8 points inside for X+, 8 outside for X-, on trimmed series
  auto probe = [&](const MatrixFunction& F, double radius) {
    const double eps = 1e-13 * std::max(1.0, scale_of(F.entries()));
    const std::size_t n = F.rows();
    for (int k = 0; k < 8; ++k) {
      cplx z = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.5) / 8.0);
      CMat v(static_cast<Idx>(n), static_cast<Idx>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v(static_cast<Idx>(i), static_cast<Idx>(j)) = F(i, j).trimmed(eps)(z);
      m = std::min(m, std::abs(v.determinant()));
    }
  };
  probe(X.X_plus, 0.7);
  probe(X.X_minus, 1.4);
  return m;
}

CanonicalMatrix canonical_arrow(const Arrow& a, const Tolerances& tol) {
  const std::size_t n = a.size();
  std::vector<LaurentFunction> xp, xm;
  std::vector<int> kappa;
  auto scalar = [&](const LaurentFunction& z) {
    ScalarFactorization s = factor_scalar(z, tol);
    xp.push_back(s.X_plus);
    xm.push_back((LaurentFunction::constant(1.0, s.X_minus.n_samples()) / s.X_minus).shifted(-s.kappa));
    kappa.push_back(s.kappa);
  };
  for (const auto& d : a.d) scalar(d);
  scalar(a.c);

  CanonicalMatrix X;
  std::size_t N = 0;
  for (std::size_t i = 0; i < n; ++i) N = std::max({N, xp[i].n_samples(), xm[i].n_samples()});
  for (const auto& b : a.beta) N = std::max(N, b.n_samples());
  std::vector<LaurentFunction> P(n * n, LaurentFunction::constant(0.0, N)), M = P;
  const LaurentFunction& cp = xp[n - 1];
  const LaurentFunction& cm = xm[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    LaurentFunction f = a.beta[i].resized(N) * xm[i] / cp;
    auto [fp, fm] = cauchy_split(f);
    LaurentFunction phi_minus = -fm;
    const double thr = order_threshold * std::max(1.0, f.coeff_max(f.k_min(), f.k_max()));
    int top = top_degree(phi_minus, thr);
    if (top == INT_MIN) {
      X.mu.push_back(order_of_zero);
    } else {
      if (top < -static_cast<int>(phi_minus.n_samples()) / 4)
        throw Error(ErrorKind::resolution, "order of phi- at infinity is below grid resolution");
      X.mu.push_back(-top);
    }
    P[i * n + i] = xp[i];
    M[i * n + i] = xm[i];
    P[(n - 1) * n + i] = cp * fp;
    M[(n - 1) * n + i] = cm * phi_minus;
  }
  P[n * n - 1] = cp;
  M[n * n - 1] = cm;
  X.X_plus = MatrixFunction(n, n, std::move(P));
  X.X_minus = MatrixFunction(n, n, std::move(M));
  X.partial_indices = kappa;
  fill_orders(X);
  return X;
}

Factorization from_canonical(const CanonicalMatrix& X, const MatrixFunction& G) {
  const std::size_t N = std::max({X.X_plus.n_samples(), X.X_minus.n_samples(), G.n_samples()});
  const std::size_t n = X.X_minus.rows();
  auto inv = grid_inverse(X.X_minus.grid(N));
  std::vector<CVec> tk;
  for (int k : X.partial_indices) tk.push_back(grid_power(N, -k));
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < n; ++i) inv[j].row(static_cast<Idx>(i)) *= tk[i][j];
  Factorization f{X.X_plus.resized(N), MatrixFunction::from_grid(inv, X.X_plus.domain()), X.partial_indices};
  sort_indices(f);
  finalize(f, G);
  return f;
}

}  // namespace

MatrixFunction Triangular2x2::matrix() const { return arrow_matrix({{zeta1}, {a}, zeta2}); }

CanonicalMatrix normalize_at_infinity(const CanonicalMatrix& X0, const MatrixFunction& G, const Tolerances&) {
  CanonicalMatrix X = X0;
  const std::size_t n = X.X_minus.rows();
  std::vector<LaurentFunction> M = X.X_minus.entries(), P = X.X_plus.entries();
  std::size_t prev = n;
  int ops = 0;
  for (;;) {
    Column c = leading(M, n);
    if (lead_regular(c.lead)) {
      for (std::size_t j = 0; j < n; ++j) X.partial_indices[j] = -c.degree[j];
      break;
    }
    Eigen::JacobiSVD<CMat> svd(c.lead, Eigen::ComputeFullV);
    CVecX y = svd.matrixV().col(static_cast<Idx>(n) - 1);
    const double ymax = y.cwiseAbs().maxCoeff();
    std::size_t r = n;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(y(static_cast<Idx>(j))) > 1e-3 * ymax && (r == n || c.degree[j] > c.degree[r])) r = j;
    // column r <- sum_j (y_j / y_r) t^{d_r - d_j} column j: a polynomial, unimodular column operation
    auto apply = [&](std::vector<LaurentFunction>& E) {
      for (std::size_t i = 0; i < n; ++i) {
        LaurentFunction acc = E[i * n + r];
        for (std::size_t j = 0; j < n; ++j) {
          if (j == r || std::abs(y(static_cast<Idx>(j))) <= 1e-3 * ymax || c.degree[j] > c.degree[r]) continue;
          acc = acc + (y(static_cast<Idx>(j)) / y(static_cast<Idx>(r))) * E[i * n + j].shifted(c.degree[r] - c.degree[j]);
        }
        E[i * n + r] = acc;
      }
    };
    apply(M);
    apply(P);
    if (r != prev) ++X.steps;
    prev = r;
    if (X.steps > max_quotients || ++ops > max_quotients * 16)
      throw Error(ErrorKind::resolution, "normalization at infinity did not terminate", {static_cast<double>(X.steps)});
  }
  std::size_t N = 0;
  for (const auto& e : M) N = std::max(N, e.n_samples());
  for (const auto& e : P) N = std::max(N, e.n_samples());
  X.X_minus = MatrixFunction(n, n, std::move(M)).resized(N);
  X.X_plus = MatrixFunction(n, n, std::move(P)).resized(N);
  X.normal = true;
  fill_orders(X);
  X.boundary_residual = boundary_residual(X, G);
  X.det_min = det_minimum(X);
  if (X.det_min <= 0.0) throw Error(ErrorKind::resolution, "canonical determinant vanished during normalization");
  return X;
}

TriangularResult chebotarev_2x2(const Triangular2x2& T, const Tolerances& tol) {
  if (T.zeta1.min_abs() <= tol.singularity || T.zeta2.min_abs() <= tol.singularity)
    throw Error(ErrorKind::contour_singularity, "diagonal entry vanishes on the contour");
  MatrixFunction G = T.matrix();
  TriangularResult out;
  CanonicalMatrix X = canonical_arrow({{T.zeta1}, {T.a}, T.zeta2}, tol);
  const int k1 = X.partial_indices[0], k2 = X.partial_indices[1];
  out.normal_on_entry = X.mu[0] == order_of_zero || k1 <= k2 + X.mu[0];
  out.canonical = normalize_at_infinity(X, G, tol);
  out.factorization = from_canonical(out.canonical, G);
  return out;
}

Factorization reduce_triangular_n(const MatrixFunction& B, const Tolerances& tol) {
  const std::size_t n = B.rows();
  if (!B.square() || n == 0) throw Error(ErrorKind::invalid_input, "triangular reduction needs a square matrix");
  if (n > 8) throw Error(ErrorKind::unsupported, "triangular recursion deeper than 8");
  const double s = std::max(1.0, B.sup_norm());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (B(i, j).sup_norm() > 1e-14 * s) throw Error(ErrorKind::invalid_input, "matrix is not lower triangular");
  if (n == 1) {
    LaurentFunction g = B(0, 0);
    return to_factorization(factor_scalar(g, tol), g);
  }
  if (n == 2) return chebotarev_2x2({B(0, 0), B(1, 1), B(1, 0)}, tol).factorization;

  std::vector<LaurentFunction> ae;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) ae.push_back(B(i, j));
  Factorization fa = reduce_triangular_n(MatrixFunction(n - 1, n - 1, std::move(ae)), tol);

  // B = diag(A+, 1) [[Lambda, 0], [b (A-)^{-1}, c]] diag(A-, 1)
  const std::size_t N = std::max(B.n_samples(), fa.minus.n_samples());
  auto ainv = grid_inverse(fa.minus.grid(N));
  auto bg = B.grid(N);
  std::vector<CVec> beta(n - 1, CVec(N));
  for (std::size_t j = 0; j < N; ++j) {
    CMat row = bg[j].block(static_cast<Idx>(n) - 1, 0, 1, static_cast<Idx>(n) - 1) * ainv[j];
    for (std::size_t i = 0; i + 1 < n; ++i) beta[i][j] = row(0, static_cast<Idx>(i));
  }
  Arrow arrow;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    arrow.d.push_back(LaurentFunction::monomial(fa.partial_indices[i], N));
    arrow.beta.push_back(LaurentFunction::from_samples(beta[i]));
  }
  arrow.c = B(n - 1, n - 1).resized(N);
  MatrixFunction M = arrow_matrix(arrow);
  CanonicalMatrix X = normalize_at_infinity(canonical_arrow(arrow, tol), M, tol);
  Factorization fm = from_canonical(X, M);

  const std::size_t K = std::max({fm.plus.n_samples(), fa.plus.n_samples(), N});
  auto embed = [&](const MatrixFunction& a) {
    auto g = a.grid(K);
    for (auto& m : g) {
      CMat e = CMat::Identity(static_cast<Idx>(n), static_cast<Idx>(n));
      e.topLeftCorner(static_cast<Idx>(n) - 1, static_cast<Idx>(n) - 1) = m;
      m = e;
    }
    return MatrixFunction::from_grid(g);
  };
  Factorization f{product(embed(fa.plus), fm.plus.resized(K)), product(fm.minus.resized(K), embed(fa.minus)),
                  fm.partial_indices};
  sort_indices(f);
  finalize(f, B);
  return f;
}

}  // namespace whx
