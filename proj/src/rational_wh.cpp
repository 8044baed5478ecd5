#include "whx/rational_wh.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "whx/error.hpp"
#include "whx/mobius.hpp"

namespace whx {

namespace {

using Idx = Eigen::Index;
constexpr double merge_radius = 1e-6;  // multiple roots come out of the companion matrix split by ~sqrt(eps)

Idx ix(std::size_t i) { return static_cast<Idx>(i); }

bool upper(cplx z, Variable v) { return v == Variable::alpha ? z.imag() > 0.0 : std::abs(z) < 1.0; }

bool on_contour(cplx z, Variable v, double band) {
  return v == Variable::alpha ? std::abs(z.imag()) < band : std::abs(std::abs(z) - 1.0) < band;
}

RationalScalar normalized(const RationalScalar& e, const Tolerances& tol) {
  RationalScalar r{trim(e.num), trim(e.den)};
  if (degree(r.den) < 0) throw Error(ErrorKind::invalid_input, "zero denominator");
  if (degree(r.num) < 0) return {Poly{0.0}, Poly{1.0}};
  if (degree(r.num) >= 1 && degree(r.den) >= 1) {
    auto zn = poly_roots(r.num), zd = poly_roots(r.den);
    for (cplx a : zn)
      for (cplx b : zd)
        if (std::abs(a - b) <= tol.root_cluster * std::max(1.0, std::abs(a)))
          throw Error(ErrorKind::invalid_input, "numerator and denominator share a root");
  }
  return r;
}

PolyMatrix common_denominator(std::size_t rows, std::size_t cols, const std::vector<RationalScalar>& e,
                              Poly* q_out) {
  std::vector<std::vector<cplx>> den_roots(e.size());
  std::vector<cplx> all;
  for (std::size_t i = 0; i < e.size(); ++i) {
    den_roots[i] = poly_roots(e[i].den);
    all.insert(all.end(), den_roots[i].begin(), den_roots[i].end());
  }
  auto clusters = cluster_roots(all, merge_radius);
  auto nearest = [&](cplx r) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < clusters.size(); ++c)
      if (std::abs(clusters[c].z - r) < std::abs(clusters[best].z - r)) best = c;
    return best;
  };
  std::vector<std::vector<int>> count(e.size(), std::vector<int>(clusters.size(), 0));
  std::vector<int> mult(clusters.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (cplx r : den_roots[i]) ++count[i][nearest(r)];
    for (std::size_t c = 0; c < clusters.size(); ++c) mult[c] = std::max(mult[c], count[i][c]);
  }
  std::vector<cplx> qr;
  for (std::size_t c = 0; c < clusters.size(); ++c) qr.insert(qr.end(), static_cast<std::size_t>(mult[c]), clusters[c].z);
  if (q_out) *q_out = poly_from_roots(qr);
  PolyMatrix P(rows, cols);
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::vector<cplx> rest;
    for (std::size_t c = 0; c < clusters.size(); ++c)
      rest.insert(rest.end(), static_cast<std::size_t>(mult[c] - count[i][c]), clusters[c].z);
    const Poly& d = e[i].den;
    P(i / cols, i % cols) = poly_mul(e[i].num, poly_from_roots(rest, 1.0 / d[static_cast<std::size_t>(degree(d))]));
  }
  return P;
}

Poly trimmed_det(const PolyMatrix& P) {
  Poly d = poly_det(P);
  return trim(d, 1e-13 * std::max(poly_norm(d), 1e-300));
}

int count_inside(const PolyMatrix& P, Variable v) {
  int c = 0;
  for (cplx z : poly_roots(trimmed_det(P)))
    if (upper(z, v)) ++c;
  return c;
}

RationalScalar circle_entry(const RationalScalar& e) {
  int d = std::max(degree(e.num), degree(e.den));
  if (degree(e.num) < 0) return e;
  return {mobius_to_circle(e.num, d), mobius_to_circle(e.den, d)};
}

PolyMatrix derivative(const PolyMatrix& P) {
  PolyMatrix D(P.rows(), P.cols());
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j) D(i, j) = poly_derivative(P(i, j));
  return D;
}

// Newton on det P using d(log det) = tr(P^{-1} P'); m restores quadratic convergence at an m-fold root.
cplx polish_root(const PolyMatrix& P, cplx z, int m = 1) {
  PolyMatrix D = derivative(P);
  for (int it = 0; it < 6; ++it) {
    CMat Pz = P.eval(z);
    Eigen::PartialPivLU<CMat> lu(Pz);
    cplx tr = lu.solve(D.eval(z)).trace();
    if (!std::isfinite(std::abs(tr)) || std::abs(tr) < 1e-300) break;
    cplx step = static_cast<double>(m) / tr;
    if (!(std::abs(step) < 1e-4 * std::max(1.0, std::abs(z)))) break;
    z -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

void check_contour(const std::vector<RationalScalar>& circle_entries, std::size_t rows, std::size_t cols,
                   const Tolerances& tol) {
  Poly q;
  PolyMatrix P = common_denominator(rows, cols, circle_entries, &q);
  for (cplx r : poly_roots(q))
    if (on_contour(r, Variable::t, tol.real_axis_band))
      throw Error(ErrorKind::contour_singularity, "pole on the contour");
  if (rows != cols) return;
  Poly d = trimmed_det(P);
  if (degree(d) < 0) throw Error(ErrorKind::invalid_input, "determinant vanishes identically");
  for (cplx r : poly_roots(d))
    if (on_contour(r, Variable::t, tol.real_axis_band))
      throw Error(ErrorKind::contour_singularity, "determinant vanishes on the contour");
}

}  // namespace

RationalMatrixFunction::RationalMatrixFunction(std::size_t rows, std::size_t cols,
                                               std::vector<RationalScalar> entries, Variable var,
                                               const Tolerances& tol)
    : rows_(rows), cols_(cols), var_(var) {
  if (rows == 0 || cols == 0 || entries.size() != rows * cols)
    throw Error(ErrorKind::invalid_input, "entry count does not match shape");
  e_.reserve(entries.size());
  for (const auto& e : entries) e_.push_back(normalized(e, tol));
  std::vector<RationalScalar> ce;
  if (var == Variable::alpha)
    for (const auto& e : e_) ce.push_back(circle_entry(e));
  check_contour(var == Variable::alpha ? ce : e_, rows, cols, tol);
  if (rows != cols) return;
  PolyMatrix P = numerator_matrix(nullptr);
  for (const auto& c : cluster_roots(poly_roots(trimmed_det(P)), merge_radius)) {
    if (var == Variable::alpha && on_contour(c.z, var, tol.real_axis_band))
      throw Error(ErrorKind::contour_singularity, "determinant vanishes on the real axis");
    det_roots_.push_back({c.z, c.multiplicity, upper(c.z, var)});
  }
}

RationalMatrixFunction RationalMatrixFunction::unchecked(std::size_t rows, std::size_t cols,
                                                         std::vector<RationalScalar> entries, Variable var) {
  RationalMatrixFunction m;
  m.rows_ = rows, m.cols_ = cols, m.var_ = var;
  for (const auto& e : entries) m.e_.push_back(normalized(e, default_tolerances()));
  return m;
}

RationalMatrixFunction RationalMatrixFunction::from_polynomial(const PolyMatrix& P, Variable var) {
  std::vector<RationalScalar> e;
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j) e.push_back({P(i, j), Poly{1.0}});
  return RationalMatrixFunction(P.rows(), P.cols(), std::move(e), var);
}

CMat RationalMatrixFunction::eval(cplx z) const {
  CMat m(ix(rows_), ix(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(ix(i), ix(j)) = (*this)(i, j).eval(z);
  return m;
}

RationalMatrixFunction RationalMatrixFunction::to_circle() const {
  if (var_ == Variable::t) return *this;
  std::vector<RationalScalar> ce;
  for (const auto& e : e_) ce.push_back(circle_entry(e));
  return RationalMatrixFunction(rows_, cols_, std::move(ce), Variable::t);
}

RationalMatrixFunction RationalMatrixFunction::transpose() const {
  std::vector<RationalScalar> e;
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) e.push_back((*this)(i, j));
  return RationalMatrixFunction(cols_, rows_, std::move(e), var_);
}

MatrixFunction RationalMatrixFunction::sample(std::size_t n) const {
  RationalMatrixFunction c = to_circle();
  CVec t = grid_nodes(n);
  std::vector<CMat> v;
  v.reserve(n);
  for (cplx z : t) v.push_back(c.eval(z));
  return MatrixFunction::from_grid(v, var_ == Variable::alpha ? Domain::line : Domain::circle);
}

PolyMatrix RationalMatrixFunction::numerator_matrix(Poly* q) const {
  return common_denominator(rows_, cols_, e_, q);
}

RationalMatrixFunction EliminationStep::R(Variable var) const {
  const std::size_t n = c.size();
  std::vector<RationalScalar> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k)
        e.push_back({Poly{c[i]}, Poly{-z0, 1.0}});
      else
        e.push_back({Poly{i == j ? 1.0 : 0.0}, Poly{1.0}});
    }
  return RationalMatrixFunction::unchecked(n, n, std::move(e), var);
}

PolyMatrix EliminationStep::R_inverse() const {
  PolyMatrix r = PolyMatrix::identity(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) r(j, k) = j == k ? Poly{-z0, 1.0} : Poly{-c[j]};
  return r;
}

int count_upper_roots(const Poly& p, Variable var, double) {
  int c = 0;
  for (cplx z : poly_roots(p))
    if (upper(z, var)) ++c;
  return c;
}

std::pair<PolyMatrix, EliminationStep> eliminate_root(const PolyMatrix& P, cplx z0, const Tolerances&,
                                                      int multiplicity) {
  const std::size_t n = P.rows();
  if (n != P.cols() || n == 0) throw Error(ErrorKind::invalid_input, "elimination needs a square matrix");
  {
    auto smallest = [&](cplx z) { return Eigen::JacobiSVD<CMat>(P.eval(z)).singularValues()(ix(n - 1)); };
    cplx z1 = polish_root(P, z0);
    if (multiplicity > 1) {
      cplx zm = polish_root(P, z0, multiplicity);
      if (smallest(zm) < smallest(z1)) z1 = zm;
    }
    z0 = z1;
  }
  Eigen::JacobiSVD<CMat> svd(P.eval(z0), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double scale = std::max(s(0), P.norm() * 1e-300);
  if (n == 1) {
    // a lone singular value is its own scale; use the cancellation-free size instead
    double a = 0.0, zp = 1.0;
    for (const cplx& c : P(0, 0)) a += std::abs(c) * zp, zp *= std::abs(z0);
    scale = a;
  }
  if (s(ix(n - 1)) > 1e-6 * scale) throw Error(ErrorKind::invalid_root, "not a root of the determinant", {z0.real(), z0.imag()});
  CVecX v = svd.matrixV().col(ix(n - 1));
  Idx k = 0;
  v.cwiseAbs().maxCoeff(&k);
  EliminationStep st;
  st.z0 = z0;
  st.k = static_cast<std::size_t>(k);
  st.c.resize(n);
  for (std::size_t j = 0; j < n; ++j) st.c[j] = v(ix(j)) / v(k);
  st.c[st.k] = 1.0;

  PolyMatrix L = P;
  const double eps = 1e-14 * P.norm();
  for (std::size_t i = 0; i < n; ++i) {
    Poly col{0.0};
    for (std::size_t j = 0; j < n; ++j) col = poly_add(col, poly_scale(P(i, j), st.c[j]));
    L(i, st.k) = trim(deflate(col, z0), eps);
  }
  return {L, st};
}

RationalFactorization factor_rational(const RationalMatrixFunction& M, const Tolerances& tol) {
  if (M.rows() != M.cols()) throw Error(ErrorKind::invalid_input, "factorization needs a square matrix");
  const std::size_t n = M.rows();
  RationalMatrixFunction Mc = M.to_circle();
  Poly q;
  PolyMatrix P = Mc.numerator_matrix(&q);

  RationalFactorization out;
  PolyMatrix L = P;
  const int budget = degree(trimmed_det(P)) + 1;
  int inside = count_inside(L, Variable::t);
  while (inside > 0) {
    cplx pick = 0.0;
    double best = 2.0;
    const auto roots = poly_roots(trimmed_det(L));
    for (cplx z : roots)
      if (std::abs(z) < 1.0 && std::abs(z) < best) best = std::abs(z), pick = z;
    // companion eigenvalues split an m-fold root by roughly eps^(1/m)
    int mult = 0;
    for (cplx z : roots) mult += std::abs(z - pick) < 1e-3 * std::max(1.0, std::abs(pick));
    auto [L2, st] = eliminate_root(L, pick, tol, std::max(mult, 1));
    int after = count_inside(L2, Variable::t);
    if (after != inside - 1)
      throw Error(ErrorKind::resolution, "root count did not drop by one after elimination",
                  {static_cast<double>(inside), static_cast<double>(after)});
    L = L2;
    inside = after;
    out.steps.push_back(st);
    if (static_cast<int>(out.steps.size()) > budget) throw Error(ErrorKind::resolution, "elimination did not terminate");
  }
  const int m = static_cast<int>(out.steps.size());

  PolyMatrix Q = PolyMatrix::identity(n);
  for (auto it = out.steps.rbegin(); it != out.steps.rend(); ++it) Q = poly_mul(Q, it->R_inverse());

  // Row reduction at infinity: V Q = W with W row-reduced, V unimodular.
  PolyMatrix W = Q, V = PolyMatrix::identity(n);
  const double eps = 1e-12 * std::max(1.0, Q.norm());
  std::vector<int> d(n);
  for (int guard = 0;; ++guard) {
    if (guard > 4 * (m + 1) * static_cast<int>(n)) throw Error(ErrorKind::resolution, "row reduction did not terminate");
    W = W.trimmed(eps);
    CMat lead(ix(n), ix(n));
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = -1;
      for (std::size_t j = 0; j < n; ++j) d[i] = std::max(d[i], degree(W(i, j)));
      if (d[i] < 0) throw Error(ErrorKind::resolution, "row vanished during reduction");
      for (std::size_t j = 0; j < n; ++j) {
        const Poly& p = W(i, j);
        lead(ix(i), ix(j)) = static_cast<int>(p.size()) > d[i] ? p[static_cast<std::size_t>(d[i])] : cplx{0.0};
      }
    }
    Eigen::JacobiSVD<CMat> svd(lead, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    if (s(ix(n - 1)) > 1e-9 * s(0)) break;
    CVecX y = svd.matrixU().col(ix(n - 1)).conjugate();
    const double ymax = y.cwiseAbs().maxCoeff();
    std::size_t r = n;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(y(ix(i))) > 1e-3 * ymax && (r == n || d[i] > d[r] || (d[i] == d[r] && std::abs(y(ix(i))) > std::abs(y(ix(r))))))
        r = i;
    auto combine = [&](PolyMatrix& X) {
      std::vector<Poly> row(n, Poly{0.0});
      for (std::size_t i = 0; i < n; ++i) {
        if (d[i] > d[r]) continue;
        cplx w = y(ix(i)) / y(ix(r));
        for (std::size_t j = 0; j < n; ++j) row[j] = poly_add(row[j], poly_shift(poly_scale(X(i, j), w), d[r] - d[i]));
      }
      for (std::size_t j = 0; j < n; ++j) X(r, j) = row[j];
    };
    combine(W);
    combine(V);
    for (std::size_t j = 0; j < n; ++j)
      if (static_cast<int>(W(r, j).size()) > d[r]) W(r, j)[static_cast<std::size_t>(d[r])] = 0.0;
  }
  int dsum = 0;
  for (int x : d) dsum += x;
  if (dsum != m) throw Error(ErrorKind::resolution, "row degrees do not match the eliminated root count");

  const int qd = degree(q);
  cplx qlead = q[static_cast<std::size_t>(qd)];
  std::vector<cplx> q_in, q_out;
  for (cplx r : poly_roots(q)) (std::abs(r) < 1.0 ? q_in : q_out).push_back(r);
  const int m_in = static_cast<int>(q_in.size());

  std::vector<int> kappa(n);
  for (std::size_t i = 0; i < n; ++i) kappa[i] = d[i] - m_in;

  std::size_t N = 256;
  for (;;) {
    CVec t = grid_nodes(N);
    std::vector<CMat> pg(N), mg(N);
    for (std::size_t j = 0; j < N; ++j) {
      cplx qp = qlead, qm = 1.0;
      for (cplx r : q_out) qp *= t[j] - r;
      for (cplx r : q_in) qm *= 1.0 - r / t[j];
      pg[j] = L.eval(t[j]) * V.eval(t[j]).inverse() / qp;
      CVecX sc(ix(n));
      for (std::size_t i = 0; i < n; ++i) sc(ix(i)) = std::pow(t[j], -d[i]);
      mg[j] = sc.asDiagonal() * W.eval(t[j]) / qm;
    }
    MatrixFunction plus = MatrixFunction::from_grid(pg), minus = MatrixFunction::from_grid(mg);
    MatrixFunction iplus = MatrixFunction::from_grid(grid_inverse(pg)), iminus = MatrixFunction::from_grid(grid_inverse(mg));
    double tail = 0.0, scale = 1.0;
    for (const auto* f : {&plus, &minus, &iplus, &iminus})
      for (const auto& e : f->entries()) tail = std::max(tail, e.tail()), scale = std::max(scale, e.coeff_max(e.k_min(), e.k_max()));
    if (tail <= 1e-3 * tol.tail * scale || 2 * N > tol.grid_cap) {
      if (tail > tol.tail * scale) throw Error(ErrorKind::resolution, "factor coefficients not resolved at the grid cap");
      Domain dom = M.variable() == Variable::alpha ? Domain::line : Domain::circle;
      Factorization f{plus.with_domain(dom), minus.with_domain(dom), kappa};
      sort_indices(f);
      finalize(f, M.sample(N));
      out.factorization = f;
      out.grid = N;
      break;
    }
    N *= 2;
  }
  out.L = L;
  out.row_reduced = W;
  out.denominator_inside = m_in;
  return out;
}

namespace {

CVecX column(const MatrixFunction& f, std::size_t j, std::size_t n) {
  CVecX v(ix(f.rows()));
  for (std::size_t i = 0; i < f.rows(); ++i) v(ix(i)) = f(i, 0).samples(n)[j];
  return v;
}

void measure(const RationalMatrixFunction& Ac, const MatrixFunction& C, WHSolution& s) {
  const std::size_t N = std::max({s.phi_plus.n_samples(), s.psi_minus.n_samples(), C.n_samples()});
  CVec t = grid_nodes(N);
  auto pp = s.phi_plus.grid(N), pm = s.psi_minus.grid(N), cc = C.grid(N);
  s.residual = 0.0;
  for (std::size_t j = 0; j < N; ++j)
    s.residual = std::max(s.residual, (Ac.eval(t[j]) * pp[j] + pm[j] + cc[j]).cwiseAbs().maxCoeff());
  s.analyticity_defect = std::max(s.phi_plus.coeff_max(s.phi_plus.k_min(), -1),
                                  s.psi_minus.coeff_max(0, s.psi_minus.k_max()));
}

}  // namespace

PoleRemovalResult pole_removal_solve(const RationalMatrixFunction& A, const MatrixFunction& C,
                                     const PoleRemovalOptions& opt, const Tolerances& tol) {
  const std::size_t n = A.rows();
  if (A.cols() != n || C.rows() != n || C.cols() != 1)
    throw Error(ErrorKind::invalid_input, "pole removal needs square A and a matching column C");
  RationalMatrixFunction Ac = A.to_circle();
  Poly q;
  PolyMatrix P = Ac.numerator_matrix(&q);
  Poly dq = poly_derivative(q);

  PoleRemovalResult res;
  std::vector<cplx> poles;
  std::vector<CMat> U;
  for (const auto& c : cluster_roots(poly_roots(q), merge_radius)) {
    if (std::abs(c.z) >= 1.0) continue;
    if (c.multiplicity > 1) throw Error(ErrorKind::unsupported_multiplicity, "multiple pole inside the contour");
    CMat R = P.eval(c.z) / poly_eval(dq, c.z);
    Eigen::JacobiSVD<CMat> svd(R, Eigen::ComputeFullU);
    Idx r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > 1e-9 * svd.singularValues()(0)) ++r;
    poles.push_back(c.z);
    U.push_back(svd.matrixU().leftCols(r));
  }
  Idx unknowns = 0;
  for (const auto& u : U) unknowns += u.cols();

  std::size_t N = next_power_of_two(std::max<std::size_t>(C.n_samples(), 256));
  std::vector<CMat> Ainv;
  CVec t;
  for (;;) {
    t = grid_nodes(N);
    Ainv.assign(N, CMat());
    std::vector<CMat> ag(N);
    for (std::size_t j = 0; j < N; ++j) {
      ag[j] = Ac.eval(t[j]);
      Ainv[j] = ag[j].inverse();
    }
    MatrixFunction inv = MatrixFunction::from_grid(Ainv);
    double tail = 0.0, scale = 1.0;
    for (const auto& e : inv.entries()) tail = std::max(tail, e.tail()), scale = std::max(scale, e.sup_norm());
    if (tail <= 1e-3 * tol.tail * scale || 2 * N > tol.grid_cap) break;
    N *= 2;
  }
  MatrixFunction Cp = plus_part(C.resized(N)), Cm = minus_part(C.resized(N));

  // Negative modes of A^{-1} f, stacked componentwise.
  const std::size_t half = N / 2;
  auto negative_modes = [&](const std::vector<CVecX>& f) {
    CVecX out(ix(n * half));
    for (std::size_t i = 0; i < n; ++i) {
      CVec s(N);
      for (std::size_t j = 0; j < N; ++j) s[j] = f[j](ix(i));
      CVec c = dft_forward(s);
      for (std::size_t k = 0; k < half; ++k) out(ix(i * half + k)) = c[half + k] / static_cast<double>(N);
    }
    return out;
  };
  CMat Msys(ix(n * half), unknowns);
  std::vector<std::pair<std::size_t, Idx>> cols;
  for (std::size_t p = 0; p < poles.size(); ++p)
    for (Idx r = 0; r < U[p].cols(); ++r) cols.push_back({p, r});
  // Singular values are judged against the size of the sampled columns, so an
  // unknown that never produces negative modes counts as a null direction.
  double scale = 0.0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto [p, r] = cols[c];
    std::vector<CVecX> f(N);
    for (std::size_t j = 0; j < N; ++j) {
      f[j] = Ainv[j] * U[p].col(r) / (t[j] - poles[p]);
      scale = std::max(scale, f[j].cwiseAbs().maxCoeff());
    }
    Msys.col(ix(c)) = negative_modes(f);
  }
  std::vector<CVecX> h(N);
  for (std::size_t j = 0; j < N; ++j) h[j] = Ainv[j] * column(Cp, j, N);
  CVecX rhs = negative_modes(h);

  CVecX xi = CVecX::Zero(unknowns);
  auto solve = [&](const CMat& M, const CVecX& b) {
    if (M.cols() == 0) return;
    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cut = 1e-12 * scale;
    Idx rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    res.nullity = static_cast<int>(M.cols() - rank);
    res.condition = rank > 0 ? s(0) / s(rank - 1) : 1.0;
    if (rank == 0) return;
    svd.setThreshold(cut / s(0));
    xi = svd.solve(b);
  };
  solve(Msys, rhs);
  if (opt.decay_at_infinity && res.nullity > 0) {
    // t = 1 is grid node 0.
    CMat extra(ix(n), unknowns);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto [p, r] = cols[c];
      extra.col(ix(c)) = Ainv[0] * U[p].col(r) / (1.0 - poles[p]);
    }
    CMat M2(Msys.rows() + ix(n), unknowns);
    M2 << Msys, extra;
    CVecX b2(rhs.size() + ix(n));
    b2 << rhs, Ainv[0] * column(Cp, 0, N);
    solve(M2, b2);
  }
  res.ill_conditioned = res.condition > 1e12;

  Idx off = 0;
  for (std::size_t p = 0; p < poles.size(); ++p) {
    res.residues.push_back(U[p] * xi.segment(off, U[p].cols()));
    off += U[p].cols();
    res.poles.push_back(A.variable() == Variable::alpha ? t_to_alpha(poles[p]) : poles[p]);
  }
  std::vector<CMat> phi(N), psi(N);
  for (std::size_t j = 0; j < N; ++j) {
    CVecX pp = CVecX::Zero(ix(n));
    for (std::size_t p = 0; p < poles.size(); ++p) pp += res.residues[p] / (t[j] - poles[p]);
    phi[j] = Ainv[j] * (pp - column(Cp, j, N));
    psi[j] = -pp - column(Cm, j, N);
  }
  res.phi_plus = MatrixFunction::from_grid(phi);
  res.psi_minus = MatrixFunction::from_grid(psi);
  measure(Ac, C, res);
  return res;
}

WHSolution solve_rational_wh(const RationalMatrixFunction& A, const MatrixFunction& C, const Tolerances& tol) {
  const std::size_t n = A.rows();
  if (A.cols() != n || C.rows() != n || C.cols() != 1)
    throw Error(ErrorKind::invalid_input, "solve needs square A and a matching column C");
  // A^T = G+ G-  gives  A = (G-)^T (G+)^T.
  RationalFactorization rf = factor_rational(A.transpose(), tol);
  for (int k : rf.factorization.partial_indices)
    if (k != 0) throw Error(ErrorKind::not_canonical, "nonzero partial index");
  const std::size_t N = std::max(rf.grid, next_power_of_two(C.n_samples()));
  MatrixFunction am = rf.factorization.minus.transpose().resized(N).with_domain(Domain::circle);
  MatrixFunction ap = rf.factorization.plus.transpose().resized(N).with_domain(Domain::circle);
  MatrixFunction f = product(inverse(am, tol), C.resized(N).with_domain(Domain::circle));
  WHSolution s;
  s.phi_plus = -1.0 * product(inverse(ap, tol), plus_part(f));
  s.psi_minus = -1.0 * product(am, minus_part(f));
  measure(A.to_circle(), C, s);
  return s;
}

}  // namespace whx
