#include "whx/commutative_wh.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "whx/error.hpp"
#include "whx/scalar_rh.hpp"

namespace whx {

namespace {

using Idx = Eigen::Index;
constexpr double two_pi = 2.0 * std::numbers::pi;
const cplx I{0.0, 1.0};

std::size_t common_n(const std::vector<const LaurentFunction*>& fs) {
  std::size_t n = 0;
  for (auto* f : fs) n = std::max(n, f->n_samples());
  return n;
}

CMat mat_power(const CMat& m, int p) {
  CMat r = CMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) r = r * m;
  return r;
}

// Integer-valued matrix closest to D in the spectral sense: D = V diag(l) V^{-1},
// l rounded. Small D means no branch jump.
CMat round_spectral(const CMat& D) {
  const Idx n = D.rows();
  if (D.norm() < 0.3) return CMat::Zero(n, n);
  Eigen::ComplexEigenSolver<CMat> es(D);
  CVecX l = es.eigenvalues();
  for (Idx i = 0; i < n; ++i) {
    cplx r{std::round(l(i).real()), 0.0};
    if (std::abs(l(i) - r) > 0.3) throw Error(ErrorKind::resolution, "matrix logarithm jump is not a branch change");
    l(i) = r;
  }
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().inverse();
}

Factorization assemble(const std::vector<CMat>& plus, const std::vector<CMat>& minus, std::vector<int> kappa,
                       const MatrixFunction& g, Domain dom) {
  Factorization f{MatrixFunction::from_grid(plus, dom), MatrixFunction::from_grid(minus, dom), std::move(kappa)};
  sort_indices(f);
  finalize(f, g);
  return f;
}

}  // namespace

void KhrapkovKernel::validate() const {
  if (J.rows() != 2 || J.cols() != 2) throw Error(ErrorKind::invalid_input, "J must be 2x2");
  const double s = std::max(1.0, J.norm());
  if ((J * J - Delta2 * CMat::Identity(2, 2)).norm() > 1e-12 * s * s)
    throw Error(ErrorKind::not_in_class, "J^2 differs from Delta^2 I");
  if (std::abs(J.trace()) > 1e-12 * s) throw Error(ErrorKind::not_in_class, "J is not trace free");
}

MatrixFunction KhrapkovKernel::matrix() const {
  const std::size_t n = common_n({&k0, &k1});
  LaurentFunction a = k0.resized(n), b = k1.resized(n);
  std::vector<LaurentFunction> e;
  for (Idx i = 0; i < 2; ++i)
    for (Idx j = 0; j < 2; ++j) {
      LaurentFunction v = J(i, j) * b;
      if (i == j) v += a;
      e.push_back(v);
    }
  return MatrixFunction(2, 2, std::move(e));
}

void JonesKernel::validate() const {
  const Idx n = E.rows();
  if (n < 1 || E.cols() != n || static_cast<Idx>(a.size()) != n)
    throw Error(ErrorKind::invalid_input, "E must be square with one coefficient per power");
  if (std::abs(q) == 0.0) throw Error(ErrorKind::invalid_input, "q must be nonzero");
  const double s = std::max(1.0, E.norm());
  if ((mat_power(E, static_cast<int>(n)) - std::pow(q, static_cast<double>(n)) * CMat::Identity(n, n)).norm() >
      1e-12 * std::pow(s, static_cast<double>(n)))
    throw Error(ErrorKind::not_in_class, "E^n differs from q^n I");
  for (int r = 1; r < n; ++r)
    if (std::abs(mat_power(E, r).trace()) > 1e-12 * std::pow(s, r))
      throw Error(ErrorKind::not_in_class, "trace condition violated", {static_cast<double>(r)});
}

MatrixFunction JonesKernel::matrix() const {
  const Idx n = E.rows();
  std::vector<const LaurentFunction*> ptr;
  for (const auto& x : a) ptr.push_back(&x);
  const std::size_t N = common_n(ptr);
  std::vector<LaurentFunction> e(static_cast<std::size_t>(n * n), LaurentFunction::constant(0.0, N));
  CMat Em = CMat::Identity(n, n);
  for (Idx m = 1; m <= n; ++m) {
    Em = Em * E;
    LaurentFunction am = a[static_cast<std::size_t>(m - 1)].resized(N);
    for (Idx i = 0; i < n; ++i)
      for (Idx j = 0; j < n; ++j) e[static_cast<std::size_t>(i * n + j)] += Em(i, j) * am;
  }
  return MatrixFunction(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(e));
}

double commutator_norm(const Factorization& f) {
  const std::size_t n = std::max(f.plus.n_samples(), f.minus.n_samples());
  auto p = f.plus.grid(n), m = f.minus.grid(n);
  double c = 0.0;
  for (std::size_t j = 0; j < n; ++j) c = std::max(c, (p[j] * m[j] - m[j] * p[j]).cwiseAbs().maxCoeff());
  return c;
}

CommutativeFactorization factor_khrapkov(const KhrapkovKernel& k, const Tolerances& tol) {
  k.validate();
  const std::size_t N = common_n({&k.k0, &k.k1});
  CVec a = k.k0.samples(N), b = k.k1.samples(N);
  const cplx D = std::sqrt(k.Delta2);
  const bool nilpotent = std::abs(D) < 1e-14;

  CVec det(N), th(N);
  for (std::size_t j = 0; j < N; ++j) det[j] = a[j] * a[j] - k.Delta2 * b[j] * b[j];
  LaurentFunction detK = LaurentFunction::from_samples(det);
  const int wd = winding_index(detK, tol);
  if (wd % 2 != 0) throw Error(ErrorKind::not_in_class, "det K has odd winding, r is not single valued");
  CVec ld = carrier_log(detK, wd, tol).samples(N), tg = grid_power(N, wd / 2), r(N);
  for (std::size_t j = 0; j < N; ++j) r[j] = std::exp(0.5 * ld[j]) * tg[j];
  ScalarFactorization fr = factor_scalar(LaurentFunction::from_samples(r), tol);

  if (nilpotent) {
    for (std::size_t j = 0; j < N; ++j) {
      if (std::abs(a[j]) <= tol.singularity) throw Error(ErrorKind::contour_singularity, "k0 vanishes on the contour");
      th[j] = b[j] / a[j];
    }
  } else {
    CVec ratio(N);
    for (std::size_t j = 0; j < N; ++j) ratio[j] = (a[j] + D * b[j]) / (a[j] - D * b[j]);
    WindingInfo wi = winding_info(ratio, tol);
    if (wi.index != 0)
      throw Error(ErrorKind::not_in_class, "artanh branch does not close around the contour", {static_cast<double>(wi.index)});
    CVec lr = continuous_log(ratio, tol);
    for (std::size_t j = 0; j < N; ++j) th[j] = lr[j] / (2.0 * D);
  }
  auto [tp, tm] = cauchy_split(LaurentFunction::from_samples(th));

  const std::size_t M = std::max({N, fr.X_plus.n_samples(), fr.X_minus.n_samples()});
  CVec rp = fr.X_plus.samples(M), rm = fr.X_minus.samples(M), sp = tp.samples(M), sm = tm.samples(M);
  auto expJ = [&](cplx x) -> CMat {
    cplx c = nilpotent ? cplx{1.0} : std::cosh(x * D);
    cplx s = nilpotent ? x : std::sinh(x * D) / D;
    return c * CMat::Identity(2, 2) + s * k.J;
  };
  std::vector<CMat> plus(M), minus(M);
  for (std::size_t j = 0; j < M; ++j) {
    plus[j] = rp[j] * expJ(sp[j]);
    minus[j] = rm[j] * expJ(sm[j]);
  }
  CommutativeFactorization out;
  out.factorization = assemble(plus, minus, {fr.kappa, fr.kappa}, k.matrix(), Domain::circle);
  out.commutator = commutator_norm(out.factorization);
  out.theta_plus = tp;
  out.theta_minus = tm;
  return out;
}

CommutativeFactorization factor_jones(const JonesKernel& k, const Tolerances& tol) {
  k.validate();
  const Idx n = k.E.rows();
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<const LaurentFunction*> ptr;
  for (const auto& x : k.a) ptr.push_back(&x);
  const std::size_t N = common_n(ptr);
  const cplx w = std::polar(1.0, two_pi / static_cast<double>(n));
  auto wp = [&](long e) { return std::pow(w, static_cast<double>(((e % n) + n) % n)); };
  std::vector<CVec> as;
  for (const auto& x : k.a) as.push_back(x.samples(N));

  // Eigenvalues of C on the eigenvectors of E with eigenvalue q w^p.
  std::vector<CVec> L(nn);
  int wind = 0;
  for (std::size_t p = 0; p < nn; ++p) {
    CVec c(N, 0.0);
    for (std::size_t m = 1; m <= nn; ++m) {
      cplx f = std::pow(k.q, static_cast<double>(m)) * wp(static_cast<long>(m * p));
      for (std::size_t j = 0; j < N; ++j) c[j] += as[m - 1][j] * f;
    }
    LaurentFunction cf = LaurentFunction::from_samples(c);
    int wi = winding_index(cf, tol);
    if (p == 0) wind = wi;
    if (wi != wind)
      throw Error(ErrorKind::not_in_class, "eigenvalue logarithms wind differently",
                  {static_cast<double>(wind), static_cast<double>(wi)});
    L[p] = carrier_log(cf, wind, tol).samples(N);
  }
  CommutativeFactorization out;
  std::vector<CVec> dp(nn), dm(nn);
  for (std::size_t s = 0; s < nn; ++s) {
    CVec d(N, 0.0);
    const cplx scale = 1.0 / (static_cast<double>(n) * std::pow(k.q, static_cast<double>(s)));
    for (std::size_t p = 0; p < nn; ++p) {
      cplx f = wp(-static_cast<long>(s * p)) * scale;
      for (std::size_t j = 0; j < N; ++j) d[j] += f * L[p][j];
    }
    auto [a, b] = cauchy_split(LaurentFunction::from_samples(d));
    out.delta_plus.push_back(a);
    out.delta_minus.push_back(b);
    dp[s] = a.samples(N);
    dm[s] = b.samples(N);
  }
  std::vector<CMat> Ep(nn);
  Ep[0] = CMat::Identity(n, n);
  for (std::size_t p = 1; p < nn; ++p) Ep[p] = Ep[p - 1] * k.E;
  auto build = [&](const std::vector<CVec>& d, std::size_t j) {
    // (det C)^{1/n} part, then gamma_p from the eigenvalues exp(sum_s d_s q^s w^{sm}).
    cplx detpart = std::exp(d[0][j]);
    CVec e(nn);
    for (std::size_t m = 0; m < nn; ++m) {
      cplx x = 0.0;
      for (std::size_t s = 1; s < nn; ++s) x += d[s][j] * std::pow(k.q, static_cast<double>(s)) * wp(static_cast<long>(s * m));
      e[m] = std::exp(x);
    }
    CMat C = CMat::Zero(n, n);
    for (std::size_t p = 0; p < nn; ++p) {
      cplx g = 0.0;
      for (std::size_t m = 0; m < nn; ++m) g += wp(-static_cast<long>(m * p)) * e[m];
      g /= static_cast<double>(n) * std::pow(k.q, static_cast<double>(p));
      C += g * Ep[p];
    }
    return CMat(detpart * C);
  };
  std::vector<CMat> plus(N), minus(N);
  for (std::size_t j = 0; j < N; ++j) {
    plus[j] = build(dp, j);
    minus[j] = build(dm, j);
  }
  out.factorization = assemble(plus, minus, std::vector<int>(nn, wind), k.matrix(), Domain::circle);
  out.commutator = commutator_norm(out.factorization);
  return out;
}

CommutativityCheck is_functionally_commutative(const MatrixFunction& G, std::size_t nodes) {
  if (!G.square()) throw Error(ErrorKind::invalid_input, "commutativity needs a square matrix");
  const std::size_t N = G.n_samples();
  const std::size_t count = std::min(nodes, N);
  auto g = G.grid();
  CVec t = grid_nodes(N);
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < count; ++k) idx.push_back(k * N / count);
  CommutativityCheck out;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      ++out.pairs;
      const CMat& A = g[idx[a]];
      const CMat& B = g[idx[b]];
      double s = A.norm() * B.norm();
      if (out.commutative && (A * B - B * A).norm() > 1e-10 * std::max(s, 1e-300)) {
        out.commutative = false;
        out.witness = std::make_pair(t[idx[a]], t[idx[b]]);
      }
    }
  return out;
}

CommutativeFactorization factor_funcomm(const MatrixFunction& G, const Tolerances& tol) {
  auto check = is_functionally_commutative(G);
  if (!check.commutative) {
    auto [x, y] = *check.witness;
    throw Error(ErrorKind::not_in_class, "values do not commute", {x.real(), x.imag(), y.real(), y.imag()});
  }
  const std::size_t N = G.n_samples();
  const Idx n = static_cast<Idx>(G.rows());
  auto g = G.grid();
  if (min_abs_det(G) <= tol.singularity) throw Error(ErrorKind::contour_singularity, "det G vanishes on the contour");

  std::vector<CMat> L(N);
  L[0] = g[0].log();
  for (std::size_t j = 1; j < N; ++j) {
    CMat lj = g[j].log();
    L[j] = lj - two_pi * I * round_spectral((lj - L[j - 1]) / (two_pi * I));
    if ((L[j] - L[j - 1]).norm() > 0.5 * two_pi)
      throw Error(ErrorKind::resolution, "matrix logarithm is not continuous on this grid", {static_cast<double>(j)});
  }
  CMat K = -round_spectral((L[0] - L[N - 1]) / (two_pi * I));

  std::vector<int> kappa(static_cast<std::size_t>(n), 0);
  CMat W = CMat::Identity(n, n);
  if (K.norm() > 0.0) {
    Eigen::ComplexEigenSolver<CMat> es(K);
    W = es.eigenvectors();
    for (Idx i = 0; i < n; ++i) kappa[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(es.eigenvalues()(i).real()));
  }
  for (std::size_t j = 0; j < N; ++j)
    L[j] -= (two_pi * I * static_cast<double>(j) / static_cast<double>(N)) * K;
  MatrixFunction Lf = MatrixFunction::from_grid(L);
  auto lp = plus_part(Lf).grid(N), lm = minus_part(Lf).grid(N);
  CMat Wi = W.inverse();
  std::vector<CMat> plus(N), minus(N);
  CommutativeFactorization out;
  for (std::size_t j = 0; j < N; ++j) {
    plus[j] = lp[j].exp();
    minus[j] = lm[j].exp();
    // commutation is a property of exp(L+), exp(L-); W only diagonalizes t^K
    out.commutator = std::max(out.commutator, (plus[j] * minus[j] - minus[j] * plus[j]).cwiseAbs().maxCoeff());
    plus[j] = plus[j] * W;
    minus[j] = Wi * minus[j];
  }
  out.factorization = assemble(plus, minus, kappa, G, G.domain());
  return out;
}

}  // namespace whx
