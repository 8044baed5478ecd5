#include "whx/approx_wh.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "whx/error.hpp"
#include "whx/mobius.hpp"
#include "whx/scalar_rh.hpp"

namespace whx {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

double sup_entry(const MatrixFunction& m) {
  double s = 0.0;
  for (const auto& g : m.grid()) s = std::max(s, g.cwiseAbs().maxCoeff());
  return s;
}

double operator_sup(const MatrixFunction& m) {
  double s = 0.0;
  for (const auto& g : m.grid()) s = std::max(s, Eigen::JacobiSVD<CMat>(g).singularValues()(0));
  return s;
}

}  // namespace

// ---- asymptotic iteration ----

MatrixFunction asymptotic_defect(const MatrixFunction& G, double eps, const AsymptoticState& s) {
  MatrixFunction I = MatrixFunction::identity(G.rows(), G.n_samples());
  return (I + cplx(eps) * G) - product(s.S_minus, s.S_plus);
}

AsymptoticResult asymptotic_factor(const MatrixFunction& G, double eps, int j_max, double tol, bool check_size) {
  if (!G.square()) throw Error(ErrorKind::invalid_input, "asymptotic factorization needs a square matrix");
  if (eps < 0.0 || eps > 1.0) throw Error(ErrorKind::invalid_input, "eps must lie in [0, 1]");
  if (j_max < 1) throw Error(ErrorKind::invalid_input, "j_max must be positive");
  if (check_size && eps * operator_sup(G) >= 1.0)
    throw Error(ErrorKind::invalid_input, "eps G is not small compared to I", {eps * operator_sup(G)});

  const std::size_t n = G.n_samples();
  AsymptoticResult out;
  AsymptoticState& s = out.state;
  s.S_minus = s.S_plus = MatrixFunction::identity(G.rows(), n);

  if (eps == 0.0) {
    s.delta_norm_history.push_back(0.0);
  } else {
    double epow = eps;
    for (int j = 1; j <= j_max; ++j) {
      // order eps^j coefficient that still has to be cancelled
      MatrixFunction Gj = G;
      if (j > 1) {
        Gj = cplx(0.0) * G;
        for (int a = 0; a <= j - 2; ++a) Gj = Gj - product(s.G_minus[a], s.G_plus[j - 2 - a]);
      }
      s.G_minus.push_back(minus_part(Gj));
      s.G_plus.push_back(plus_part(Gj));
      s.S_minus = s.S_minus + cplx(epow) * s.G_minus.back();
      s.S_plus = s.S_plus + cplx(epow) * s.G_plus.back();
      s.j = j;
      epow *= eps;

      const double d = sup_entry(asymptotic_defect(G, eps, s));
      s.delta_norm_history.push_back(d);
      const auto& h = s.delta_norm_history;
      if (d < tol) break;
      if (h.size() >= 3 && h[h.size() - 1] > h[h.size() - 2] && h[h.size() - 2] > h[h.size() - 3])
        throw Error(ErrorKind::divergence, "asymptotic iteration diverges", h);
    }
  }

  Factorization& f = out.factorization;
  f.side = Side::right;
  f.plus = s.S_plus;
  f.minus = s.S_minus;
  f.partial_indices.assign(G.rows(), 0);
  f.residual_inf = s.delta_norm_history.back();
  f.analyticity_defect = analyticity_defect(f);
  return out;
}

// ---- rational fitting ----

namespace {

// min sum |p(t_j)/q(t_j) - k_j|^2 over p of degree P with q fixed.
Poly refit_numerator(const CVec& t, const CVec& k, const Poly& q, int P) {
  const std::size_t n = t.size();
  CMat M(ix(n), P + 1);
  CVecX b(ix(n));
  for (std::size_t j = 0; j < n; ++j) {
    cplx qj = poly_eval(q, t[j]), tp = 1.0;
    for (int i = 0; i <= P; ++i, tp *= t[j]) M(ix(j), i) = tp / qj;
    b(ix(j)) = k[j];
  }
  CVecX x = M.colPivHouseholderQr().solve(b);
  return Poly(x.data(), x.data() + x.size());
}

double sup_error(const CVec& t, const CVec& k, const RationalScalar& r) {
  double e = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) e = std::max(e, std::abs(k[j] - r.eval(t[j])));
  return e;
}

}  // namespace

RationalScalar fit_rational(const LaurentFunction& K, int num_deg, int den_deg, int* spurious_removed) {
  if (num_deg < 0 || den_deg < 0) throw Error(ErrorKind::invalid_input, "fit degrees must be nonnegative");
  const std::size_t n = K.n_samples();
  if (n < static_cast<std::size_t>(2 * (num_deg + den_deg + 2)))
    throw Error(ErrorKind::resolution, "grid too coarse for the requested fit degrees");
  const CVec t = grid_nodes(n), k = K.samples();
  double kscale = 0.0;
  for (cplx v : k) kscale = std::max(kscale, std::abs(v));
  if (kscale == 0.0) return {Poly{0.0}, Poly{1.0}};

  const int P = num_deg, Q = den_deg;
  std::vector<double> w(n, 1.0);
  Poly q(Q + 1, 0.0);
  q[0] = 1.0;
  for (int it = 0; it < 30 && Q > 0; ++it) {
    CMat M(ix(n), P + Q + 2);
    for (std::size_t j = 0; j < n; ++j) {
      cplx tp = 1.0;
      for (int i = 0; i <= std::max(P, Q); ++i, tp *= t[j]) {
        if (i <= P) M(ix(j), i) = w[j] * tp;
        if (i <= Q) M(ix(j), P + 1 + i) = -w[j] * k[j] * tp;
      }
    }
    Eigen::BDCSVD<CMat> svd(M, Eigen::ComputeThinV);
    CVecX x = svd.matrixV().col(P + Q + 1);
    Poly qn(x.data() + P + 1, x.data() + P + Q + 2);
    // fix the scale and phase so successive q can be compared
    std::size_t big = 0;
    for (std::size_t i = 1; i < qn.size(); ++i)
      if (std::abs(qn[i]) > std::abs(qn[big])) big = i;
    const cplx s = 1.0 / qn[big];
    for (auto& c : qn) c *= s;
    double dq = 0.0;
    for (std::size_t i = 0; i < qn.size(); ++i) dq = std::max(dq, std::abs(qn[i] - q[i]));
    q = qn;
    for (std::size_t j = 0; j < n; ++j) w[j] = 1.0 / std::max(std::abs(poly_eval(q, t[j])), 1e-300);
    if (dq < 1e-13) break;
  }

  // Spurious pole-zero pairs: a pole with a numerator root close by is dropped (with one
  // numerator degree) when the refit without it is no worse.
  int removed = 0, Pn = P;
  Poly p = refit_numerator(t, k, q, Pn);
  double err = sup_error(t, k, {p, q});
  for (bool again = true; again && degree(q) > 0;) {
    again = false;
    q = trim(q, 1e-14 * poly_norm(q));
    const auto zn = poly_roots(p);
    for (cplx z : poly_roots(q)) {
      double dz = INFINITY;
      for (cplx w : zn) dz = std::min(dz, std::abs(w - z));
      if (dz > 1e-2 * std::max(1.0, std::abs(z))) continue;
      Poly q2 = deflate(q, z), p2 = refit_numerator(t, k, q2, std::max(0, Pn - 1));
      const double e2 = sup_error(t, k, {p2, q2});
      if (e2 <= std::max(2.0 * err, 1e-13 * kscale)) {
        q = q2, p = p2, err = e2, Pn = std::max(0, Pn - 1);
        ++removed, again = true;
        break;
      }
    }
  }
  if (spurious_removed) *spurious_removed = removed;

  for (cplx z : poly_roots(q))
    if (std::abs(std::abs(z) - 1.0) < 1e-8)
      throw Error(ErrorKind::contour_singularity, "fitted denominator vanishes on the contour", {z.real(), z.imag()});
  // normalize so that q is monic in its largest coefficient
  std::size_t big = 0;
  for (std::size_t i = 1; i < q.size(); ++i)
    if (std::abs(q[i]) > std::abs(q[big])) big = i;
  const cplx s = 1.0 / q[big];
  return {trim(poly_scale(p, s), 1e-15 * kscale * poly_norm(poly_scale(q, s))), poly_scale(q, s)};
}

RationalFit rational_fit_factor(const MatrixFunction& K, int num_deg, int den_deg, const Tolerances& tol) {
  if (!K.square()) throw Error(ErrorKind::invalid_input, "fit factorization needs a square matrix");
  RationalFit out;
  std::vector<RationalScalar> e;
  const CVec t = grid_nodes(K.n_samples());
  for (std::size_t i = 0; i < K.rows(); ++i)
    for (std::size_t j = 0; j < K.cols(); ++j) {
      int removed = 0;
      e.push_back(fit_rational(K(i, j), num_deg, den_deg, &removed));
      out.spurious_removed += removed;
      out.fit_error = std::max(out.fit_error, sup_error(t, K(i, j).samples(), e.back()));
    }
  out.approximant = RationalMatrixFunction(K.rows(), K.cols(), e, Variable::t, tol);
  out.factors = factor_rational(out.approximant, tol);
  out.residual = factorization_residual(K, out.factors.factorization);
  if (degree(e[0].den) > 0) out.poles = poly_roots(e[0].den);
  if (degree(e[0].num) > 0) out.zeros = poly_roots(e[0].num);
  return out;
}

RationalFit rational_fit_factor(const LaurentFunction& K, int num_deg, int den_deg, const Tolerances& tol) {
  return rational_fit_factor(MatrixFunction::scalar(K), num_deg, den_deg, tol);
}

FitSweep rational_fit_sweep(const LaurentFunction& K, int max_deg) {
  FitSweep s;
  const CVec t = grid_nodes(K.n_samples()), k = K.samples();
  for (int m = 0; m <= max_deg; ++m) {
    const double e = sup_error(t, k, fit_rational(K, m, m));
    s.degrees.push_back(m);
    s.raw_errors.push_back(e);
    // type (m-1, m-1) is contained in type (m, m): keep the better approximant
    if (!s.errors.empty() && e >= s.errors.back()) {
      if (s.errors.back() > 1e-13) s.stagnated = true;
      s.errors.push_back(s.errors.back());
    } else {
      s.errors.push_back(e);
    }
  }
  return s;
}

double windowed_error(const LaurentFunction& K, const RationalScalar& r, double alpha_max, bool inside) {
  const std::size_t n = K.n_samples();
  const CVec t = grid_nodes(n), k = K.samples();
  const std::vector<double> a = line_preimages(n);
  double e = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const bool in = j != 0 && std::abs(a[j]) <= alpha_max;
    if (in == inside) e = std::max(e, std::abs(k[j] - r.eval(t[j])));
  }
  return e;
}

// ---- exponential system ----

namespace {

double change(const LaurentFunction& a, const LaurentFunction& b) {
  CVec x = a.samples(), y = b.samples(a.n_samples());
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) m = std::max(m, std::abs(x[j] - y[j]));
  return m;
}

double wrong_side(const LaurentFunction& f, bool plus) {
  return plus ? f.coeff_max(f.k_min(), -1) : f.coeff_max(0, f.k_max());
}

}  // namespace

ExponentialSolution iterative_exponential_solve(const ExponentialSystem& sys, double tol, int max_iter) {
  if (sys.L <= 0) throw Error(ErrorKind::invalid_input, "separation length must be positive");
  std::size_t n = 1024;
  for (const auto* f : {&sys.A, &sys.B, &sys.C, &sys.f1, &sys.f2}) n = std::max(n, f->n_samples());
  n = std::max(n, next_power_of_two(32 * static_cast<std::size_t>(sys.L)));
  const LaurentFunction A = sys.A.resized(n), B = sys.B.resized(n), C = sys.C.resized(n), f1 = sys.f1.resized(n),
                        f2 = sys.f2.resized(n);
  if (A.min_abs() < 1e-10 || B.min_abs() < 1e-10 || C.min_abs() < 1e-10)
    throw Error(ErrorKind::contour_singularity, "A, B and C must not vanish on the contour");

  const LaurentFunction e = LaurentFunction::monomial(sys.L, n), e_inv = LaurentFunction::monomial(-sys.L, n);
  const LaurentFunction D = A / (B * C);

  // row 1 with kernel A, and the second row of the inverted system with kernel D = A/(BC)
  ScalarFactorization X = factor_scalar(A), Y = factor_scalar(D);
  if (X.kappa != 0 || Y.kappa != 0)
    throw Error(ErrorKind::not_in_class, "scalar subproblems need index zero",
                {static_cast<double>(X.kappa), static_cast<double>(Y.kappa)});

  ExponentialSolution s;
  LaurentFunction zero = LaurentFunction::constant(0.0, n);
  s.phi0_minus = s.phiL_minus = s.psi0_plus = s.psiL_plus = zero;
  const LaurentFunction Df2 = D * f2;

  int rising = 0;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    auto [gp, gm] = cauchy_split((f1 + B * e * s.psiL_plus) / X.X_minus);
    LaurentFunction psi0 = -(gp / X.X_plus), phi0 = X.X_minus * gm;
    auto [hp, hm] = cauchy_split((Df2 + e_inv * (phi0 - f1) / B) / Y.X_plus);
    LaurentFunction psiL = Y.X_plus * hp, phiL = hm / Y.X_minus;

    const double c = std::max({change(psi0, s.psi0_plus), change(phi0, s.phi0_minus), change(psiL, s.psiL_plus),
                               change(phiL, s.phiL_minus)});
    s.psi0_plus = psi0, s.phi0_minus = phi0, s.psiL_plus = psiL, s.phiL_minus = phiL;
    s.change_history.push_back(c);
    if (c < tol) {
      converged = true;
      break;
    }
    ++s.iterations;
    const auto& h = s.change_history;
    rising = (h.size() >= 2 && h.back() >= h[h.size() - 2]) ? rising + 1 : 0;
    if (rising >= 3) throw Error(ErrorKind::divergence, "coupling too strong for the iteration", h);
  }
  if (!converged) throw Error(ErrorKind::divergence, "no convergence within max_iter", s.change_history);

  const std::size_t m = 2 * n;
  CVec a = A.samples(m), b = B.samples(m), cc = C.samples(m), g1 = f1.samples(m), g2 = f2.samples(m);
  CVec ee = e.samples(m), p0 = s.phi0_minus.samples(m), pL = s.phiL_minus.samples(m), q0 = s.psi0_plus.samples(m),
       qL = s.psiL_plus.samples(m);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double r1 = std::abs(p0[j] - a[j] * q0[j] - b[j] * ee[j] * qL[j] - g1[j]);
    const double r2 = std::abs(pL[j] - cc[j] * std::conj(ee[j]) * q0[j] - g2[j]);
    s.residual = std::max({s.residual, r1, r2});
  }
  s.analyticity_defect = std::max({wrong_side(s.psi0_plus, true), wrong_side(s.psiL_plus, true),
                                   wrong_side(s.phi0_minus, false), wrong_side(s.phiL_minus, false)});
  return s;
}

}  // namespace whx
