#include "whx/stability_tools.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "whx/error.hpp"

namespace whx {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

double sup_entry(const MatrixFunction& m) {
  double s = 0.0;
  for (const auto& g : m.grid()) s = std::max(s, g.cwiseAbs().maxCoeff());
  return s;
}

std::vector<int> sorted_desc(std::vector<int> k) {
  std::sort(k.begin(), k.end(), std::greater<>());
  return k;
}

}  // namespace

IndexTuple IndexTuple::sorted(std::vector<int> k) { return {sorted_desc(std::move(k))}; }

bool is_stable(const IndexTuple& k) {
  if (k.kappas.empty()) throw Error(ErrorKind::invalid_input, "empty index tuple");
  auto [lo, hi] = std::minmax_element(k.kappas.begin(), k.kappas.end());
  return *hi - *lo <= 1;
}

IndexSumReport index_sum_check(const MatrixFunction& G, const Factorization& f, double residual_tol) {
  IndexSumReport r;
  for (int k : f.partial_indices) r.index_sum += k;
  r.det_winding = winding_index(det(G));
  r.residual = factorization_residual(G, f);
  r.pass = r.index_sum == r.det_winding && r.residual < residual_tol;
  return r;
}

Factorization transform_factorization(const Factorization& f, const PolyMatrix& H) {
  if (f.side != Side::left) throw Error(ErrorKind::unsupported, "transform of a right factorization");
  const std::size_t n = std::max(f.plus.n_samples(), f.minus.n_samples());
  const CVec t = grid_nodes(n);
  auto gp = f.plus.grid(n), gm = f.minus.grid(n);
  std::vector<CMat> p(n), m(n);
  for (std::size_t j = 0; j < n; ++j) {
    CMat h = H.eval(t[j]);
    CVecX lam(ix(f.partial_indices.size()));
    for (std::size_t i = 0; i < f.partial_indices.size(); ++i) lam(ix(i)) = std::pow(t[j], f.partial_indices[i]);
    p[j] = gp[j] * h;
    m[j] = lam.cwiseInverse().asDiagonal() * h.inverse() * lam.asDiagonal() * gm[j];
  }
  Factorization out;
  out.plus = MatrixFunction::from_grid(p);
  out.minus = MatrixFunction::from_grid(m);
  out.partial_indices = f.partial_indices;
  out.analyticity_defect = analyticity_defect(out);
  return out;
}

EquivalenceWitness equivalence_check(const Factorization& f1, const Factorization& f2, double threshold) {
  if (f1.side != Side::left || f2.side != Side::left)
    throw Error(ErrorKind::unsupported, "equivalence is checked for left factorizations");
  EquivalenceWitness w;
  if (f1.partial_indices != f2.partial_indices || f1.plus.rows() != f2.plus.rows()) {
    w.defect = 1.0;
    return w;
  }
  const std::size_t n = std::max(f1.plus.n_samples(), f2.plus.n_samples()), d = f1.plus.rows();
  const auto a = f1.plus.grid(n), b = f2.plus.grid(n);
  std::vector<CMat> hg(n);
  CMat mean = CMat::Zero(ix(d), ix(d));
  double mag = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    hg[j] = a[j].partialPivLu().solve(b[j]);
    mean += hg[j] / static_cast<double>(n);
    mag += hg[j].cwiseAbs().maxCoeff() / static_cast<double>(n);
  }
  if (mag == 0.0 || std::abs(mean.determinant()) < 1e-14 * std::pow(mag, static_cast<double>(d))) {
    w.defect = 1.0;
    return w;
  }
  const auto& k = f1.partial_indices;
  const bool equal = std::all_of(k.begin(), k.end(), [&](int v) { return v == k[0]; });

  if (equal) {
    double sd = 0.0;
    for (Eigen::Index r = 0; r < ix(d); ++r)
      for (Eigen::Index c = 0; c < ix(d); ++c) {
        double v = 0.0;
        for (const auto& h : hg) v += std::norm(h(r, c) - mean(r, c));
        sd = std::max(sd, std::sqrt(v / static_cast<double>(n)));
      }
    w.defect = sd / mag;
    w.H = mean;
    w.status = w.defect < threshold ? EquivalenceStatus::constant : EquivalenceStatus::mismatch;
    return w;
  }

  // entry (r, c) may be a polynomial of degree kappa_r - kappa_c, and must vanish when that is negative
  MatrixFunction H = MatrixFunction::from_grid(hg);
  double scale = 0.0, outside = 0.0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const LaurentFunction& e = H(r, c);
      scale = std::max(scale, e.coeff_max(e.k_min(), e.k_max()));
      const int top = k[r] - k[c];
      outside = std::max(outside, top < 0 ? e.coeff_max(e.k_min(), e.k_max())
                                          : std::max(e.coeff_max(e.k_min(), -1), e.coeff_max(top + 1, e.k_max())));
    }
  w.defect = outside / scale;
  w.H = CMat(ix(d), ix(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) w.H(ix(r), ix(c)) = H(r, c).coeff(0);
  if (w.defect >= threshold) return w;
  if (d == 2) {
    const std::size_t hi = k[0] > k[1] ? 0 : 1, lo = 1 - hi;
    w.c1 = H(hi, hi).coeff(0), w.c2 = H(lo, lo).coeff(0);
    for (int m = 0; m <= k[hi] - k[lo]; ++m) w.P.push_back(H(hi, lo).coeff(m));
    w.status = EquivalenceStatus::triangular_polynomial;
  } else {
    w.status = EquivalenceStatus::unverified_structure;
  }
  return w;
}

PerturbationReport perturbation_experiment(double eps, std::size_t n) {
  if (std::abs(eps) < 1e-12) throw Error(ErrorKind::ill_conditioned, "perturbation below the conditioning guard", {eps});
  PerturbationReport r;
  r.eps = eps;
  auto G = MatrixFunction::on_grid([&](cplx t) { CMat m(2, 2); m << t, 0.0, eps, 1.0 / t; return m; }, 2, 2, n);
  Factorization& f = r.explicit_factors;
  f.plus = MatrixFunction::on_grid([&](cplx t) { CMat m(2, 2); m << 1.0, t, 0.0, eps; return m; }, 2, 2, n);
  f.minus = MatrixFunction::on_grid(
      [&](cplx t) { CMat m(2, 2); m << 0.0, -1.0 / eps, 1.0, 1.0 / (eps * t); return m; }, 2, 2, n);
  f.partial_indices = {0, 0};
  finalize(f, G);
  r.explicit_residual = f.residual_inf;
  r.factor_sup = std::max(sup_entry(f.plus), sup_entry(f.minus));

  auto recovered = [](double e) {
    std::vector<RationalScalar> entries = {{{0.0, 1.0}, {1.0}}, {{0.0}, {1.0}}, {{e}, {1.0}}, {{1.0}, {0.0, 1.0}}};
    return sorted_desc(factor_rational(RationalMatrixFunction(2, 2, entries, Variable::t)).factorization.partial_indices);
  };
  r.unperturbed_indices = recovered(0.0);
  r.perturbed_indices = recovered(eps);
  return r;
}

namespace {

// sup over the grid of |A H - B| for the best H of the non-uniqueness form
double aligned_distance(const Factorization& f0, const Factorization& f1) {
  const std::size_t n = std::max(f0.plus.n_samples(), f1.plus.n_samples()), d = f0.plus.rows();
  const auto A = f0.plus.grid(n), B = f1.plus.grid(n);
  const CVec t = grid_nodes(n);
  const auto& k = f0.partial_indices;
  double worst = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<std::pair<std::size_t, int>> unk;  // (row of H, power of t)
    for (std::size_t r = 0; r < d; ++r)
      for (int m = 0; m <= k[r] - k[c]; ++m) unk.push_back({r, m});
    CMat M(ix(n * d), ix(unk.size()));
    CVecX rhs(ix(n * d));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        rhs(ix(j * d + i)) = B[j](ix(i), ix(c));
        for (std::size_t u = 0; u < unk.size(); ++u)
          M(ix(j * d + i), ix(u)) = A[j](ix(i), ix(unk[u].first)) * std::pow(t[j], unk[u].second);
      }
    CVecX h = M.colPivHouseholderQr().solve(rhs);
    worst = std::max(worst, (M * h - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

ShubinReport shubin_smoke(const RationalMatrixFunction& G, const CMat& E, const std::vector<double>& deltas) {
  if (ix(G.rows()) != E.rows() || ix(G.cols()) != E.cols())
    throw Error(ErrorKind::invalid_input, "perturbation shape differs from G");
  const auto f0 = factor_rational(G).factorization;
  if (!is_stable(IndexTuple::sorted(f0.partial_indices)))
    throw Error(ErrorKind::invalid_input, "Shubin check needs a stable index tuple");
  ShubinReport r;
  r.deltas = deltas;
  for (double delta : deltas) {
    std::vector<RationalScalar> e;
    for (std::size_t i = 0; i < G.rows(); ++i)
      for (std::size_t j = 0; j < G.cols(); ++j) {
        const auto& g = G(i, j);
        e.push_back({poly_add(g.num, poly_scale(g.den, delta * E(ix(i), ix(j)))), g.den});
      }
    const auto f = factor_rational(RationalMatrixFunction(G.rows(), G.cols(), e, G.variable())).factorization;
    r.factor_change.push_back(f.partial_indices == f0.partial_indices ? aligned_distance(f0, f) : INFINITY);
  }
  r.monotone = true;
  for (std::size_t i = 1; i < r.factor_change.size(); ++i)
    if ((r.deltas[i] < r.deltas[i - 1]) != (r.factor_change[i] < r.factor_change[i - 1])) r.monotone = false;
  return r;
}

}  // namespace whx
