#include "classify.hpp"

#include <algorithm>
#include <cmath>

#include "whx/error.hpp"

namespace whx::cli {

namespace {

using Idx = Eigen::Index;

double off_diagonal_sup(const MatrixFunction& G, bool upper) {
  double s = 0.0;
  for (std::size_t i = 0; i < G.rows(); ++i)
    for (std::size_t j = 0; j < G.cols(); ++j)
      if (upper ? j > i : j < i) s = std::max(s, G(i, j).sup_norm());
  return s;
}

double scale(const MatrixFunction& G) { return std::max(G.sup_norm(), 1e-300); }

}  // namespace

std::optional<KhrapkovKernel> khrapkov_decomposition(const MatrixFunction& G, double tol, double* defect) {
  if (defect) *defect = INFINITY;
  if (G.rows() != 2 || G.cols() != 2) return std::nullopt;
  const std::size_t n = G.n_samples();
  const auto g = G.grid(n);
  std::vector<CMat> T(n);
  std::size_t best = 0;
  double tmax = 0.0;
  CVec k0(n);
  for (std::size_t j = 0; j < n; ++j) {
    k0[j] = 0.5 * g[j].trace();
    T[j] = g[j] - k0[j] * CMat::Identity(2, 2);
    if (T[j].norm() > tmax) tmax = T[j].norm(), best = j;
  }
  KhrapkovKernel k;
  k.k0 = LaurentFunction::from_samples(k0);
  if (tmax <= tol * scale(G)) {
    // scalar multiple of I; any traceless J with J^2 = I will do
    k.J = CMat::Zero(2, 2);
    k.J(0, 0) = 1.0, k.J(1, 1) = -1.0;
    k.k1 = LaurentFunction::constant(0.0, n);
    k.Delta2 = 1.0;
    if (defect) *defect = tmax / scale(G);
    return k;
  }
  // largest entry of the reference node set to one
  CMat J = T[best];
  Idx r = 0, c = 0;
  J.cwiseAbs().maxCoeff(&r, &c);
  J /= J(r, c);
  const cplx jj = J.squaredNorm();
  CVec k1(n);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    k1[j] = (J.adjoint() * T[j]).trace() / jj;
    worst = std::max(worst, (T[j] - k1[j] * J).norm());
  }
  const double d = worst / scale(G);
  if (defect) *defect = d;
  const cplx delta2 = -J.determinant();
  if (d > tol || std::abs(delta2) < 1e-12) return std::nullopt;
  k.J = J;
  k.Delta2 = delta2;
  k.k1 = LaurentFunction::from_samples(k1);
  return k;
}

std::optional<JonesKernel> circulant_decomposition(const MatrixFunction& G, double tol, double* defect) {
  if (defect) *defect = INFINITY;
  const std::size_t n = G.rows();
  if (n < 2 || G.cols() != n) return std::nullopt;
  // S e_j = e_{j+1}: (S^m)_{ij} = 1 when i = j + m (mod n), so a_m = G(m mod n, 0)
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, sup_distance(MatrixFunction::scalar(G(i, j)),
                                           MatrixFunction::scalar(G((i + n - j) % n, 0)), G.n_samples()));
  const double d = worst / scale(G);
  if (defect) *defect = d;
  if (d > tol) return std::nullopt;
  JonesKernel k;
  k.E = CMat::Zero(static_cast<Idx>(n), static_cast<Idx>(n));
  for (std::size_t j = 0; j < n; ++j) k.E(static_cast<Idx>((j + 1) % n), static_cast<Idx>(j)) = 1.0;
  k.q = 1.0;
  for (std::size_t m = 1; m <= n; ++m) k.a.push_back(G(m % n, 0));
  return k;
}

ClassReport classify(const MatrixFunction& G, bool rational_form, double tol) {
  if (!G.square()) throw Error(ErrorKind::invalid_input, "classification needs a square matrix");
  ClassReport rep;
  const double s = scale(G);

  rep.tests.push_back({"rational", rational_form, {{"input_form", rational_form ? "num/den entries" : "samples"}}});

  const double lo = off_diagonal_sup(G, true) / s, up = off_diagonal_sup(G, false) / s;
  rep.lower_triangular = lo < tol;
  rep.upper_triangular = !rep.lower_triangular && up < tol;
  rep.tests.push_back({"triangular",
                       rep.lower_triangular || rep.upper_triangular,
                       {{"upper_offdiag_sup", lo}, {"lower_offdiag_sup", up},
                        {"orientation", rep.lower_triangular ? "lower" : rep.upper_triangular ? "upper" : "none"}}});

  double kd = INFINITY;
  rep.khrapkov = khrapkov_decomposition(G, 1e-8, &kd);
  json ke = {{"decomposition_defect", kd}};
  if (G.rows() != 2) ke["reason"] = "only 2x2 kernels";
  if (rep.khrapkov) {
    ke["k0"] = to_json(rep.khrapkov->k0.trimmed(1e-14));
    ke["k1"] = to_json(rep.khrapkov->k1.trimmed(1e-14));
    ke["J"] = to_json(rep.khrapkov->J);
    ke["Delta2"] = to_json(rep.khrapkov->Delta2);
  }
  rep.tests.push_back({"khrapkov", rep.khrapkov.has_value(), ke});

  auto fc = is_functionally_commutative(G);
  json fe = {{"pairs_tested", fc.pairs}};
  if (fc.witness) fe["witness"] = {to_json(fc.witness->first), to_json(fc.witness->second)};
  rep.tests.push_back({"funcomm", fc.commutative, fe});

  double jd = INFINITY;
  rep.jones = circulant_decomposition(G, 1e-8, &jd);
  rep.tests.push_back({"jones", rep.jones.has_value(), {{"candidate", "cyclic shift"}, {"circulant_defect", jd}}});

  for (const auto& t : rep.tests)
    if (t.applicable) rep.ranked.push_back(t.name);
  return rep;
}

json ClassReport::to_json() const {
  json tj = json::array();
  for (const auto& t : tests) tj.push_back({{"class", t.name}, {"applicable", t.applicable}, {"evidence", t.evidence}});
  json r = {{"tests", tj}, {"ranked", ranked}};
  r["verdict"] = ranked.empty() ? "no known class" : ranked.front();
  r["complete"] = false;
  return r;
}

}  // namespace whx::cli
