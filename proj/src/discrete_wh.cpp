#include "whx/discrete_wh.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "whx/error.hpp"
#include "whx/scalar_rh.hpp"

namespace whx {

cplx Sequence::at(int n) const {
  if (n < first() || n > last()) return 0.0;
  return values[static_cast<std::size_t>(n - offset)];
}

void validate(const DiscreteWHProblem& p, const Tolerances& tol) {
  if (p.a.values.empty()) throw Error(ErrorKind::invalid_input, "empty kernel sequence");
  if (p.c.offset < 0) throw Error(ErrorKind::invalid_input, "right-hand side must be one-sided (n >= 0)");
  if (p.decay.M > 0.0) {
    if (!(p.decay.lambda > 0.0 && p.decay.lambda < 1.0))
      throw Error(ErrorKind::invalid_input, "decay exponent lambda must lie in (0, 1)");
    for (int n = p.a.first(); n <= p.a.last(); ++n) {
      if (n == 0) continue;
      double bound = p.decay.M / std::pow(std::abs(static_cast<double>(n)), 1.0 + p.decay.lambda);
      if (std::abs(p.a.at(n)) >= bound)
        throw Error(ErrorKind::invalid_input, "kernel violates its decay certificate", {static_cast<double>(n)});
    }
  }
  LaurentFunction A = z_transform(p.a, 1024);
  if (A.min_abs() <= tol.singularity)
    throw Error(ErrorKind::contour_singularity, "symbol vanishes on the unit circle", {A.min_abs()});
}

LaurentFunction z_transform(const Sequence& s, std::size_t min_n) {
  return LaurentFunction(s.offset, s.values, std::max<std::size_t>(min_n, 4));
}

Sequence inverse_z_transform(const LaurentFunction& f, int lo, int hi) {
  Sequence s{lo, {}};
  for (int k = lo; k <= hi; ++k) s.values.push_back(f.coeff(k));
  return s;
}

DiscreteWHSolution solve_discrete_wh(const DiscreteWHProblem& p, int count, const Tolerances& tol) {
  validate(p, tol);
  if (count < 1) throw Error(ErrorKind::invalid_input, "count must be positive");
  const int span = std::max({std::abs(p.a.first()), std::abs(p.a.last()), p.c.last() + 1, count});
  std::size_t n = std::max<std::size_t>(1024, next_power_of_two(static_cast<std::size_t>(4 * span)));

  while (true) {
    LaurentFunction A = z_transform(p.a, n), C = z_transform(p.c, n);
    // A X+ = C + D-  <=>  X+ = (1/(tA)) (t D-) + C/A
    ScalarRHProblem rh{pointwise(A, [](cplx v) { return 1.0 / v; }).shifted(-1).resized(n), C / A};
    ScalarRHSolution s = solve_scalar_rh(rh, tol);
    double scale = std::max(1.0, s.phi_plus.coeff_max(0, s.phi_plus.k_max()));
    bool resolved = s.phi_plus.tail() <= tol.tail * scale;
    if (resolved || 2 * n > tol.grid_cap) {
      if (!resolved)
        throw Error(ErrorKind::resolution, "solution does not decay within the grid cap", {s.phi_plus.tail()});
      DiscreteWHSolution out;
      out.symbol_index = -1 - s.kappa;
      out.x = inverse_z_transform(s.phi_plus, 0, count - 1);
      LaurentFunction Dm = s.phi_minus.shifted(-1);
      out.d = inverse_z_transform(Dm, -count, -1);
      for (const auto& h : s.basis_plus) out.homogeneous.push_back(inverse_z_transform(h, 0, count - 1));
      out.moments = s.moments;
      return out;
    }
    n *= 2;
  }
}

Sequence solve_discrete_dual(const Sequence& a, const Sequence& b, const Sequence& c, const Sequence& d, int lo,
                             int hi, const Tolerances& tol) {
  if (c.first() < 0 || d.last() >= 0)
    throw Error(ErrorKind::invalid_input, "c must live on n >= 0 and d on n < 0");
  const int span = std::max({std::abs(a.first()), std::abs(a.last()), std::abs(b.first()), std::abs(b.last()),
                             c.last() + 1, -d.first(), std::abs(lo), std::abs(hi)});
  const std::size_t n = std::max<std::size_t>(1024, next_power_of_two(static_cast<std::size_t>(4 * span)));
  PairedSolution s = solve_paired(z_transform(a, n), z_transform(b, n), z_transform(c, n), z_transform(d, n), tol);
  return inverse_z_transform(s.X, lo, hi);
}

Sequence solve_discrete_transpose(const Sequence& a, const Sequence& b, const Sequence& c, int lo, int hi,
                                  const Tolerances& tol) {
  const int span = std::max({std::abs(a.first()), std::abs(a.last()), std::abs(b.first()), std::abs(b.last()),
                             std::abs(c.first()), std::abs(c.last()), std::abs(lo), std::abs(hi)});
  const std::size_t n = std::max<std::size_t>(1024, next_power_of_two(static_cast<std::size_t>(4 * span)));
  LaurentFunction A = z_transform(a, n), B = z_transform(b, n), C = z_transform(c, n);
  // A X+ + B X- = C  <=>  X+ = (-B/(tA)) (t X-) + C/A
  ScalarRHProblem rh{(-(B / A)).shifted(-1).resized(n), C / A};
  ScalarRHSolution s = solve_scalar_rh(rh, tol);
  LaurentFunction X = s.phi_plus + s.phi_minus.shifted(-1).resized(n);
  return inverse_z_transform(X, lo, hi);
}

namespace {

template <typename Scalar>
TruncatedSolve dense_solve(const DiscreteWHProblem& p, int N) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  auto cast = [](cplx v) {
    if constexpr (std::is_same_v<Scalar, double>) return v.real();
    else return v;
  };
  Mat T(N, N);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) T(i, k) = cast(p.a.at(i - k));
  Vec rhs(N);
  for (int i = 0; i < N; ++i) rhs(i) = cast(p.c.at(i));
  Eigen::PartialPivLU<Mat> lu(T);
  TruncatedSolve out;
  out.rcond = lu.rcond();
  if (!(out.rcond > 1e-13))
    throw Error(ErrorKind::singular_truncation, "truncated Toeplitz matrix is numerically singular; retry larger N",
                {out.rcond});
  Vec x = lu.solve(rhs);
  out.x.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) out.x[static_cast<std::size_t>(i)] = x(i);
  return out;
}

bool is_real(const DiscreteWHProblem& p) {
  for (const auto& v : p.a.values)
    if (v.imag() != 0.0) return false;
  for (const auto& v : p.c.values)
    if (v.imag() != 0.0) return false;
  return true;
}

}  // namespace

TruncatedSolve toeplitz_truncated_solve(const DiscreteWHProblem& p, int N, bool tail_estimate) {
  if (N < 8) throw Error(ErrorKind::invalid_input, "truncation size must be >= 8");
  auto solve = [&](int m) { return is_real(p) ? dense_solve<double>(p, m) : dense_solve<cplx>(p, m); };
  TruncatedSolve out = solve(N);
  if (tail_estimate) {
    TruncatedSolve half = solve(N / 2);
    for (int i = 0; i < N / 4; ++i)
      out.tail_estimate = std::max(out.tail_estimate,
                                   std::abs(out.x[static_cast<std::size_t>(i)] - half.x[static_cast<std::size_t>(i)]));
  }
  return out;
}

}  // namespace whx
