#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "whx/factorization.hpp"

namespace whx {

// K = k0 I + k1 J with J constant, J^2 = Delta2 I and tr J = 0.
struct KhrapkovKernel {
  LaurentFunction k0, k1;
  CMat J;
  cplx Delta2 = 1.0;
  void validate() const;
  MatrixFunction matrix() const;
};

// C = sum_{m=1..n} a_m E^m with E constant, E^n = q^n I, tr E^r = 0 for r < n.
struct JonesKernel {
  std::vector<LaurentFunction> a;  // a[m-1] multiplies E^m
  CMat E;
  cplx q = 1.0;
  void validate() const;
  MatrixFunction matrix() const;
};

struct CommutativeFactorization {
  Factorization factorization;
  double commutator = 0.0;  // sup |K+ K- - K- K+| on the grid
  LaurentFunction theta_plus, theta_minus;  // Khrapkov only
  std::vector<LaurentFunction> delta_plus, delta_minus;  // Jones only, s = 0..n-1
};

CommutativeFactorization factor_khrapkov(const KhrapkovKernel& k, const Tolerances& tol = default_tolerances());
CommutativeFactorization factor_jones(const JonesKernel& k, const Tolerances& tol = default_tolerances());

struct CommutativityCheck {
  bool commutative = true;
  std::optional<std::pair<cplx, cplx>> witness;  // (t, tau) with G(t)G(tau) != G(tau)G(t)
  std::size_t pairs = 0;
};

CommutativityCheck is_functionally_commutative(const MatrixFunction& G, std::size_t nodes = 32);
CommutativeFactorization factor_funcomm(const MatrixFunction& G, const Tolerances& tol = default_tolerances());

double commutator_norm(const Factorization& f);

}  // namespace whx
