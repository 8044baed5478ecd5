#pragma once

#include <vector>

#include "whx/laurent.hpp"

namespace whx {

// Dense two-sided sequence over [offset, offset + values.size()).
struct Sequence {
  int offset = 0;
  CVec values;
  cplx at(int n) const;
  int first() const { return offset; }
  int last() const { return offset + static_cast<int>(values.size()) - 1; }
};

// |a_n| < M / |n|^{1 + lambda}; M = 0 means no certificate supplied.
struct DecayCertificate {
  double M = 0.0;
  double lambda = 0.5;
};

// sum_{k >= 0} a_{n-k} x_k = c_n for n >= 0.
struct DiscreteWHProblem {
  Sequence a;
  Sequence c;  // one-sided, offset must be >= 0
  DecayCertificate decay;
};

void validate(const DiscreteWHProblem& p, const Tolerances& tol = default_tolerances());

// A(t) = sum_k a_k t^k, on a grid of at least min_n points.
LaurentFunction z_transform(const Sequence& s, std::size_t min_n = 8);
Sequence inverse_z_transform(const LaurentFunction& f, int lo, int hi);

struct DiscreteWHSolution {
  Sequence x;                       // x_n, n = 0..count-1
  Sequence d;                       // induced d_n = sum_k a_{n-k} x_k for n < 0
  int symbol_index = 0;             // winding number of A
  std::vector<Sequence> homogeneous;  // nontrivial solutions of the homogeneous system
  std::vector<cplx> moments;
};

// count: number of x_n returned. Grid is refined until x decays below the tail tolerance.
DiscreteWHSolution solve_discrete_wh(const DiscreteWHProblem& p, int count,
                                     const Tolerances& tol = default_tolerances());

// sum_k a_{n-k} x_k = c_n (n >= 0), sum_k b_{n-k} x_k = d_n (n < 0), x two-sided.
Sequence solve_discrete_dual(const Sequence& a, const Sequence& b, const Sequence& c, const Sequence& d, int lo,
                             int hi, const Tolerances& tol = default_tolerances());

// sum_{k >= 0} a_{n-k} x_k + sum_{k < 0} b_{n-k} x_k = c_n for all n.
Sequence solve_discrete_transpose(const Sequence& a, const Sequence& b, const Sequence& c, int lo, int hi,
                                  const Tolerances& tol = default_tolerances());

struct TruncatedSolve {
  CVec x;                      // length N
  double tail_estimate = 0.0;  // max |x_N - x_{N/2}| over the first N/4 entries
  double rcond = 0.0;
};

TruncatedSolve toeplitz_truncated_solve(const DiscreteWHProblem& p, int N, bool tail_estimate = true);

}  // namespace whx
