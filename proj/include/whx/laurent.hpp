#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "whx/config.hpp"

namespace whx {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

// t_j = exp(2 pi i j / n), j = 0..n-1.
CVec grid_nodes(std::size_t n);
// t_j^k, reduced mod n before taking the angle.
CVec grid_power(std::size_t n, int k);

// Unnormalized DFT pair: forward X_k = sum_j x_j e^{-2 pi i jk/n}, backward with e^{+}.
CVec dft_forward(const CVec& x);
CVec dft_backward(const CVec& x);

// Scalar function on the unit circle held by its Laurent coefficients c_k,
// k = k_min..k_max, together with the grid size used for transforms.
class LaurentFunction {
 public:
  LaurentFunction();
  LaurentFunction(int k_min, CVec coeffs, std::size_t n_samples);

  static LaurentFunction from_samples(const CVec& samples);
  // Samples f on a doubling grid until tail coefficients drop below tol.tail.
  static LaurentFunction from_function(const std::function<cplx(cplx)>& f,
                                       std::size_t n0 = 64,
                                       const Tolerances& tol = default_tolerances());
  static LaurentFunction on_grid(const std::function<cplx(cplx)>& f, std::size_t n);
  static LaurentFunction constant(cplx c, std::size_t n);
  static LaurentFunction monomial(int k, std::size_t n, cplx c = 1.0);

  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t n_samples() const { return n_; }
  const CVec& coeffs() const { return coeffs_; }
  cplx coeff(int k) const;

  CVec samples() const { return samples(n_); }
  // Values on an n-point grid; coefficients outside the n-band alias.
  CVec samples(std::size_t n) const;
  cplx operator()(cplx z) const;

  LaurentFunction resized(std::size_t n) const;
  // Exact multiplication by t^m.
  LaurentFunction shifted(int m) const;
  // Drops coefficients with |c_k| <= eps and shrinks the stored band.
  LaurentFunction trimmed(double eps = 0.0) const;

  // Largest |c_k| in the outer quarter of the band |k| >= n/4.
  double tail() const;
  double sup_norm() const;          // over own grid
  double min_abs() const;           // over own grid
  double coeff_max(int from, int to) const;  // max |c_k| for from <= k <= to

  LaurentFunction operator-() const;
  LaurentFunction& operator+=(const LaurentFunction& o);
  LaurentFunction& operator-=(const LaurentFunction& o);
  LaurentFunction& operator*=(cplx s);

 private:
  int k_min_;
  CVec coeffs_;
  std::size_t n_;
};

LaurentFunction operator+(LaurentFunction a, const LaurentFunction& b);
LaurentFunction operator-(LaurentFunction a, const LaurentFunction& b);
LaurentFunction operator*(cplx s, LaurentFunction a);
LaurentFunction operator*(LaurentFunction a, cplx s);
// Pointwise on the common (larger) grid.
LaurentFunction operator*(const LaurentFunction& a, const LaurentFunction& b);
LaurentFunction operator/(const LaurentFunction& a, const LaurentFunction& b);

LaurentFunction pointwise(const LaurentFunction& f, const std::function<cplx(cplx)>& op);
LaurentFunction pointwise(const LaurentFunction& f, const LaurentFunction& g,
                          const std::function<cplx(cplx, cplx)>& op);

// plus: k >= 0, minus: k < 0.
std::pair<LaurentFunction, LaurentFunction> cauchy_split(const LaurentFunction& f);
LaurentFunction plus_part(const LaurentFunction& f);
LaurentFunction minus_part(const LaurentFunction& f);

struct WindingInfo {
  int index = 0;
  double raw = 0.0;     // unrounded (1/2pi) * total phase increment
  double defect = 0.0;  // |raw - index|
  double max_step = 0.0;
};

WindingInfo winding_info(const CVec& samples, const Tolerances& tol = default_tolerances());
int winding_index(const LaurentFunction& f, const Tolerances& tol = default_tolerances());

// Continuous logarithm of samples (principal branch at node 0, phase unwrapped).
// Throws a resolution error if an increment is too large to unwrap safely.
CVec continuous_log(const CVec& samples, const Tolerances& tol = default_tolerances());

// log(t^{-kappa} f) on the grid of f; requires kappa = winding_index(f).
LaurentFunction carrier_log(const LaurentFunction& f, int kappa,
                            const Tolerances& tol = default_tolerances());
LaurentFunction exp(const LaurentFunction& f);

}  // namespace whx
