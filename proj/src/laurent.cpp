#include "whx/laurent.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "whx/error.hpp"

namespace whx {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Buffers come from fftw_malloc so the chosen codelets (and hence the bits of
// the result) do not depend on where std::vector happened to allocate.
CVec run_dft(const CVec& x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = x[i].real();
    buf[i][1] = x[i].imag();
  }
  fftw_execute(plan);
  CVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {buf[i][0], buf[i][1]};
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

std::size_t wrap(int k, std::size_t n) {
  long m = static_cast<long>(n);
  long r = k % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

CVec grid_nodes(std::size_t n) {
  CVec t(n);
  for (std::size_t j = 0; j < n; ++j)
    t[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  return t;
}

CVec grid_power(std::size_t n, int k) {
  CVec t(n);
  for (std::size_t j = 0; j < n; ++j) {
    long m = (static_cast<long>(j) * k) % static_cast<long>(n);
    t[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  }
  return t;
}

CVec dft_forward(const CVec& x) { return run_dft(x, FFTW_FORWARD); }
CVec dft_backward(const CVec& x) { return run_dft(x, FFTW_BACKWARD); }

LaurentFunction::LaurentFunction() : k_min_(0), coeffs_{0.0}, n_(8) {}

LaurentFunction::LaurentFunction(int k_min, CVec coeffs, std::size_t n_samples)
    : k_min_(k_min), coeffs_(std::move(coeffs)), n_(n_samples) {
  if (coeffs_.empty()) coeffs_ = {0.0};
  // Keep k = 0 addressable.
  if (k_min_ > 0) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(k_min_), cplx{0.0});
    k_min_ = 0;
  }
  if (k_max() < 0) coeffs_.resize(coeffs_.size() + static_cast<std::size_t>(-k_max()), 0.0);
  if (n_ < 4 || !is_power_of_two(n_)) n_ = next_power_of_two(std::max<std::size_t>(n_, 4));
  // Grow the grid until the band fits [-n/2, n/2 - 1].
  while (k_min_ < -static_cast<int>(n_ / 2) || k_max() > static_cast<int>(n_ / 2) - 1) n_ *= 2;
}

LaurentFunction LaurentFunction::from_samples(const CVec& samples) {
  const std::size_t n = samples.size();
  if (n < 4 || !is_power_of_two(n))
    throw Error(ErrorKind::invalid_input, "sample count must be a power of two >= 4");
  CVec X = dft_forward(samples);
  const int h = static_cast<int>(n / 2);
  CVec c(n);
  for (int k = -h; k < h; ++k) c[static_cast<std::size_t>(k + h)] = X[wrap(k, n)] / static_cast<double>(n);
  return LaurentFunction(-h, std::move(c), n);
}

LaurentFunction LaurentFunction::on_grid(const std::function<cplx(cplx)>& f, std::size_t n) {
  CVec t = grid_nodes(n);
  CVec v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(t[j]);
  return from_samples(v);
}

LaurentFunction LaurentFunction::from_function(const std::function<cplx(cplx)>& f, std::size_t n0,
                                               const Tolerances& tol) {
  std::size_t n = std::max<std::size_t>(next_power_of_two(n0), 4);
  while (true) {
    LaurentFunction g = on_grid(f, n);
    double scale = std::max(1.0, g.coeff_max(g.k_min(), g.k_max()));
    if (g.tail() <= tol.tail * scale) return g;
    if (n * 2 > tol.grid_cap)
      throw Error(ErrorKind::resolution, "refinement cap reached before tail coefficients decayed",
                  {g.tail(), static_cast<double>(n)});
    n *= 2;
  }
}

LaurentFunction LaurentFunction::constant(cplx c, std::size_t n) { return LaurentFunction(0, {c}, n); }

LaurentFunction LaurentFunction::monomial(int k, std::size_t n, cplx c) {
  return LaurentFunction(k, {c}, n);
}

cplx LaurentFunction::coeff(int k) const {
  if (k < k_min_ || k > k_max()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k - k_min_)];
}

CVec LaurentFunction::samples(std::size_t n) const {
  CVec buf(n, 0.0);
  for (int k = k_min_; k <= k_max(); ++k) buf[wrap(k, n)] += coeff(k);
  return dft_backward(buf);
}

cplx LaurentFunction::operator()(cplx z) const {
  cplx acc = 0.0;
  for (int k = k_max(); k >= 0; --k) acc = acc * z + coeff(k);
  cplx neg = 0.0;
  cplx zi = 1.0 / z;
  for (int k = k_min_; k < 0; ++k) neg = neg * zi + coeff(k);
  return acc + neg * zi;
}

LaurentFunction LaurentFunction::resized(std::size_t n) const {
  if (!is_power_of_two(n) || n < 4) throw Error(ErrorKind::invalid_input, "grid size must be a power of two >= 4");
  const int h = static_cast<int>(n / 2);
  if (k_min_ >= -h && k_max() <= h - 1) {
    LaurentFunction r = *this;
    r.n_ = n;
    return r;
  }
  return from_samples(samples(n));
}

LaurentFunction LaurentFunction::shifted(int m) const { return LaurentFunction(k_min_ + m, coeffs_, n_); }

LaurentFunction LaurentFunction::trimmed(double eps) const {
  int lo = k_min_, hi = k_max();
  while (lo < 0 && std::abs(coeff(lo)) <= eps) ++lo;
  while (hi > 0 && std::abs(coeff(hi)) <= eps) --hi;
  CVec c;
  for (int k = lo; k <= hi; ++k) c.push_back(coeff(k));
  return LaurentFunction(lo, std::move(c), n_);
}

double LaurentFunction::tail() const {
  const int q = static_cast<int>(n_ / 4);
  double m = 0.0;
  for (int k = k_min_; k <= k_max(); ++k)
    if (k >= q || k < -q) m = std::max(m, std::abs(coeff(k)));
  return m;
}

double LaurentFunction::sup_norm() const {
  double m = 0.0;
  for (const cplx& v : samples()) m = std::max(m, std::abs(v));
  return m;
}

double LaurentFunction::min_abs() const {
  CVec s = samples();
  double m = std::abs(s[0]);
  for (const cplx& v : s) m = std::min(m, std::abs(v));
  return m;
}

double LaurentFunction::coeff_max(int from, int to) const {
  double m = 0.0;
  for (int k = std::max(from, k_min_); k <= std::min(to, k_max()); ++k) m = std::max(m, std::abs(coeff(k)));
  return m;
}

LaurentFunction LaurentFunction::operator-() const {
  LaurentFunction r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentFunction& LaurentFunction::operator+=(const LaurentFunction& o) {
  const int lo = std::min(k_min_, o.k_min_);
  const int hi = std::max(k_max(), o.k_max());
  CVec c(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) c[static_cast<std::size_t>(k - lo)] = coeff(k) + o.coeff(k);
  *this = LaurentFunction(lo, std::move(c), std::max(n_, o.n_));
  return *this;
}

LaurentFunction& LaurentFunction::operator-=(const LaurentFunction& o) { return *this += -o; }

LaurentFunction& LaurentFunction::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

LaurentFunction operator+(LaurentFunction a, const LaurentFunction& b) { return a += b; }
LaurentFunction operator-(LaurentFunction a, const LaurentFunction& b) { return a -= b; }
LaurentFunction operator*(cplx s, LaurentFunction a) { return a *= s; }
LaurentFunction operator*(LaurentFunction a, cplx s) { return a *= s; }

LaurentFunction pointwise(const LaurentFunction& f, const std::function<cplx(cplx)>& op) {
  CVec v = f.samples();
  for (auto& x : v) x = op(x);
  return LaurentFunction::from_samples(v);
}

LaurentFunction pointwise(const LaurentFunction& f, const LaurentFunction& g,
                          const std::function<cplx(cplx, cplx)>& op) {
  const std::size_t n = std::max(f.n_samples(), g.n_samples());
  CVec a = f.samples(n), b = g.samples(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = op(a[j], b[j]);
  return LaurentFunction::from_samples(a);
}

LaurentFunction operator*(const LaurentFunction& a, const LaurentFunction& b) {
  return pointwise(a, b, [](cplx x, cplx y) { return x * y; });
}

LaurentFunction operator/(const LaurentFunction& a, const LaurentFunction& b) {
  if (b.min_abs() <= default_tolerances().singularity)
    throw Error(ErrorKind::contour_singularity, "division by a function vanishing on the contour");
  return pointwise(a, b, [](cplx x, cplx y) { return x / y; });
}

std::pair<LaurentFunction, LaurentFunction> cauchy_split(const LaurentFunction& f) {
  return {plus_part(f), minus_part(f)};
}

LaurentFunction plus_part(const LaurentFunction& f) {
  CVec c;
  for (int k = 0; k <= f.k_max(); ++k) c.push_back(f.coeff(k));
  return LaurentFunction(0, std::move(c), f.n_samples());
}

LaurentFunction minus_part(const LaurentFunction& f) {
  CVec c;
  for (int k = f.k_min(); k <= 0; ++k) c.push_back(k < 0 ? f.coeff(k) : cplx{0.0});
  return LaurentFunction(f.k_min(), std::move(c), f.n_samples());
}

WindingInfo winding_info(const CVec& s, const Tolerances& tol) {
  WindingInfo w;
  double m = std::abs(s.at(0));
  for (const cplx& v : s) m = std::min(m, std::abs(v));
  if (m <= tol.singularity)
    throw Error(ErrorKind::contour_singularity, "function vanishes on the contour", {m});
  double total = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    double d = std::arg(s[(j + 1) % s.size()] / s[j]);
    w.max_step = std::max(w.max_step, std::abs(d));
    total += d;
  }
  w.raw = total / (2.0 * std::numbers::pi);
  w.index = static_cast<int>(std::lround(w.raw));
  w.defect = std::abs(w.raw - w.index);
  if (w.defect > tol.winding_defect || w.max_step > 0.9 * std::numbers::pi)
    throw Error(ErrorKind::resolution, "phase increments too large to unwrap; refine the grid",
                {w.raw, w.max_step});
  return w;
}

int winding_index(const LaurentFunction& f, const Tolerances& tol) {
  return winding_info(f.samples(), tol).index;
}

CVec continuous_log(const CVec& s, const Tolerances& tol) {
  winding_info(s, tol);  // singularity and resolution checks
  CVec L(s.size());
  L[0] = std::log(s[0]);
  for (std::size_t j = 1; j < s.size(); ++j) L[j] = L[j - 1] + std::log(s[j] / s[j - 1]);
  return L;
}

LaurentFunction carrier_log(const LaurentFunction& f, int kappa, const Tolerances& tol) {
  CVec s = f.samples();
  CVec t = grid_power(s.size(), -kappa);
  for (std::size_t j = 0; j < s.size(); ++j) s[j] *= t[j];
  CVec L = continuous_log(s, tol);
  cplx jump = L.back() + std::log(s[0] / s.back()) - L[0];
  if (std::abs(jump) > 1e-6)
    throw Error(ErrorKind::resolution, "logarithm not periodic after removing the index carrier",
                {std::abs(jump)});
  return LaurentFunction::from_samples(L);
}

LaurentFunction exp(const LaurentFunction& f) {
  return pointwise(f, [](cplx x) { return std::exp(x); });
}

}  // namespace whx
