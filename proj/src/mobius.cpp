#include "whx/mobius.hpp"

#include <cmath>
#include <numbers>

#include "whx/error.hpp"

namespace whx {

namespace {
const cplx I{0.0, 1.0};
}

cplx alpha_to_t(cplx alpha) { return (alpha - I) / (alpha + I); }
cplx t_to_alpha(cplx t) { return I * (1.0 + t) / (1.0 - t); }

cplx MobiusMap::apply(cplx z) const {
  return direction == MobiusDirection::line_to_circle ? alpha_to_t(z) : t_to_alpha(z);
}

MobiusMap MobiusMap::inverse() const {
  return {direction == MobiusDirection::line_to_circle ? MobiusDirection::circle_to_line
                                                       : MobiusDirection::line_to_circle};
}

std::vector<double> line_preimages(std::size_t n) {
  std::vector<double> a(n);
  a[0] = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < n; ++j) {
    double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    a[j] = -1.0 / std::tan(th / 2.0);
  }
  return a;
}

LaurentFunction mobius_transport(const std::vector<double>& alphas, const CVec& values, const MobiusMap& map) {
  if (map.direction != MobiusDirection::line_to_circle)
    throw Error(ErrorKind::invalid_input, "mobius_transport expects line samples (line->circle map)");
  const std::size_t n = values.size();
  if (alphas.size() != n || n < 4 || !is_power_of_two(n))
    throw Error(ErrorKind::invalid_input, "line samples must sit on the preimages of a power-of-two grid");
  auto ref = line_preimages(n);
  for (std::size_t j = 1; j < n; ++j) {
    double scale = std::max(1.0, std::abs(ref[j]));
    if (std::abs(alphas[j] - ref[j]) > 1e-9 * scale)
      throw Error(ErrorKind::invalid_input, "sample location does not match the grid preimage",
                  {static_cast<double>(j), alphas[j], ref[j]});
  }
  if (std::isfinite(alphas[0]) && std::abs(alphas[0]) < 1e12)
    throw Error(ErrorKind::invalid_input, "first sample must be the point at infinity");
  return LaurentFunction::from_samples(values);
}

CVec mobius_transport_back(const LaurentFunction& f) { return f.samples(); }

LaurentFunction transport_function(const std::function<cplx(cplx)>& g, std::size_t n, cplx g_inf) {
  auto a = line_preimages(n);
  CVec v(n);
  v[0] = g_inf;
  for (std::size_t j = 1; j < n; ++j) v[j] = g(a[j]);
  return LaurentFunction::from_samples(v);
}

LaurentFunction transport_function(const std::function<cplx(cplx)>& g, std::size_t n) {
  return transport_function(g, n, g(1e12));
}

}  // namespace whx
