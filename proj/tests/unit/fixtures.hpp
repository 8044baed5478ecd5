#pragma once

#include <complex>
#include <random>
#include <vector>

#include "whx/laurent.hpp"

namespace fixtures {

using whx::cplx;

// Roots placed away from the unit circle: radius in [0.3, 0.75] or [1.35, 3].
inline cplx random_root(std::mt19937& rng, bool inside) {
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> rin(0.3, 0.75), rout(1.35, 3.0);
  return std::polar(inside ? rin(rng) : rout(rng), ang(rng));
}

struct RationalScalarFixture {
  std::vector<cplx> zeros, poles;
  cplx scale = 1.0;
  cplx operator()(cplx t) const {
    cplx v = scale;
    for (auto z : zeros) v *= (t - z);
    for (auto p : poles) v /= (t - p);
    return v;
  }
  // zeros minus poles inside the unit disc
  int index() const {
    int k = 0;
    for (auto z : zeros) k += std::abs(z) < 1.0;
    for (auto p : poles) k -= std::abs(p) < 1.0;
    return k;
  }
};

inline RationalScalarFixture random_rational(std::mt19937& rng, int max_deg = 3) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::bernoulli_distribution coin(0.5);
  RationalScalarFixture f;
  int nz = deg(rng), np = deg(rng);
  for (int i = 0; i < nz; ++i) f.zeros.push_back(random_root(rng, coin(rng)));
  for (int i = 0; i < np; ++i) f.poles.push_back(random_root(rng, coin(rng)));
  std::uniform_real_distribution<double> u(0.5, 2.0);
  f.scale = std::polar(u(rng), u(rng));
  return f;
}

inline double max_abs_diff(const whx::CVec& a, const whx::CVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fixtures
