#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "whx/laurent.hpp"

namespace whx {

enum class MobiusDirection { line_to_circle, circle_to_line };

// t = (alpha - i)/(alpha + i), alpha = i (1 + t)/(1 - t). The upper half-plane
// goes to the inside of the disc and alpha = infinity to t = 1.
struct MobiusMap {
  MobiusDirection direction = MobiusDirection::line_to_circle;
  cplx apply(cplx z) const;
  MobiusMap inverse() const;
};

cplx alpha_to_t(cplx alpha);
cplx t_to_alpha(cplx t);

// Real preimages alpha_j = -cot(theta_j / 2) of the n-point grid; entry 0 is +infinity.
std::vector<double> line_preimages(std::size_t n);

// alphas must be the preimages of an n-point grid (entry 0 may be +-inf or ignored).
LaurentFunction mobius_transport(const std::vector<double>& alphas, const CVec& values,
                                 const MobiusMap& map = {});
// Samples of a circle function at the line preimages (circle -> line direction).
CVec mobius_transport_back(const LaurentFunction& f);

// Evaluates g at the preimages; the node at infinity uses g_inf.
LaurentFunction transport_function(const std::function<cplx(cplx)>& g, std::size_t n, cplx g_inf);
LaurentFunction transport_function(const std::function<cplx(cplx)>& g, std::size_t n);

}  // namespace whx
