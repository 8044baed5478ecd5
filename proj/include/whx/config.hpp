#pragma once

#include <cstddef>

namespace whx {

struct Tolerances {
  double singularity = 1e-10;   // min |f| on the grid before a contour is considered hit
  double residual = 1e-8;
  double rank = 1e-9;
  double tail = 1e-10;          // refinement stops once tail coefficients fall below this
  double winding_defect = 0.1;  // max distance of the raw winding number from an integer
  double root_cluster = 1e-9;
  double real_axis_band = 1e-8;
  std::size_t grid_cap = std::size_t{1} << 16;
};

// Process-wide defaults. The grid cap honours WHX_GRID_CAP when set.
const Tolerances& default_tolerances();

}  // namespace whx
