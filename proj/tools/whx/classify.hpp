#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "whx/commutative_wh.hpp"

namespace whx::cli {

// One membership test. Applicable classes come first in `ranked`, in the order
// the auto method tries them (exact classes only).
struct ClassEvidence {
  std::string name;
  bool applicable = false;
  json evidence;
};

struct ClassReport {
  std::vector<ClassEvidence> tests;
  std::vector<std::string> ranked;
  std::optional<KhrapkovKernel> khrapkov;
  std::optional<JonesKernel> jones;
  bool lower_triangular = false, upper_triangular = false;
  json to_json() const;
};

// G must be square. rational_form says the input arrived as {num, den} entries.
ClassReport classify(const MatrixFunction& G, bool rational_form, double tol = 1e-10);

// K = k0 I + k1 J with a constant traceless J, read off the values of a 2x2 G.
std::optional<KhrapkovKernel> khrapkov_decomposition(const MatrixFunction& G, double tol, double* defect = nullptr);
// Circulant G = sum a_m S^m, S the cyclic shift (S^n = I, tr S^r = 0 for r < n).
std::optional<JonesKernel> circulant_decomposition(const MatrixFunction& G, double tol, double* defect = nullptr);

}  // namespace whx::cli
