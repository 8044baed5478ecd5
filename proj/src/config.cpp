#include "whx/config.hpp"

#include <cstdlib>
#include <string>

#include "whx/error.hpp"

namespace whx {

const Tolerances& default_tolerances() {
  static const Tolerances tol = [] {
    Tolerances t;
    if (const char* cap = std::getenv("WHX_GRID_CAP")) {
      try {
        unsigned long v = std::stoul(cap);
        if (v >= 4) t.grid_cap = v;
      } catch (const std::exception&) {
      }
    }
    return t;
  }();
  return tol;
}

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::contour_singularity: return "contour-singularity";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::no_solution: return "no-solution";
    case ErrorKind::not_canonical: return "not-canonical";
    case ErrorKind::not_in_class: return "not-in-class";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::ill_conditioned: return "ill-conditioned";
    case ErrorKind::invalid_root: return "invalid-root";
    case ErrorKind::unsupported_multiplicity: return "unsupported-multiplicity";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::singular_truncation: return "singular-truncation";
  }
  return "unknown";
}

}  // namespace whx
