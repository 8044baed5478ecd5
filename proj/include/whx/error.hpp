#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace whx {

enum class ErrorKind {
  invalid_input,
  contour_singularity,
  resolution,
  no_solution,
  not_canonical,
  not_in_class,
  divergence,
  ill_conditioned,
  invalid_root,
  unsupported_multiplicity,
  unsupported,
  singular_truncation,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<double> data = {})
      : std::runtime_error(what), kind_(kind), data_(std::move(data)) {}

  ErrorKind kind() const { return kind_; }
  // Numbers attached to the failure, e.g. solvability moments or a partial history.
  const std::vector<double>& data() const { return data_; }

 private:
  ErrorKind kind_;
  std::vector<double> data_;
};

}  // namespace whx
