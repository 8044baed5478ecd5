#pragma once

#include <json.hpp>
#include <string>

#include "whx/discrete_wh.hpp"
#include "whx/factorization.hpp"
#include "whx/polynomial.hpp"
#include "whx/rational_wh.hpp"

namespace whx::cli {

using json = nlohmann::json;

// Floats are printed with %.17g so that output is byte-stable; non-finite values become null.
std::string dump(const json& j, int indent = 2);

json load_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

json to_json(cplx z);
json to_json(const CVec& v);
json to_json(const CMat& m);
json to_json(const LaurentFunction& f);
json to_json(const MatrixFunction& m);
json to_json(const Poly& p, bool);  // tagged to keep it apart from CVec
json to_json(const Sequence& s);
json to_json(const Factorization& f);

cplx complex_from(const json& j);
CVec complex_vector(const json& j);
CMat complex_matrix(const json& j);
// n = 0 picks a power of two comfortably above the coefficient span.
LaurentFunction laurent_from(const json& j, std::size_t n = 0);
MatrixFunction matrix_from(const json& j, std::size_t n = 0);
Sequence sequence_from(const json& j);
RationalScalar rational_scalar_from(const json& j);

bool is_rational(const json& j);  // every entry is {"num", "den"}
RationalMatrixFunction rational_matrix_from(const json& j, const Tolerances& tol);

}  // namespace whx::cli
