#include "json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "whx/error.hpp"

namespace whx::cli {

namespace {

void put_string(std::string& out, const std::string& s) { out += json(s).dump(); }

void dump_rec(const json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        put_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      // arrays of scalars stay on one line
      bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",";
        if (!flat) newline(depth + 1);
        dump_rec(j[i], indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) { out += "null"; return; }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::size_t auto_grid(std::size_t span) { return next_power_of_two(std::max<std::size_t>(64, 4 * span)); }

Error bad(const std::string& what) { return Error(ErrorKind::invalid_input, what); }

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  out += '\n';
  return out;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bad("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw bad(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bad("cannot write " + path);
  out << text;
  if (!out) throw bad("write failed for " + path);
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVec& v) {
  json a = json::array();
  for (auto z : v) a.push_back(to_json(z));
  return a;
}

json to_json(const CMat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

json to_json(const LaurentFunction& f) {
  return {{"k_min", f.k_min()}, {"coeffs", to_json(f.coeffs())}, {"n_samples", f.n_samples()}};
}

json to_json(const MatrixFunction& m) {
  json e = json::array();
  for (const auto& x : m.entries()) e.push_back(to_json(x));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"domain", m.domain() == Domain::line ? "line" : "circle"},
          {"entries", e}};
}

json to_json(const Poly& p, bool) { return to_json(static_cast<const CVec&>(p)); }

json to_json(const Sequence& s) { return {{"offset", s.offset}, {"values", to_json(s.values)}}; }

json to_json(const Factorization& f) {
  return {{"side", f.side == Side::left ? "left" : "right"},
          {"partial_indices", f.partial_indices},
          {"plus", to_json(f.plus)},
          {"minus", to_json(f.minus)}};
}

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw bad("expected a complex number [re, im], got " + j.dump());
}

CVec complex_vector(const json& j) {
  if (!j.is_array()) throw bad("expected an array of complex numbers");
  CVec v;
  for (const auto& e : j) v.push_back(complex_from(e));
  return v;
}

CMat complex_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw bad("expected a matrix as an array of rows");
  const auto r = static_cast<Eigen::Index>(j.size()), c = static_cast<Eigen::Index>(j[0].size());
  CMat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    auto row = complex_vector(j[static_cast<std::size_t>(i)]);
    if (static_cast<Eigen::Index>(row.size()) != c) throw bad("ragged matrix");
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

LaurentFunction laurent_from(const json& j, std::size_t n) {
  if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) {
    return LaurentFunction::constant(complex_from(j), n ? n : 64);
  }
  if (!j.is_object() || !j.contains("coeffs")) throw bad("expected a Laurent function {k_min, coeffs}");
  CVec c = complex_vector(j.at("coeffs"));
  if (c.empty()) throw bad("empty coefficient list");
  const int k_min = j.value("k_min", 0);
  if (n == 0) n = j.contains("n_samples") ? j.at("n_samples").get<std::size_t>() : auto_grid(c.size());
  if (!is_power_of_two(n)) throw bad("grid size must be a power of two");
  if (n < c.size()) throw bad("grid too small for the coefficient span");
  return LaurentFunction(k_min, std::move(c), n);
}

MatrixFunction matrix_from(const json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("entries")) throw bad("expected a matrix {rows, cols, entries}");
  const auto r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
  const auto& e = j.at("entries");
  if (!e.is_array() || e.size() != r * c) throw bad("entry count differs from rows * cols");
  std::vector<LaurentFunction> es;
  std::size_t N = n;
  for (const auto& x : e) {
    es.push_back(laurent_from(x, n));
    N = std::max(N, es.back().n_samples());
  }
  for (auto& x : es) x = x.resized(N);
  const std::string dom = j.value("domain", "circle");
  if (dom != "circle" && dom != "line") throw bad("domain must be circle or line");
  return MatrixFunction(r, c, std::move(es), dom == "line" ? Domain::line : Domain::circle);
}

Sequence sequence_from(const json& j) {
  if (!j.is_object() || !j.contains("values")) throw bad("expected a sequence {offset, values}");
  return {j.value("offset", 0), complex_vector(j.at("values"))};
}

RationalScalar rational_scalar_from(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw bad("expected {num, den}");
  RationalScalar s{complex_vector(j.at("num")), complex_vector(j.at("den"))};
  if (s.num.empty() || s.den.empty()) throw bad("empty polynomial");
  return s;
}

bool is_rational(const json& j) {
  if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array()) return false;
  const auto& e = j.at("entries");
  return !e.empty() && std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_object() && x.contains("num"); });
}

RationalMatrixFunction rational_matrix_from(const json& j, const Tolerances& tol) {
  const auto r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
  const auto& e = j.at("entries");
  if (e.size() != r * c) throw bad("entry count differs from rows * cols");
  std::vector<RationalScalar> es;
  for (const auto& x : e) es.push_back(rational_scalar_from(x));
  const std::string var = j.value("variable", "t");
  if (var != "t" && var != "alpha") throw bad("variable must be t or alpha");
  return RationalMatrixFunction(r, c, std::move(es), var == "t" ? Variable::t : Variable::alpha, tol);
}

}  // namespace whx::cli
