#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "classify.hpp"
#include "json_io.hpp"
#include "whx/approx_wh.hpp"
#include "whx/commutative_wh.hpp"
#include "whx/error.hpp"
#include "whx/scalar_rh.hpp"
#include "whx/stability_tools.hpp"
#include "whx/triangular_wh.hpp"

using namespace whx;
using namespace whx::cli;

namespace {

using Idx = Eigen::Index;

enum Exit { ok = 0, invalid = 2, numerical = 3, not_in_class = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input:
    case ErrorKind::invalid_root:
      return invalid;
    case ErrorKind::not_in_class:
    case ErrorKind::unsupported:
    case ErrorKind::unsupported_multiplicity:
      return not_in_class;
    default:
      return numerical;
  }
}

int report_error(const std::string& kind, const std::string& msg, const std::vector<double>& data, int code) {
  json e = {{"error", kind}, {"message", msg}, {"data", data}, {"exit_code", code}};
  std::cerr << dump(e, -1);
  return code;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Error bad(const std::string& what) { return Error(ErrorKind::invalid_input, what); }

struct Options {
  std::string input, output, method = "auto", deg, system, kernel, rhs, matrix, factorization, indices;
  double eps = NAN, tol = NAN;
  std::size_t grid = 0;
  int oracle = 0, count = 64, max_iter = 200, j_max = 40;
};

Tolerances tolerances(const Options& o) {
  Tolerances t = default_tolerances();
  if (const char* cap = std::getenv("WHX_GRID_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(cap, &end, 10);
    if (end == cap || *end != '\0' || v < 8) throw bad("WHX_GRID_CAP must be an integer >= 8");
    t.grid_cap = static_cast<std::size_t>(v);
  }
  if (o.grid && !is_power_of_two(o.grid)) throw bad("--grid must be a power of two");
  if (o.grid > t.grid_cap) throw bad("--grid exceeds the grid cap");
  if (!std::isnan(o.tol)) {
    if (!(o.tol > 0.0)) throw bad("--tol must be positive");
    t.residual = o.tol;
  }
  return t;
}

// ---- kernel ingestion ----

struct Kernel {
  MatrixFunction G;
  std::optional<RationalMatrixFunction> rational;
  std::optional<KhrapkovKernel> khrapkov;
  std::optional<JonesKernel> jones;
  std::optional<Triangular2x2> triangular;
};

Kernel load_kernel(const json& j, std::size_t grid, const Tolerances& tol) {
  Kernel k;
  const std::size_t n = grid ? grid : 256;
  if (j.is_object() && j.contains("class")) {
    const std::string c = j.at("class").get<std::string>();
    if (c == "khrapkov") {
      KhrapkovKernel kh{laurent_from(j.at("k0"), grid), laurent_from(j.at("k1"), grid), complex_matrix(j.at("J")),
                        j.contains("Delta2") ? complex_from(j.at("Delta2")) : cplx{1.0}};
      const std::size_t m = std::max(kh.k0.n_samples(), kh.k1.n_samples());
      kh.k0 = kh.k0.resized(m), kh.k1 = kh.k1.resized(m);
      if (!j.contains("Delta2")) kh.Delta2 = -kh.J.determinant();
      k.khrapkov = kh;
      k.G = kh.matrix();
    } else if (c == "jones") {
      JonesKernel jo;
      for (const auto& a : j.at("a")) jo.a.push_back(laurent_from(a, grid));
      std::size_t m = 0;
      for (const auto& a : jo.a) m = std::max(m, a.n_samples());
      for (auto& a : jo.a) a = a.resized(m);
      jo.E = complex_matrix(j.at("E"));
      jo.q = j.contains("q") ? complex_from(j.at("q")) : cplx{1.0};
      k.jones = jo;
      k.G = jo.matrix();
    } else {
      throw bad("unknown kernel class " + c);
    }
  } else if (j.is_object() && j.contains("zeta")) {
    // lower triangular: zeta is the diagonal, a[i-1] holds the i entries left of the diagonal in row i
    const auto& z = j.at("zeta");
    const std::size_t d = z.size();
    const json a = j.value("a", json::array());
    if (d < 2 || a.size() != d - 1) throw bad("triangular descriptor needs n diagonal entries and n - 1 rows of a");
    std::vector<LaurentFunction> e;
    std::size_t m = 0;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        if (c == r) e.push_back(laurent_from(z[r], grid));
        else if (c < r) {
          if (a[r - 1].size() != r) throw bad("row " + std::to_string(r) + " of a needs " + std::to_string(r) + " entries");
          e.push_back(laurent_from(a[r - 1][c], grid));
        } else {
          e.push_back(LaurentFunction::constant(0.0, 8));
        }
        m = std::max(m, e.back().n_samples());
      }
    for (auto& x : e) x = x.resized(m);
    k.G = MatrixFunction(d, d, std::move(e));
    if (d == 2) k.triangular = Triangular2x2{k.G(0, 0), k.G(1, 1), k.G(1, 0)};
  } else if (is_rational(j)) {
    k.rational = rational_matrix_from(j, tol);
    k.G = k.rational->sample(n);
  } else if (j.is_object() && j.contains("entries")) {
    k.G = matrix_from(j, grid);
  } else if (j.is_object() && j.contains("num")) {
    k.rational = RationalMatrixFunction(1, 1, {rational_scalar_from(j)},
                                        j.value("variable", "t") == "alpha" ? Variable::alpha : Variable::t, tol);
    k.G = k.rational->sample(n);
  } else {
    k.G = MatrixFunction::scalar(laurent_from(j, grid));
  }
  if (!k.G.square()) throw bad("kernel must be square");
  return k;
}

// ---- artifacts ----

// |F restricted to k in [from, to]| at each node
std::vector<double> part_at_nodes(const MatrixFunction& F, int from, int to, std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (const auto& e : F.entries()) {
    const int a = std::max(from, e.k_min()), b = std::min(to, e.k_max());
    if (a > b) continue;
    CVec c(e.coeffs().begin() + (a - e.k_min()), e.coeffs().begin() + (b - e.k_min() + 1));
    CVec s = LaurentFunction(a, std::move(c), std::max(n, e.n_samples())).samples(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = std::max(out[j], std::abs(s[j]));
  }
  return out;
}

struct Diagnostics {
  std::string csv, coeff_csv;
  double residual = 0.0;
};

Diagnostics diagnostics(const MatrixFunction& G, const Factorization& f) {
  const std::size_t n = std::max({G.n_samples(), f.plus.n_samples(), f.minus.n_samples()});
  const auto g = G.grid(n), r = reconstruct(f).grid(n);
  const auto dp = part_at_nodes(f.plus, INT_MIN / 2, -1, n), dm = part_at_nodes(f.minus, 1, INT_MAX / 2, n);
  Diagnostics d;
  std::ostringstream os;
  os << "angle,residual,plus_defect,minus_defect\n";
  for (std::size_t j = 0; j < n; ++j) {
    const double res = (g[j] - r[j]).cwiseAbs().maxCoeff();
    d.residual = std::max(d.residual, res);
    os << fmt(2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n)) << ',' << fmt(res) << ',' << fmt(dp[j])
       << ',' << fmt(dm[j]) << '\n';
  }
  d.csv = os.str();
  std::ostringstream cs;
  cs << "factor,row,col,k,abs_coeff\n";
  for (const auto& [name, F] : {std::pair<const char*, const MatrixFunction*>{"plus", &f.plus}, {"minus", &f.minus}})
    for (std::size_t i = 0; i < F->rows(); ++i)
      for (std::size_t c = 0; c < F->cols(); ++c) {
        const auto& e = (*F)(i, c);
        for (int k = e.k_min(); k <= e.k_max(); ++k)
          cs << name << ',' << i << ',' << c << ',' << k << ',' << fmt(std::abs(e.coeff(k))) << '\n';
      }
  d.coeff_csv = cs.str();
  return d;
}

struct FactorOutcome {
  Factorization f;
  MatrixFunction G;  // what the factors are measured against
  std::string method;
  bool approximate = false;
  json extra = json::object();
};

int emit_factorization(const std::string& command, const FactorOutcome& o, const Options& opt, const Tolerances& tol) {
  const Diagnostics d = diagnostics(o.G, o.f);
  const double defect = analyticity_defect(o.f);
  const bool stable = is_stable(IndexTuple::sorted(o.f.partial_indices));
  json j = to_json(o.f);
  j["command"] = command;
  j["method"] = o.method;
  j["approximate"] = o.approximate;
  j["residual"] = d.residual;
  j["analyticity_defect"] = defect;
  j["stability"] = stable ? "stable" : "unstable";
  if (!o.extra.empty()) j["details"] = o.extra;

  std::ostringstream s;
  s << "command: " << command << "\nmethod: " << o.method << (o.approximate ? " (approximate)" : "")
    << "\nside: " << (o.f.side == Side::left ? "left" : "right") << "\npartial_indices:";
  for (int k : o.f.partial_indices) s << ' ' << k;
  s << "\nstability: " << (stable ? "stable" : "unstable") << "\nresidual: " << fmt(d.residual)
    << "\nanalyticity_defect: " << fmt(defect) << '\n';
  if (o.f.partial_indices.size() == 1) s << "kappa: " << o.f.partial_indices[0] << '\n';

  const std::string text = dump(j);
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    write_file(opt.output, text);
    write_file(opt.output + ".summary.txt", s.str());
    write_file(opt.output + ".diag.csv", d.csv);
    write_file(opt.output + ".coeffs.csv", d.coeff_csv);
    std::cout << s.str();
  }
  if (!o.approximate && d.residual > tol.residual)
    return report_error("residual", "factor residual above tolerance", {d.residual, tol.residual}, numerical);
  return ok;
}

// ---- commands ----

int cmd_factor_scalar(const Options& o, const Tolerances& tol) {
  Kernel k = load_kernel(load_file(o.input), o.grid, tol);
  if (k.G.rows() != 1) throw bad("factor-scalar needs a scalar kernel");
  const LaurentFunction& G = k.G(0, 0);
  auto s = factor_scalar(G, tol);
  FactorOutcome out{to_factorization(s, G), k.G, "scalar"};
  return emit_factorization("factor-scalar", out, o, tol);
}

FactorOutcome factor_exact(const Kernel& k, const std::string& m, const ClassReport* rep, const Tolerances& tol) {
  FactorOutcome out{{}, k.G, m};
  auto not_in = [&](const std::string& why) { return Error(ErrorKind::not_in_class, why); };
  if (m == "rational") {
    if (!k.rational) throw not_in("the rational method needs {num, den} entries");
    out.f = factor_rational(*k.rational, tol).factorization;
    out.G = k.rational->sample(std::max(out.f.plus.n_samples(), out.f.minus.n_samples()));
  } else if (m == "khrapkov") {
    auto kh = k.khrapkov;
    if (!kh) kh = rep ? rep->khrapkov : khrapkov_decomposition(k.G, 1e-8);
    if (!kh) throw not_in("no constant J with K - k0 I = k1 J");
    auto r = factor_khrapkov(*kh, tol);
    out.f = r.factorization;
    out.G = kh->matrix();
    out.extra = {{"commutator", r.commutator}};
  } else if (m == "jones") {
    auto jo = k.jones;
    if (!jo) jo = rep ? rep->jones : circulant_decomposition(k.G, 1e-8);
    if (!jo) throw not_in("no Jones descriptor and the matrix is not circulant");
    auto r = factor_jones(*jo, tol);
    out.f = r.factorization;
    out.G = jo->matrix();
    out.extra = {{"commutator", r.commutator}};
  } else if (m == "funcomm") {
    auto r = factor_funcomm(k.G, tol);
    out.f = r.factorization;
    out.extra = {{"commutator", r.commutator}};
  } else if (m == "triangular") {
    const ClassReport own = rep ? ClassReport{} : classify(k.G, false);
    const ClassReport& c = rep ? *rep : own;
    if (c.lower_triangular) {
      if (k.G.rows() == 2) {
        auto r = chebotarev_2x2(Triangular2x2{k.G(0, 0), k.G(1, 1), k.G(1, 0)}, tol);
        out.f = r.factorization;
        out.extra = {{"normal_on_entry", r.normal_on_entry}, {"normalization_steps", r.canonical.steps},
                     {"boundary_residual", r.canonical.boundary_residual}};
      } else {
        out.f = reduce_triangular_n(k.G, tol);
      }
    } else if (c.upper_triangular) {
      // G^T = P Lambda M gives G = M^T Lambda P^T, a right factorization
      const MatrixFunction T = k.G.transpose();
      Factorization ft = T.rows() == 2 ? chebotarev_2x2(Triangular2x2{T(0, 0), T(1, 1), T(1, 0)}, tol).factorization
                                       : reduce_triangular_n(T, tol);
      out.f.plus = ft.plus.transpose();
      out.f.minus = ft.minus.transpose();
      out.f.side = Side::right;
      out.f.partial_indices = ft.partial_indices;
      out.extra = {{"transposed", true}};
    } else {
      throw not_in("off-diagonal entries on both sides of the diagonal");
    }
  } else {
    throw bad("unknown method " + m);
  }
  return out;
}

std::pair<int, int> parse_deg(const std::string& s) {
  int p = 0, q = 0;
  char slash = 0, extra = 0;
  if (std::sscanf(s.c_str(), "%d%c%d%c", &p, &slash, &q, &extra) != 3 || slash != '/' || p < 0 || q < 0)
    throw bad("--deg expects P/Q with nonnegative integers");
  return {p, q};
}

int cmd_factor_matrix(const Options& o, const Tolerances& tol) {
  Kernel k = load_kernel(load_file(o.input), o.grid, tol);
  FactorOutcome out;
  if (o.method == "asymptotic") {
    if (std::isnan(o.eps)) throw bad("--method asymptotic needs --eps");
    const double step_tol = std::isnan(o.tol) ? 1e-12 : o.tol;
    auto r = asymptotic_factor(k.G, o.eps, o.j_max, step_tol);
    const std::size_t n = k.G.n_samples();
    out = {r.factorization, MatrixFunction::identity(k.G.rows(), n) + o.eps * k.G, "asymptotic", true};
    out.extra = {{"eps", o.eps}, {"steps", r.state.j}, {"delta_norm_history", r.state.delta_norm_history}};
  } else if (o.method == "rational-fit") {
    if (o.deg.empty()) throw bad("--method rational-fit needs --deg P/Q");
    auto [p, q] = parse_deg(o.deg);
    auto r = rational_fit_factor(k.G, p, q, tol);
    out = {r.factors.factorization, k.G, "rational-fit", true};
    out.extra = {{"deg", {p, q}}, {"fit_error", r.fit_error}, {"spurious_removed", r.spurious_removed}};
  } else if (o.method == "auto") {
    auto rep = classify(k.G, k.rational.has_value());
    if (k.khrapkov && std::find(rep.ranked.begin(), rep.ranked.end(), "khrapkov") == rep.ranked.end())
      rep.ranked.push_back("khrapkov");
    if (k.jones && std::find(rep.ranked.begin(), rep.ranked.end(), "jones") == rep.ranked.end())
      rep.ranked.push_back("jones");
    json tried = json::array();
    for (const auto& m : rep.ranked) {
      try {
        out = factor_exact(k, m, &rep, tol);
        break;
      } catch (const Error& e) {
        if (exit_code(e.kind()) != not_in_class) throw;
        tried.push_back({{"method", m}, {"error", e.what()}});
      }
    }
    if (out.method.empty()) throw Error(ErrorKind::not_in_class, "no exact method applies: " + tried.dump());
    out.extra["auto"] = {{"ranked", rep.ranked}, {"rejected", tried}};
    out.method = "auto:" + out.method;
  } else {
    out = factor_exact(k, o.method, nullptr, tol);
  }
  return emit_factorization("factor-matrix", out, o, tol);
}

int cmd_verify(const Options& o, const Tolerances& tol) {
  Kernel k = load_kernel(load_file(o.matrix), o.grid, tol);
  const json fj = load_file(o.factorization);
  Factorization f;
  f.plus = matrix_from(fj.at("plus"));
  f.minus = matrix_from(fj.at("minus"));
  f.partial_indices = fj.at("partial_indices").get<std::vector<int>>();
  f.side = fj.value("side", "left") == "right" ? Side::right : Side::left;
  if (f.plus.rows() != k.G.rows() || f.partial_indices.size() != k.G.rows()) throw bad("factor shapes differ from G");
  MatrixFunction G = k.rational ? k.rational->sample(std::max(f.plus.n_samples(), k.G.n_samples())) : k.G;
  if (fj.value("method", "") == "asymptotic" && fj.contains("details"))
    G = MatrixFunction::identity(G.rows(), G.n_samples()) + fj["details"].value("eps", 0.0) * G;
  auto r = index_sum_check(G, f, tol.residual);
  json j = {{"residual", r.residual},
            {"index_sum", r.index_sum},
            {"det_winding", r.det_winding},
            {"analyticity_defect", analyticity_defect(f)},
            {"inverse_analyticity_defect", inverse_analyticity_defect(f)},
            {"pass", r.pass}};
  std::cout << dump(j);
  if (!r.pass) return report_error("verification", "factorization does not reproduce G", {r.residual}, numerical);
  return ok;
}

int cmd_classify(const Options& o, const Tolerances& tol) {
  Kernel k = load_kernel(load_file(o.input), o.grid, tol);
  auto rep = classify(k.G, k.rational.has_value());
  json j = rep.to_json();
  if (k.khrapkov) j["descriptor"] = "khrapkov";
  if (k.jones) j["descriptor"] = "jones";
  std::cout << dump(j);
  return ok;
}

int cmd_stability(const Options& o) {
  std::vector<int> ks;
  std::stringstream ss(o.indices);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw bad("--indices expects comma separated integers");
    }
    if (used != tok.size()) throw bad("--indices expects comma separated integers");
    ks.push_back(v);
  }
  auto t = IndexTuple::sorted(ks);
  const bool st = is_stable(t);
  json j = {{"indices", t.kappas}, {"spread", t.kappas.front() - t.kappas.back()}, {"stable", st}};
  std::cout << dump(j);
  return ok;
}

int cmd_solve_discrete(const Options& o, const Tolerances& tol) {
  const json kj = load_file(o.kernel);
  DiscreteWHProblem p{sequence_from(kj), sequence_from(load_file(o.rhs)), {}};
  if (kj.contains("decay")) p.decay = {kj["decay"].value("M", 0.0), kj["decay"].value("lambda", 0.5)};
  if (o.count < 1) throw bad("--count must be positive");
  auto s = solve_discrete_wh(p, o.count, tol);
  json hom = json::array();
  for (const auto& h : s.homogeneous) hom.push_back(to_json(h));
  json j = {{"x", to_json(s.x)}, {"d", to_json(s.d)}, {"symbol_index", s.symbol_index}, {"homogeneous", hom},
            {"moments", to_json(s.moments)}};
  if (o.oracle > 0) {
    if (o.oracle < o.count) throw bad("--oracle must be at least --count");
    auto t = toeplitz_truncated_solve(p, o.oracle);
    double diff = 0.0;
    for (std::size_t i = 0; i < s.x.values.size(); ++i) diff = std::max(diff, std::abs(s.x.values[i] - t.x[i]));
    j["oracle"] = {{"N", o.oracle}, {"max_diff", diff}, {"tail_estimate", t.tail_estimate}, {"rcond", t.rcond}};
  }
  const std::string text = dump(j);
  if (o.output.empty()) std::cout << text;
  else write_file(o.output, text);
  return ok;
}

int cmd_solve_dual(const Options& o, const Tolerances& tol) {
  const json j = load_file(o.input);
  auto X = solve_dual(laurent_from(j.at("K1"), o.grid), laurent_from(j.at("K2"), o.grid),
                      laurent_from(j.at("g"), o.grid), tol);
  const std::string text = dump(json{{"X", to_json(X)}});
  if (o.output.empty()) std::cout << text;
  else write_file(o.output, text);
  return ok;
}

int cmd_solve_exponential(const Options& o) {
  const json j = load_file(o.system);
  ExponentialSystem sys{laurent_from(j.at("A"), o.grid), laurent_from(j.at("B"), o.grid),
                        laurent_from(j.at("C"), o.grid), laurent_from(j.at("f1"), o.grid),
                        laurent_from(j.at("f2"), o.grid), j.at("L").get<int>()};
  auto s = iterative_exponential_solve(sys, std::isnan(o.tol) ? 1e-12 : o.tol, o.max_iter);
  json out = {{"phi0_minus", to_json(s.phi0_minus)}, {"phiL_minus", to_json(s.phiL_minus)},
              {"psi0_plus", to_json(s.psi0_plus)},   {"psiL_plus", to_json(s.psiL_plus)},
              {"iterations", s.iterations},          {"change_history", s.change_history},
              {"residual", s.residual},              {"analyticity_defect", s.analyticity_defect}};
  const std::string text = dump(out);
  if (o.output.empty()) std::cout << text;
  else write_file(o.output, text);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"whx: Wiener-Hopf factorization toolkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--grid", o.grid, "grid size (power of two)");
    s->add_option("--tol", o.tol, "tolerance");
  };
  auto* fs = app.add_subcommand("factor-scalar", "scalar factorization");
  fs->add_option("--input", o.input)->required();
  fs->add_option("--output", o.output);
  common(fs);

  auto* fm = app.add_subcommand("factor-matrix", "matrix factorization");
  fm->add_option("--input", o.input)->required();
  fm->add_option("--output", o.output);
  fm->add_option("--method", o.method)
      ->check(CLI::IsMember({"auto", "rational", "khrapkov", "jones", "funcomm", "triangular", "asymptotic",
                             "rational-fit"}));
  fm->add_option("--eps", o.eps);
  fm->add_option("--deg", o.deg, "P/Q");
  fm->add_option("--steps", o.j_max, "asymptotic step limit");
  common(fm);

  auto* sd = app.add_subcommand("solve-discrete", "discrete Wiener-Hopf system");
  sd->add_option("--kernel", o.kernel)->required();
  sd->add_option("--rhs", o.rhs)->required();
  sd->add_option("--count", o.count, "number of x_n returned");
  sd->add_option("--oracle", o.oracle, "truncated Toeplitz size");
  sd->add_option("--output", o.output);
  common(sd);

  auto* du = app.add_subcommand("solve-dual", "dual equations {K1, K2, g}");
  du->add_option("--input", o.input)->required();
  du->add_option("--output", o.output);
  common(du);

  auto* ex = app.add_subcommand("solve-exponential", "exponential-kernel system");
  ex->add_option("--system", o.system)->required();
  ex->add_option("--max-iter", o.max_iter);
  ex->add_option("--output", o.output);
  common(ex);

  auto* st = app.add_subcommand("stability", "Gohberg-Krein check of an index tuple");
  st->add_option("--indices", o.indices)->required();

  auto* ve = app.add_subcommand("verify", "check a stored factorization");
  ve->add_option("--matrix", o.matrix)->required();
  ve->add_option("--factorization", o.factorization)->required();
  common(ve);

  auto* cl = app.add_subcommand("classify", "membership tests for the known classes");
  cl->add_option("--input", o.input)->required();
  common(cl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("invalid-input", e.what(), {}, invalid);
  }

  try {
    const Tolerances tol = tolerances(o);
    if (fs->parsed()) return cmd_factor_scalar(o, tol);
    if (fm->parsed()) return cmd_factor_matrix(o, tol);
    if (sd->parsed()) return cmd_solve_discrete(o, tol);
    if (du->parsed()) return cmd_solve_dual(o, tol);
    if (ex->parsed()) return cmd_solve_exponential(o);
    if (st->parsed()) return cmd_stability(o);
    if (ve->parsed()) return cmd_verify(o, tol);
    if (cl->parsed()) return cmd_classify(o, tol);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), e.data(), exit_code(e.kind()));
  } catch (const json::exception& e) {
    return report_error("invalid-input", e.what(), {}, invalid);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), {}, numerical);
  }
  return invalid;
}
