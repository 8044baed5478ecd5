#include <doctest.h>

#include <cmath>

#include "whx/approx_wh.hpp"
#include "whx/error.hpp"
#include "whx/mobius.hpp"

using namespace whx;

namespace {

MatrixFunction mat(CMat (*f)(cplx)) { return MatrixFunction::on_grid(f, 2, 2, 256); }

// least-squares slope of log |Delta_j| against j, above the roundoff floor
double log_slope(const std::vector<double>& h) {
  std::vector<double> x, y;
  for (std::size_t j = 0; j < h.size(); ++j)
    if (h[j] > 1e-13) x.push_back(static_cast<double>(j + 1)), y.push_back(std::log(h[j]));
  double mx = 0, my = 0, sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(x.size()), my /= static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

LaurentFunction grid1024(cplx (*f)(cplx)) { return LaurentFunction::on_grid(f, 1024); }

ExponentialSystem coupled(int L) {
  ExponentialSystem s;
  s.A = grid1024([](cplx t) { return 3.0 + 1.0 / (1.25 - t) + 0.5 / (1.0 - 0.8 / t); });
  s.B = grid1024([](cplx t) { return 2.0 + 0.7 / (1.25 - t) + 0.48 / (t - 0.8); });
  s.C = grid1024([](cplx t) { return 1.5 + 0.4 / (1.25 - t) + 0.5 / (1.0 - 0.8 / t); });
  s.f1 = grid1024([](cplx t) { return t / (1.25 - t) + 0.3 / (t - 0.8); });
  s.f2 = grid1024([](cplx t) { return 0.5 / (t - 0.8) + 0.2 * t; });
  s.L = L;
  return s;
}

}  // namespace

TEST_SUITE("approx_wh") {

TEST_CASE("asymptotic: trivial inputs") {
  auto G = mat([](cplx t) { CMat m(2, 2); m << t, 1.0 / t, 0.5, t * t; return m; });
  auto r0 = asymptotic_factor(G, 0.0, 10, 1e-14);
  CHECK(r0.state.j == 0);
  CHECK(r0.factorization.residual_inf == 0.0);
  CHECK(sup_distance(r0.state.S_plus, MatrixFunction::identity(2, 256), 256) == 0.0);

  // constant G is entirely plus under k >= 0, so one step is exact
  auto C = MatrixFunction::constant((CMat(2, 2) << 0.0, 1.0, 1.0, 0.0).finished(), 64);
  auto r1 = asymptotic_factor(C, 0.5, 10, 1e-14);
  CHECK(r1.state.j == 1);
  CHECK(r1.state.delta_norm_history[0] < 1e-15);
  CHECK(sup_distance(r1.state.G_plus[0], C, 64) < 1e-15);
  CHECK(r1.factorization.residual_inf < 1e-15);
}

TEST_CASE("asymptotic: first-step defect") {
  auto G = mat([](cplx t) { CMat m(2, 2); m << 0.5 * t, 1.0 / t, t, -0.5 / t; return m; });
  for (double eps : {0.1, 0.2}) {
    auto r = asymptotic_factor(G, eps, 1, 0.0);
    MatrixFunction d1 = asymptotic_defect(G, eps, r.state);
    MatrixFunction cross = product(r.state.G_minus[0], r.state.G_plus[0]);
    MatrixFunction with_minus = d1 + cplx(eps * eps) * cross, with_plus = d1 - cplx(eps * eps) * cross;
    CHECK(with_minus.coeff_max(with_minus.k_min(), with_minus.k_max()) < 1e-12);
    // the opposite sign leaves 2 eps^2 G0- G0+ behind
    CHECK(with_plus.coeff_max(with_plus.k_min(), with_plus.k_max()) > eps * eps);
  }
}

TEST_CASE("asymptotic: order of the defect") {
  std::vector<MatrixFunction> fixtures = {
      mat([](cplx t) { CMat m(2, 2); m << 0.5 * t, 1.0 / t, t, -0.5 / t; return m; }),
      mat([](cplx t) { CMat m(2, 2); m << 0.0, t + 0.3 / t, 1.0 / t, 0.2 * t; return m; }),
      mat([](cplx t) { CMat m(2, 2); m << std::exp(0.5 * t) - 1.0, 0.6 / t, 0.6 * t, std::exp(0.5 / t) - 1.0; return m; }),
      mat([](cplx t) { CMat m(2, 2); m << 0.7 * t - 0.7 / t, 0.4, 0.4 / (1.0 - 0.3 / t), 0.3 * t; return m; }),
      mat([](cplx t) { CMat m(2, 2); m << 0.5 * t + 0.5 / t, 0.5, 0.5, -0.5 * t; return m; }),
  };
  for (std::size_t i = 0; i < fixtures.size(); ++i)
    for (double eps : {0.1, 0.2}) {
      auto r = asymptotic_factor(fixtures[i], eps, 40, 1e-14);
      const double s = log_slope(r.state.delta_norm_history);
      CAPTURE(i);
      CAPTURE(eps);
      CAPTURE(s);
      CHECK(std::abs(s / std::log(eps) - 1.0) < 0.2);
      CHECK(r.factorization.residual_inf < 1e-13);
      CHECK(r.factorization.analyticity_defect < 1e-9);
      for (std::size_t k = 0; k < r.state.G_plus.size(); ++k) {
        Factorization one{r.state.G_plus[k], r.state.G_minus[k], {0, 0}};
        CHECK(analyticity_defect(one) < 1e-9);
      }
    }
}

TEST_CASE("asymptotic: size and divergence guards") {
  auto G = mat([](cplx t) { CMat m(2, 2); m << 2.0 * t, 0.0, 0.0, 2.0 / t; return m; });
  CHECK_THROWS_AS(asymptotic_factor(G, 0.6, 10, 1e-12), Error);
  // past the size check the defect grows
  auto H = mat([](cplx t) { CMat m(2, 2); m << t + 1.0 / t, 1.0 / t, t, t - 1.0 / t; return m; });
  CHECK_THROWS_AS(asymptotic_factor(H, 0.5, 40, 1e-14), Error);
  try {
    asymptotic_factor(H, 0.5, 40, 1e-14, false);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divergence);
    CHECK(e.data().size() >= 3);
  }
}

TEST_CASE("rational fit: exact recovery") {
  RationalScalar r{{2.0, 0.3, 1.0}, poly_from_roots({0.5, 2.0})};
  auto K = LaurentFunction::on_grid([&](cplx t) { return r.eval(t); }, 256);
  auto fit = rational_fit_factor(K, 2, 2);
  CHECK(fit.fit_error < 1e-12);
  auto exact = factor_rational(RationalMatrixFunction(1, 1, {r}, Variable::t));
  CHECK(fit.factors.factorization.partial_indices == exact.factorization.partial_indices);
  CHECK(sup_distance(fit.factors.factorization.plus, exact.factorization.plus, 256) < 1e-8);
  CHECK(fit.residual < 1e-10);

  std::vector<RationalScalar> e = {{{1.0, 0.2}, poly_from_roots({0.3})},
                                   {{0.5}, poly_from_roots({-2.5})},
                                   {{0.4}, poly_from_roots({0.0})},
                                   {{3.0, 1.0}, poly_from_roots({1.8})}};
  RationalMatrixFunction M(2, 2, e, Variable::t);
  auto KM = M.sample(256);
  auto fm = rational_fit_factor(KM, 1, 1);
  CHECK(fm.fit_error < 1e-12);
  auto em = factor_rational(M);
  CHECK(fm.factors.factorization.partial_indices == em.factorization.partial_indices);
  CHECK(fm.residual < 1e-9);
}

TEST_CASE("rational fit: branch points off the contour") {
  // sqrt((alpha^2 + 4)/(alpha^2 + 1)) is sqrt((3t - 1)(3 - t)/(4t)) on the circle
  auto K = LaurentFunction::on_grid([](cplx t) { return std::sqrt((3.0 * t - 1.0) * (3.0 - t) / (4.0 * t)); }, 512);
  auto s = rational_fit_sweep(K, 10);
  for (int m = 2; m <= 10; m += 2) CHECK(s.raw_errors[m] < s.raw_errors[m - 2]);
  for (std::size_t m = 1; m < s.errors.size(); ++m) CHECK(s.errors[m] <= s.errors[m - 1]);
  CHECK(s.errors.back() < 1e-10);

  auto K2 = transport_function(
      [](cplx a) { return std::sqrt((a * a + 9.0) / (a * a + 1.0)) * (a + cplx(0, 2)) / (a + cplx(0, 3)); }, 512, 1.0);
  auto s2 = rational_fit_sweep(K2, 11);
  for (std::size_t m = 1; m < s2.raw_errors.size(); ++m) CHECK(s2.raw_errors[m] < s2.raw_errors[m - 1]);
  CHECK_FALSE(s2.stagnated);

  // poles and zeros alternate along the cuts [0, 1/3] and [3, inf)
  auto f = rational_fit_factor(K, 6, 6);
  CHECK(f.fit_error < 1e-6);
  CHECK(f.residual < 1e-6);
  CHECK(f.factors.factorization.partial_indices == std::vector<int>{0});
  std::vector<std::pair<double, int>> inside;
  for (cplx z : f.poles) {
    CHECK(std::abs(z.imag()) < 1e-6);
    if (std::abs(z) < 1.0) inside.push_back({z.real(), 1});
  }
  for (cplx z : f.zeros)
    if (std::abs(z) < 1.0) inside.push_back({z.real(), 0});
  std::sort(inside.begin(), inside.end());
  REQUIRE(inside.size() >= 4);
  for (std::size_t i = 1; i < inside.size(); ++i) CHECK(inside[i].second != inside[i - 1].second);
  for (auto& [x, kind] : inside) CHECK((x > 0.0 && x < 1.0 / 3.0));
}

TEST_CASE("rational fit: cut through infinity") {
  const cplx k(1.0, 1.0);
  auto K = transport_function([&](cplx a) { return std::sqrt(a * a - k * k) / (a + cplx(0, 1)); }, 2048, 1.0);
  auto r = fit_rational(K, 8, 8);
  const double in = windowed_error(K, r, 2.0, true), out = windowed_error(K, r, 2.0, false);
  CAPTURE(in);
  CAPTURE(out);
  CHECK(out > 3.0 * in);
  CHECK(out > 1e-2);
}

TEST_CASE("rational fit: degrees and rejection") {
  auto K = LaurentFunction::on_grid([](cplx t) { return 2.0 + t; }, 16);
  CHECK_THROWS_AS(fit_rational(K, -1, 2), Error);
  CHECK_THROWS_AS(fit_rational(K, 8, 8), Error);
  // a pole on the contour cannot come out of a fit of a continuous function, but a
  // vanishing approximant is caught by the rational constructor
  auto Z = LaurentFunction::on_grid([](cplx t) { return t - 1.0; }, 64);
  CHECK_THROWS_AS(rational_fit_factor(Z, 1, 0), Error);
}

TEST_CASE("exponential system: geometric convergence in L") {
  std::vector<int> its;
  for (int L : {2, 5, 10}) {
    auto r = iterative_exponential_solve(coupled(L), 1e-10, 100);
    CAPTURE(L);
    CHECK(r.residual < 1e-9);
    CHECK(r.analyticity_defect < 1e-8);
    for (std::size_t i = 2; i < r.change_history.size(); ++i)
      CHECK(r.change_history[i] < r.change_history[i - 1]);
    its.push_back(r.iterations);
  }
  CHECK(its[0] > its[1]);
  CHECK(its[1] > its[2]);
}

TEST_CASE("exponential system: one-sided coupling") {
  // A and B analytic inside the disc: Phi0- no longer sees Psi_L+
  auto s = coupled(3);
  s.A = grid1024([](cplx t) { return 3.0 + 1.0 / (1.25 - t); });
  s.B = grid1024([](cplx t) { return 2.0 + 0.7 / (1.25 - t); });
  auto r = iterative_exponential_solve(s, 1e-10, 50);
  CHECK(r.iterations == 2);
  CHECK(r.residual < 1e-10);

  // constant B and A/C analytic outside the disc: Psi_L+ no longer sees Phi0-
  auto u = coupled(3);
  u.B = LaurentFunction::constant(2.0, 1024);
  u.A = u.C * grid1024([](cplx t) { return 1.0 + 0.4 / t; });
  auto q = iterative_exponential_solve(u, 1e-10, 50);
  CHECK(q.iterations == 2);
  CHECK(q.residual < 1e-10);
}

TEST_CASE("exponential system: guards") {
  auto s = coupled(0);
  CHECK_THROWS_AS(iterative_exponential_solve(s, 1e-10, 10), Error);
  s = coupled(2);
  s.A = grid1024([](cplx t) { return t * (3.0 + 1.0 / (1.25 - t)); });
  try {
    iterative_exponential_solve(s, 1e-10, 10);
    FAIL("expected not_in_class");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_in_class);
  }
  // too few sweeps allowed
  try {
    iterative_exponential_solve(coupled(2), 1e-10, 2);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divergence);
  }
}

}  // TEST_SUITE
