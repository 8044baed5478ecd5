#include <doctest.h>

#include <cmath>
#include <random>

#include "whx/discrete_wh.hpp"
#include "whx/error.hpp"

using namespace whx;

namespace {

// (sum_{k in [klo, khi]} a_{n-k} x_k) for n in [lo, hi]
CVec apply_kernel(const Sequence& a, const Sequence& x, int klo, int khi, int lo, int hi) {
  CVec out;
  for (int n = lo; n <= hi; ++n) {
    cplx s = 0.0;
    for (int k = std::max(klo, x.first()); k <= std::min(khi, x.last()); ++k) s += a.at(n - k) * x.at(k);
    out.push_back(s);
  }
  return out;
}

Sequence delta() { return {0, {1.0}}; }

}  // namespace

TEST_SUITE("discrete_wh") {

TEST_CASE("z_transform examples") {
  auto one = z_transform(delta());
  CHECK(one.coeff(0) == cplx(1.0));
  CHECK(one.coeff_max(one.k_min(), -1) == 0.0);

  auto cosine = z_transform({-1, {0.5, 0.0, 0.5}});
  CHECK(cosine.coeff(1) == cplx(0.5));
  CHECK(cosine.coeff(-1) == cplx(0.5));

  Sequence geo{-40, {}};
  for (int n = -40; n <= 40; ++n) geo.values.push_back(std::ldexp(1.0, -std::abs(n)));
  auto A = z_transform(geo, 256);
  CVec s = A.samples();
  CVec t = grid_nodes(256);
  double err = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j)
    err = std::max(err, std::abs(s[j] - 1.5 / (2.5 - t[j] - 1.0 / t[j])));
  CHECK(err < 1e-10);

  auto back = inverse_z_transform(A, -40, 40);
  for (int n = -40; n <= 40; ++n) CHECK(back.at(n) == geo.at(n));
}

TEST_CASE("z_transform linearity and convolution") {
  std::mt19937 rng(8);
  std::normal_distribution<double> nd;
  Sequence a{-3, CVec(7)}, b{-2, CVec(6)};
  for (auto& v : a.values) v = {nd(rng), nd(rng)};
  for (auto& v : b.values) v = {nd(rng), nd(rng)};
  auto A = z_transform(a, 64), B = z_transform(b, 64);
  auto sum = A + 2.0 * B;
  for (int n = -5; n <= 5; ++n) CHECK(std::abs(sum.coeff(n) - (a.at(n) + 2.0 * b.at(n))) < 1e-15);
  auto prod = A * B;
  for (int n = -8; n <= 8; ++n) {
    cplx direct = 0.0;
    for (int k = -10; k <= 10; ++k) direct += a.at(n - k) * b.at(k);
    CHECK(std::abs(prod.coeff(n) - direct) < 1e-12);
  }
}

TEST_CASE("identity kernel") {
  DiscreteWHProblem p{delta(), {0, {1.0, 2.0, 3.0}}, {}};
  auto s = solve_discrete_wh(p, 6);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(s.x.at(n) - p.c.at(n)) < 1e-14);
  auto o = toeplitz_truncated_solve(p, 16);
  for (int n = 0; n < 16; ++n) CHECK(std::abs(o.x[static_cast<std::size_t>(n)] - p.c.at(n)) < 1e-15);
}

TEST_CASE("tridiagonal kernel against the truncated solve") {
  DiscreteWHProblem p{{-1, {0.25, 1.0, 0.25}}, delta(), {1.0, 0.5}};
  auto s = solve_discrete_wh(p, 2000);
  auto o = toeplitz_truncated_solve(p, 2000);
  double err = 0.0;
  for (int n = 0; n < 2000; ++n) err = std::max(err, std::abs(s.x.at(n) - o.x[static_cast<std::size_t>(n)]));
  CHECK(err < 1e-6);
  CHECK(o.tail_estimate < 1e-12);
  CHECK(s.symbol_index == 0);
  // equation and induced d_n
  CVec lhs = apply_kernel(p.a, s.x, 0, 1999, -3, 10);
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(lhs[static_cast<std::size_t>(n + 3)] - p.c.at(n)) < 1e-7);
  for (int n = -3; n < 0; ++n) CHECK(std::abs(lhs[static_cast<std::size_t>(n + 3)] - s.d.at(n)) < 1e-12);
}

TEST_CASE("symbol of winding -1 gives a one-parameter family") {
  // A(t) = 2/t + 0.5: Toeplitz operator of Fredholm index +1
  DiscreteWHProblem p{{-1, {2.0, 0.5}}, {0, {1.0, -1.0, 0.5}}, {}};
  auto s = solve_discrete_wh(p, 200);
  CHECK(s.symbol_index == -1);
  REQUIRE(s.homogeneous.size() == 1);
  for (double w : {0.0, 1.0, -2.5}) {
    Sequence x = s.x;
    for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] += w * s.homogeneous[0].values[i];
    CVec lhs = apply_kernel(p.a, x, 0, 199, 0, 150);
    double err = 0.0;
    for (int n = 0; n <= 150; ++n) err = std::max(err, std::abs(lhs[static_cast<std::size_t>(n)] - p.c.at(n)));
    CHECK(err < 1e-7);
  }
  double hn = 0.0;
  for (auto v : s.homogeneous[0].values) hn = std::max(hn, std::abs(v));
  CHECK(hn > 0.1);
}

TEST_CASE("symbol of winding +1 imposes a solvability condition") {
  DiscreteWHProblem p{{0, {0.5, 2.0}}, {0, {1.0}}, {}};
  try {
    solve_discrete_wh(p, 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_solution);
  }
  // c = A * (some x) is solvable
  DiscreteWHProblem q{{0, {0.5, 2.0}}, {0, {0.5, 2.0 + 0.5 * 0.3, 2.0 * 0.3}}, {}};
  auto s = solve_discrete_wh(q, 10);
  CHECK(s.symbol_index == 1);
  CHECK(std::abs(s.x.at(0) - 1.0) < 1e-10);
  CHECK(std::abs(s.x.at(1) - 0.3) < 1e-10);
  CHECK(std::abs(s.x.at(2)) < 1e-10);
}

TEST_CASE("validation") {
  DiscreteWHProblem p{{-2, {0.5, 0.1, 1.0, 0.1, 0.5}}, delta(), {0.3, 0.5}};
  try {
    solve_discrete_wh(p, 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
  DiscreteWHProblem v{{-1, {0.5, 1.0, 0.5}}, delta(), {}};
  try {
    solve_discrete_wh(v, 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::contour_singularity);
  }
}

TEST_CASE("singular truncation") {
  DiscreteWHProblem p{{-1, {1.0, 0.0, 1.0}}, delta(), {}};
  try {
    toeplitz_truncated_solve(p, 9, false);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_truncation);
  }
}

TEST_CASE("paired discrete systems") {
  Sequence c{0, {1.0, 2.0, 0.5}}, d{-2, {0.25, -1.0}};
  auto x = solve_discrete_dual(delta(), delta(), c, d, -5, 5);
  for (int n = -5; n <= 5; ++n) CHECK(std::abs(x.at(n) - (n >= 0 ? c.at(n) : d.at(n))) < 1e-14);

  Sequence a{-1, {0.3, 1.0, 0.2}};
  auto y = solve_discrete_dual(a, a, c, d, -300, 300);
  CVec full = apply_kernel(a, y, -300, 300, -100, 100);
  for (int n = -100; n <= 100; ++n) {
    cplx rhs = n >= 0 ? c.at(n) : d.at(n);
    CHECK(std::abs(full[static_cast<std::size_t>(n + 100)] - rhs) < 1e-10);
  }

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int trial = 0; trial < 5; ++trial) {
    Sequence ra{-2, {u(rng), u(rng), 1.0, u(rng), u(rng)}}, rb{-1, {u(rng), 1.0 + u(rng), u(rng)}};
    Sequence zero{-1, {0.0}};
    auto z = solve_discrete_dual(ra, rb, delta(), zero, -400, 400);
    CVec l1 = apply_kernel(ra, z, -400, 400, 0, 150), l2 = apply_kernel(rb, z, -400, 400, -150, -1);
    double err = 0.0;
    for (int n = 0; n <= 150; ++n) err = std::max(err, std::abs(l1[static_cast<std::size_t>(n)] - (n == 0 ? 1.0 : 0.0)));
    for (int n = -150; n < 0; ++n) err = std::max(err, std::abs(l2[static_cast<std::size_t>(n + 150)]));
    CHECK(err < 1e-7);
  }
}

TEST_CASE("transpose system agrees with the dual system when kernels coincide") {
  Sequence a{-2, {0.1, 0.3, 1.0, 0.2, -0.1}};
  Sequence c{-3, {0.5, 0.0, 1.0, 2.0, -1.0}};
  Sequence cp{0, {2.0, -1.0}}, cm{-3, {0.5, 0.0, 1.0}};
  auto x1 = solve_discrete_transpose(a, a, c, -50, 50);
  auto x2 = solve_discrete_dual(a, a, cp, cm, -50, 50);
  for (int n = -50; n <= 50; ++n) CHECK(std::abs(x1.at(n) - x2.at(n)) < 1e-12);

  Sequence b{-1, {0.25, 1.0, 0.1}};
  auto x3 = solve_discrete_transpose(a, b, c, -400, 400);
  Sequence xp{0, {}}, xm{-400, {}};
  for (int n = 0; n <= 400; ++n) xp.values.push_back(x3.at(n));
  for (int n = -400; n < 0; ++n) xm.values.push_back(x3.at(n));
  CVec l1 = apply_kernel(a, xp, 0, 400, -100, 100), l2 = apply_kernel(b, xm, -400, -1, -100, 100);
  for (int n = -100; n <= 100; ++n)
    CHECK(std::abs(l1[static_cast<std::size_t>(n + 100)] + l2[static_cast<std::size_t>(n + 100)] - c.at(n)) < 1e-9);
}

}
