#include <doctest.h>

#include <cmath>
#include <set>

#include "whx/error.hpp"
#include "whx/stability_tools.hpp"

using namespace whx;

namespace {

MatrixFunction m2(const std::function<CMat(cplx)>& f, std::size_t n = 128) { return MatrixFunction::on_grid(f, 2, 2, n); }

Factorization synthetic_10() {
  Factorization f;
  f.plus = m2([](cplx t) { CMat m(2, 2); m << 1.0, 0.2 * t, 0.1, 1.0 + 0.3 * t; return m; });
  f.minus = m2([](cplx t) { CMat m(2, 2); m << 1.0, 0.3 / t, 0.0, 2.0 - 0.5 / t; return m; });
  f.partial_indices = {1, 0};
  return f;
}

}  // namespace

TEST_SUITE("stability_tools") {

TEST_CASE("Gohberg-Krein predicate") {
  CHECK(is_stable({{0, 0}}));
  CHECK_FALSE(is_stable({{1, -1}}));
  CHECK(is_stable({{3, 2, 2}}));
  CHECK_FALSE(is_stable({{2, 0}}));
  CHECK(is_stable({{-3}}));
  CHECK_THROWS_AS(is_stable({{}}), Error);
  // stable exactly when the distinct values fit in {m, m + 1}
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= a; ++b) {
      std::set<int> s{a, b};
      CHECK(is_stable({{a, b}}) == (s.size() == 1 || (s.size() == 2 && *s.rbegin() == *s.begin() + 1)));
    }
}

TEST_CASE("index sum check") {
  auto G = m2([](cplx t) { CMat m(2, 2); m << t, 0.0, 0.0, 1.0 / t; return m; });
  Factorization f{MatrixFunction::identity(2, 128), MatrixFunction::identity(2, 128), {1, -1}};
  auto r = index_sum_check(G, f);
  CHECK(r.pass);
  CHECK(r.index_sum == 0);
  CHECK(r.det_winding == 0);

  std::vector<RationalScalar> e = {{{0.0, 1.0}, {1.0}}, {{0.0}, {1.0}}, {{0.0}, {1.0}}, {{1.0}, {0.0, 1.0}}};
  auto fr = factor_rational(RationalMatrixFunction(2, 2, e, Variable::t)).factorization;
  CHECK(index_sum_check(G, fr).pass);

  Factorization bad = f;
  bad.partial_indices = {0, 0};
  auto rb = index_sum_check(G, bad);
  CHECK_FALSE(rb.pass);
  CHECK(rb.residual > 0.5);
}

TEST_CASE("equivalence: constant freedom") {
  auto f = synthetic_10();
  f.partial_indices = {0, 0};
  auto same = equivalence_check(f, f);
  CHECK(same.status == EquivalenceStatus::constant);
  CHECK((same.H - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  // scalar: (c X+, X- / c)
  auto X = MatrixFunction::scalar(LaurentFunction::on_grid([](cplx t) { return 2.0 + 0.5 * t; }, 64));
  auto Y = MatrixFunction::scalar(LaurentFunction::on_grid([](cplx t) { return 1.0 + 0.25 / t; }, 64));
  const cplx c(0.7, -1.2);
  Factorization s1{X, Y, {0}}, s2{c * X, (1.0 / c) * Y, {0}};
  auto w = equivalence_check(s1, s2);
  CHECK(w.status == EquivalenceStatus::constant);
  CHECK(std::abs(w.H(0, 0) - c) < 1e-12);
}

TEST_CASE("equivalence: polynomial freedom for (1, 0)") {
  auto f1 = synthetic_10();
  PolyMatrix H = PolyMatrix::identity(2);
  H(0, 1) = {0.3, 0.7};
  H(1, 1) = {1.5};
  auto f2 = transform_factorization(f1, H);
  auto G = reconstruct(f1);
  CHECK(factorization_residual(G, f2) < 1e-12);
  CHECK(f2.analyticity_defect < 1e-12);

  auto w = equivalence_check(f1, f2);
  REQUIRE(w.status == EquivalenceStatus::triangular_polynomial);
  REQUIRE(w.P.size() == 2);
  CHECK(std::abs(w.P[0] - 0.3) < 1e-9);
  CHECK(std::abs(w.P[1] - 0.7) < 1e-9);
  CHECK(std::abs(w.c1 - 1.0) < 1e-9);
  CHECK(std::abs(w.c2 - 1.5) < 1e-9);

  // a degree-2 P is not allowed for kappa1 - kappa2 = 1
  H(0, 1) = {0.3, 0.7, 0.4};
  auto f3 = transform_factorization(f1, H);
  CHECK(f3.analyticity_defect > 0.1);
  CHECK(equivalence_check(f1, f3).status == EquivalenceStatus::mismatch);

  auto f4 = f1;
  f4.partial_indices = {0, 1};
  CHECK(equivalence_check(f1, f4).status == EquivalenceStatus::mismatch);
}

TEST_CASE("equivalence: higher order") {
  auto P = MatrixFunction::on_grid([](cplx t) {
    CMat m = CMat::Identity(3, 3);
    m(0, 1) = 0.2 * t, m(2, 0) = 0.1;
    return m;
  }, 3, 3, 64);
  Factorization f{P, MatrixFunction::identity(3, 64), {2, 1, 0}};
  PolyMatrix H = PolyMatrix::identity(3);
  H(0, 2) = {0.1, 0.2, 0.3};
  H(1, 2) = {1.0, -1.0};
  auto w = equivalence_check(f, transform_factorization(f, H));
  CHECK(w.status == EquivalenceStatus::unverified_structure);
  CHECK(w.defect < 1e-12);
}

TEST_CASE("perturbation experiment") {
  for (double eps : {0.1, 0.01}) {
    auto r = perturbation_experiment(eps);
    CAPTURE(eps);
    CHECK(r.explicit_residual < 1e-10);
    CHECK(r.explicit_factors.analyticity_defect < 1e-14);
    CHECK(r.unperturbed_indices == std::vector<int>{1, -1});
    CHECK(r.perturbed_indices == std::vector<int>{0, 0});
    CHECK(std::abs(r.factor_sup * eps - 1.0) < 0.2);
  }
  try {
    perturbation_experiment(1e-13);
    FAIL("expected guard");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ill_conditioned);
  }
}

TEST_CASE("Shubin smoke test") {
  // indices (0, 0) and (1, 0), both stable
  std::vector<RationalScalar> a = {{{2.0, 0.5}, {1.0}}, {{0.3}, {-2.0, 1.0}}, {{0.1}, {0.0, 1.0}}, {{1.5}, {1.0}}};
  std::vector<RationalScalar> b = {{{0.4, 1.0}, {1.0}}, {{0.3}, {1.0}}, {{0.2}, {-3.0, 1.0}}, {{2.0}, {1.0}}};
  CMat E(2, 2);
  E << 1.0, 0.5, -0.3, 0.8;
  for (const auto& e : {a, b}) {
    RationalMatrixFunction G(2, 2, e, Variable::t);
    auto r = shubin_smoke(G, E, {1e-3, 1e-4});
    CHECK(r.monotone);
    CHECK(r.factor_change[1] < r.factor_change[0]);
    CHECK(r.factor_change[0] < 1e-1);
  }
  std::vector<RationalScalar> u = {{{0.0, 1.0}, {1.0}}, {{0.0}, {1.0}}, {{0.0}, {1.0}}, {{1.0}, {0.0, 1.0}}};
  CHECK_THROWS_AS(shubin_smoke(RationalMatrixFunction(2, 2, u, Variable::t), E, {1e-3}), Error);
}

}  // TEST_SUITE
