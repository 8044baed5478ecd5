#include <doctest.h>

#include "whx/error.hpp"
#include "whx/triangular_wh.hpp"

using namespace whx;

namespace {

LaurentFunction fn(const std::function<cplx(cplx)>& f, std::size_t n = 256) { return LaurentFunction::on_grid(f, n); }

int index_sum(const Factorization& f) {
  int s = 0;
  for (int k : f.partial_indices) s += k;
  return s;
}

}  // namespace

TEST_SUITE("triangular_wh") {

TEST_CASE("trivial and decoupled") {
  auto one = fn([](cplx) { return 1.0; }), zero = fn([](cplx) { return 0.0; });
  auto r = chebotarev_2x2({one, one, zero});
  CHECK(r.factorization.partial_indices == std::vector<int>{0, 0});
  CHECK(sup_distance(r.canonical.X_plus, MatrixFunction::identity(2, 64), 128) < 1e-14);
  CHECK(r.normal_on_entry);
  CHECK(r.canonical.steps == 0);

  auto d = chebotarev_2x2({fn([](cplx t) { return t; }), fn([](cplx t) { return 1.0 / t; }), zero});
  CHECK(d.factorization.partial_indices == std::vector<int>{1, -1});
  CHECK(d.canonical.boundary_residual < 1e-12);
}

TEST_CASE("epsilon coupling normalizes to (0, 0)") {
  for (double eps : {0.1, 0.01}) {
    Triangular2x2 T{fn([](cplx t) { return t; }), fn([](cplx t) { return 1.0 / t; }), fn([=](cplx) { return eps; })};
    auto r = chebotarev_2x2(T);
    CAPTURE(eps);
    CHECK_FALSE(r.normal_on_entry);
    CHECK(r.canonical.mu[0] == 1);
    CHECK(r.factorization.partial_indices == std::vector<int>{0, 0});
    CHECK(r.canonical.boundary_residual < 1e-8);
    CHECK(r.factorization.residual_inf < 1e-8);
    CHECK(r.factorization.analyticity_defect < 1e-9);
    CHECK(r.canonical.det_min > 1e-6);
  }
}

TEST_CASE("boundary relation with a general off-diagonal term") {
  Triangular2x2 T{fn([](cplx t) { return (t - 0.4) * (1.0 + 0.3 / t); }), fn([](cplx t) { return 2.0 + 0.5 * t + 0.2 / t; }),
                  fn([](cplx t) { return std::exp(t) + 1.0 / (t - 2.0) + 0.3 / t; })};
  auto r = chebotarev_2x2(T);
  CHECK(r.normal_on_entry);  // kappa1 = 1, kappa2 = 0
  CHECK(r.factorization.partial_indices == std::vector<int>{1, 0});
  CHECK(r.canonical.boundary_residual < 1e-8);
  CHECK(r.factorization.residual_inf < 1e-8);
  CHECK(r.factorization.analyticity_defect < 1e-9);
  CHECK(inverse_analyticity_defect(r.factorization) < 1e-9);
}

TEST_CASE("index spread t^2, t^-2 with a = 1") {
  Triangular2x2 T{fn([](cplx t) { return t * t; }), fn([](cplx t) { return 1.0 / (t * t); }), fn([](cplx) { return 1.0; })};
  auto r = chebotarev_2x2(T);
  CHECK(r.canonical.mu[0] == 2);
  CHECK(index_sum(r.factorization) == 0);
  CHECK(r.factorization.partial_indices == std::vector<int>{0, 0});
  CHECK(r.canonical.steps == 1);
  CHECK(r.factorization.residual_inf < 1e-10);
  CHECK(r.canonical.boundary_residual < 1e-10);
}

TEST_CASE("two-quotient continued fraction") {
  // phi- = q1 / (q0 q1 + 1) with q0 = 2z, q1 = 3z; kappa = (3, -1)
  auto phi = [](cplx t) { return 3.0 * t / (6.0 * t * t + 1.0); };
  Triangular2x2 T{fn([](cplx t) { return t * t * t; }), fn([](cplx t) { return 1.0 / t; }),
                  fn([&](cplx t) { return -phi(t) * t * t * t; })};
  auto r = chebotarev_2x2(T);
  CHECK(r.canonical.mu[0] == 1);
  CHECK(r.canonical.steps == 2);
  CHECK(r.factorization.partial_indices == std::vector<int>{1, 1});
  CHECK(r.factorization.residual_inf < 1e-8);
  CHECK(r.factorization.analyticity_defect < 1e-9);
}

TEST_CASE("normalize is a no-op on normal input") {
  Triangular2x2 T{fn([](cplx t) { return 2.0 + 0.1 * t; }), fn([](cplx t) { return t; }), fn([](cplx t) { return t * t; })};
  auto r = chebotarev_2x2(T);
  CHECK(r.normal_on_entry);
  auto again = normalize_at_infinity(r.canonical, T.matrix());
  CHECK(again.steps == r.canonical.steps);
  CHECK(sup_distance(again.X_minus, r.canonical.X_minus, 256) == 0.0);
}

TEST_CASE("vanishing diagonal") {
  Triangular2x2 T{fn([](cplx t) { return t - 1.0; }), fn([](cplx) { return 1.0; }), fn([](cplx) { return 0.0; })};
  try {
    chebotarev_2x2(T);
    FAIL("expected singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::contour_singularity);
  }
}

TEST_CASE("n x n reduction") {
  SUBCASE("n = 2 matches chebotarev") {
    auto B = MatrixFunction::on_grid([](cplx t) { CMat m(2, 2); m << t, 0.0, 0.1, 1.0 / t; return m; }, 2, 2, 256);
    auto a = reduce_triangular_n(B);
    auto b = chebotarev_2x2({B(0, 0), B(1, 1), B(1, 0)}).factorization;
    CHECK(a.partial_indices == b.partial_indices);
    CHECK(sup_distance(a.plus, b.plus, 256) == 0.0);
  }
  SUBCASE("n = 3 diagonal") {
    auto B = MatrixFunction::on_grid([](cplx t) {
      CMat m = CMat::Zero(3, 3);
      m(0, 0) = t * (1.0 + 0.2 * t), m(1, 1) = 3.0 + 1.0 / t, m(2, 2) = 1.0 / (t * t);
      return m;
    }, 3, 3, 256);
    auto f = reduce_triangular_n(B);
    CHECK(f.partial_indices == std::vector<int>{1, 0, -2});
    CHECK(f.residual_inf < 1e-10);
  }
  SUBCASE("n = 3 unipotent") {
    auto B = MatrixFunction::on_grid([](cplx t) {
      CMat m = CMat::Identity(3, 3);
      m(1, 0) = t + 2.0 / t, m(2, 0) = 0.5 * t * t - 1.0 / t, m(2, 1) = 1.0 / (t * t) + 0.3 * t;
      return m;
    }, 3, 3, 256);
    auto f = reduce_triangular_n(B);
    CHECK(f.partial_indices == std::vector<int>{0, 0, 0});
    CHECK(f.residual_inf < 1e-7);
    CHECK(f.analyticity_defect < 1e-9);
  }
  SUBCASE("n = 4 with mixed indices") {
    auto B = MatrixFunction::on_grid([](cplx t) {
      CMat m = CMat::Zero(4, 4);
      m(0, 0) = t, m(1, 1) = 1.0 / t, m(2, 2) = 2.0 + t, m(3, 3) = t * t;
      m(1, 0) = 0.2, m(2, 1) = 0.1 * t, m(3, 0) = 1.0 / t, m(3, 2) = 0.3;
      return m;
    }, 4, 4, 256);
    auto f = reduce_triangular_n(B);
    CHECK(f.residual_inf < 1e-7);
    CHECK(f.analyticity_defect < 1e-9);
    CHECK(index_sum(f) == 2);
  }
  SUBCASE("upper entries rejected") {
    auto B = MatrixFunction::on_grid([](cplx t) { CMat m(2, 2); m << t, 1.0, 0.0, 1.0; return m; }, 2, 2, 64);
    CHECK_THROWS_AS(reduce_triangular_n(B), Error);
  }
}

}  // TEST_SUITE
