#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "whx/commutative_wh.hpp"
#include "whx/error.hpp"
#include "whx/scalar_rh.hpp"

using namespace whx;

namespace {

const cplx I{0.0, 1.0};

LaurentFunction fn(const std::function<cplx(cplx)>& f, std::size_t n = 256) { return LaurentFunction::on_grid(f, n); }

double dist(const LaurentFunction& a, const LaurentFunction& b) {
  double m = 0.0;
  for (int k = std::min(a.k_min(), b.k_min()); k <= std::max(a.k_max(), b.k_max()); ++k)
    m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

CMat jmat(cplx d2) {
  CMat J(2, 2);
  J << 0.0, 1.0, d2, 0.0;
  return J;
}

KhrapkovKernel forward_khrapkov(const std::function<cplx(cplx)>& r, const std::function<cplx(cplx)>& s, cplx d2) {
  cplx D = std::sqrt(d2);
  KhrapkovKernel k;
  k.k0 = fn([&](cplx t) { return r(t) * std::cosh(s(t) * D); });
  k.k1 = fn([&](cplx t) { return r(t) * std::sinh(s(t) * D) / D; });
  k.J = jmat(d2);
  k.Delta2 = d2;
  return k;
}

}  // namespace

TEST_SUITE("commutative_wh") {

TEST_CASE("class checks") {
  KhrapkovKernel k{fn([](cplx) { return 1.0; }), fn([](cplx) { return 0.1; }), jmat(0.5), 0.4};
  CHECK_THROWS_AS(k.validate(), Error);
  k.Delta2 = 0.5;
  CHECK_NOTHROW(k.validate());
  k.J = CMat::Identity(2, 2);
  k.Delta2 = 1.0;
  try {
    k.validate();
    FAIL("trace check");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_in_class);
  }
  JonesKernel jk{{fn([](cplx) { return 0.1; }), fn([](cplx) { return 1.0; })}, CMat::Identity(2, 2), 1.0};
  try {
    jk.validate();
    FAIL("trace condition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_in_class);
  }
}

TEST_CASE("Khrapkov with k1 = 0 is scalar") {
  KhrapkovKernel k{fn([](cplx t) { return (2.0 + 0.5 * t) * (1.0 - 0.3 / t); }), fn([](cplx) { return 0.0; }), jmat(0.7), 0.7};
  auto f = factor_khrapkov(k).factorization;
  CHECK(f.residual_inf < 1e-12);
  CHECK(f.partial_indices == std::vector<int>{0, 0});
  CHECK(f.plus(0, 1).sup_norm() < 1e-14);
  CHECK(f.plus(1, 0).sup_norm() < 1e-14);
  CHECK(dist(f.plus(0, 0), f.plus(1, 1)) < 1e-14);
  // the plus factor is (2 + 0.5 t) up to the sign chosen for r
  double e = std::min(dist(f.plus(0, 0), fn([](cplx t) { return 2.0 + 0.5 * t; })),
                      dist(f.plus(0, 0), fn([](cplx t) { return -2.0 - 0.5 * t; })));
  CHECK(e < 1e-12);
}

TEST_CASE("Khrapkov forward construction recovers theta") {
  auto sp = [](cplx t) { return 0.3 * t + 0.2 / (t - 2.5); };
  auto sm = [](cplx t) { return 0.25 / t + 0.1 / (t - 0.3); };
  auto r = [](cplx t) { return (1.5 + 0.2 * t) * (1.0 + 0.4 / t); };
  for (cplx d2 : {cplx{0.64, -0.2}, cplx{-1.3, 0.4}, cplx{0.0, 0.0}}) {
    KhrapkovKernel k = forward_khrapkov(r, [&](cplx t) { return sp(t) + sm(t); }, d2);
    if (std::abs(d2) == 0.0) {
      k.k0 = fn(r);
      k.k1 = fn([&](cplx t) { return r(t) * (sp(t) + sm(t)); });
    }
    auto cf = factor_khrapkov(k);
    CAPTURE(d2);
    CHECK(dist(cf.theta_plus, fn(sp)) < 1e-12);
    CHECK(dist(cf.theta_minus, fn(sm)) < 1e-12);
    CHECK(cf.factorization.residual_inf < 1e-10);
    CHECK(cf.commutator < 1e-12);
  }
}

TEST_CASE("Khrapkov random admissible kernels") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto g0 = fixtures::random_rational(rng, 2), g1 = fixtures::random_rational(rng, 2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    cplx d2{u(rng), u(rng)};
    KhrapkovKernel k{fn([&](cplx t) { return 3.0 + 0.2 * g0(t) / (1.0 + std::abs(g0(1.0))); }),
                     fn([&](cplx t) { return 0.3 * g1(t) / (1.0 + std::abs(g1(1.0))); }), jmat(d2), d2};
    auto cf = factor_khrapkov(k);
    CHECK(cf.factorization.residual_inf < 1e-8);
    CHECK(cf.commutator < 1e-9);
    CHECK(cf.factorization.analyticity_defect < 1e-9);
  }
}

TEST_CASE("Jones n = 2 agrees with Khrapkov") {
  const cplx d2{0.8, 0.3};
  KhrapkovKernel k = forward_khrapkov([](cplx t) { return (2.0 + 0.3 * t) / (1.0 - 0.2 / t); },
                                      [](cplx t) { return 0.2 * t - 0.3 / (t - 0.5) + 0.1 * t * t; }, d2);
  cplx D = std::sqrt(d2);
  JonesKernel jk{{k.k1, (1.0 / (D * D)) * k.k0}, k.J, D};
  auto a = factor_khrapkov(k).factorization, b = factor_jones(jk).factorization;
  CHECK(a.partial_indices == b.partial_indices);
  CHECK(sup_distance(a.plus, b.plus, 512) < 1e-8);
  CHECK(sup_distance(a.minus, b.minus, 512) < 1e-8);
}

TEST_CASE("Jones scalar reduction") {
  auto c = [](cplx t) { return (1.0 + 0.5 * t) * (1.0 - 0.25 / t) / (1.0 - 0.1 * t); };
  CMat E(3, 3);
  const cplx q = 1.2;
  E << 0.0, 0.0, q * q * q, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  JonesKernel jk{{fn([](cplx) { return 0.0; }), fn([](cplx) { return 0.0; }), (1.0 / (q * q * q)) * fn(c)}, E, q};
  auto f = factor_jones(jk).factorization;
  auto s = factor_scalar(fn(c));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(dist(f.plus(i, j), i == j ? s.X_plus : 0.0 * s.X_plus) < 1e-12);
      CHECK(dist(f.minus(i, j), i == j ? s.X_minus : 0.0 * s.X_minus) < 1e-12);
    }
}

TEST_CASE("Jones n = 3 companion root") {
  std::mt19937 rng(17);
  const cplx q{0.9, 0.4};
  CMat E(3, 3);
  E << 0.0, 0.0, q * q * q, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    auto g1 = fixtures::random_rational(rng, 2), g2 = fixtures::random_rational(rng, 2);
    auto n1 = std::abs(g1(1.0)) + 1.0, n2 = std::abs(g2(1.0)) + 1.0;
    JonesKernel jk{{fn([&](cplx t) { return 0.2 * g1(t) / n1; }), fn([&](cplx t) { return 0.1 * g2(t) / n2; }),
                    fn([&](cplx t) { return (2.0 + 0.3 * t + 0.2 / t) / (q * q * q); })},
                   E, q};
    auto cf = factor_jones(jk);
    CHECK(cf.factorization.residual_inf < 1e-8);
    CHECK(cf.commutator < 1e-9);
    CHECK(cf.factorization.analyticity_defect < 1e-9);
  }
}

TEST_CASE("functional commutativity") {
  CMat N(2, 2);
  N << 0.0, 1.0, 0.0, 0.0;
  auto a = MatrixFunction::on_grid([&](cplx t) { return CMat((1.0 + t) * CMat::Identity(2, 2) + (t * t - 1.0 / t) * N); }, 2, 2, 64);
  auto b = MatrixFunction::on_grid([](cplx t) { CMat m(2, 2); m << 1.0, t, 0.0, 1.0; return m; }, 2, 2, 64);
  auto c = MatrixFunction::on_grid([](cplx t) { CMat m(2, 2); m << 1.0, t, t * t, 1.0; return m; }, 2, 2, 64);
  auto ca = is_functionally_commutative(a), cb = is_functionally_commutative(b), cc = is_functionally_commutative(c);
  CHECK(ca.commutative);
  CHECK(ca.pairs == 496);
  CHECK(cb.commutative);
  REQUIRE_FALSE(cc.commutative);
  REQUIRE(cc.witness.has_value());
  auto [t, tau] = *cc.witness;
  CMat A(2, 2), B(2, 2);
  A << 1.0, t, t * t, 1.0;
  B << 1.0, tau, tau * tau, 1.0;
  CHECK((A * B - B * A).norm() > 1e-3);
  CHECK_THROWS_AS(factor_funcomm(c), Error);
}

TEST_CASE("factor_funcomm") {
  CMat N(2, 2);
  N << 0.0, 1.0, 0.0, 0.0;
  SUBCASE("nilpotent exponential") {
    auto pp = [](cplx t) { return 0.5 + 0.3 * t - 0.2 * t * t; };
    auto pm = [](cplx t) { return 0.4 / t + 0.1 / (t * t); };
    auto G = MatrixFunction::on_grid([&](cplx t) { return CMat(CMat::Identity(2, 2) + (pp(t) + pm(t)) * N); }, 2, 2, 64);
    auto cf = factor_funcomm(G);
    auto ex = [&](auto phi) {
      return MatrixFunction::on_grid([&](cplx t) { return CMat(CMat::Identity(2, 2) + phi(t) * N); }, 2, 2, 64);
    };
    CHECK(sup_distance(cf.factorization.plus, ex(pp), 128) < 1e-12);
    CHECK(sup_distance(cf.factorization.minus, ex(pm), 128) < 1e-12);
    CHECK(cf.commutator < 1e-12);
  }
  SUBCASE("scalar times identity") {
    auto g = [](cplx t) { return (3.0 + t) * (1.0 + 0.5 / t); };
    auto G = MatrixFunction::on_grid([&](cplx t) { return CMat(g(t) * CMat::Identity(2, 2)); }, 2, 2, 128);
    auto cf = factor_funcomm(G);
    auto s = factor_scalar(fn(g, 128));
    CHECK(dist(cf.factorization.plus(0, 0), s.X_plus) < 1e-12);
    CHECK(dist(cf.factorization.minus(1, 1), s.X_minus) < 1e-12);
  }
  SUBCASE("diagonal with nonzero indices") {
    auto G = MatrixFunction::on_grid([](cplx t) {
      CMat m = CMat::Zero(2, 2);
      m(0, 0) = (t - 0.5) * (1.0 + 0.2 * t);
      m(1, 1) = 1.0 / (t - 0.3) + 2.0;
      return m;
    }, 2, 2, 128);
    auto cf = factor_funcomm(G);
    CHECK(cf.factorization.partial_indices == std::vector<int>{1, 0});
    CHECK(cf.factorization.residual_inf < 1e-10);
    CHECK(cf.factorization.analyticity_defect < 1e-10);
  }
  SUBCASE("diagonal with indices 0, 0") {
    auto g1 = [](cplx t) { return 2.0 + 0.5 * t + 0.3 / t; };
    auto g2 = [](cplx t) { return (1.0 - 0.4 / t) / (1.0 - 0.2 * t); };
    auto G = MatrixFunction::on_grid([&](cplx t) {
      CMat m = CMat::Zero(2, 2);
      m(0, 0) = g1(t), m(1, 1) = g2(t);
      return m;
    }, 2, 2, 128);
    auto cf = factor_funcomm(G);
    CHECK(cf.factorization.partial_indices == std::vector<int>{0, 0});
    CHECK(dist(cf.factorization.plus(0, 0), factor_scalar(fn(g1, 128)).X_plus) < 1e-12);
    CHECK(dist(cf.factorization.minus(1, 1), factor_scalar(fn(g2, 128)).X_minus) < 1e-12);
  }
}

}  // TEST_SUITE
