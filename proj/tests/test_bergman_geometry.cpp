#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "hua/automorphism.hpp"
#include "hua/bergman_geometry.hpp"
#include "hua/errors.hpp"
#include "hua/kernels.hpp"
#include "support.hpp"

using namespace hua;
using namespace hua::testing;

TEST_CASE("metric examples") {
  for (int n : {1, 2, 3}) {
    const ComplexVector o(static_cast<std::size_t>(n));
    CHECK((bergman_metric(o, n) - (n + 1.0) * Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-15);
    CHECK((inverse_metric(o, n) - Eigen::MatrixXcd::Identity(n, n) / (n + 1.0)).norm() < 1e-15);
  }
  const ComplexVector z{0.5, 0.0};
  Eigen::MatrixXcd expected(2, 2);
  expected << 1.0, 0.0, 0.0, 0.75;
  expected *= 3.0 / (0.75 * 0.75);
  CHECK((bergman_metric(z, 2) - expected).norm() < 1e-14);
  CHECK_THROWS_AS(bergman_metric(ComplexVector{1.0, 0.0}, 2), DomainError);
}

TEST_CASE("metric determinant examples") {
  CHECK(metric_determinant(ComplexVector(2), 2) == doctest::Approx(9.0));
  CHECK(metric_determinant(ComplexVector{0.5, 0.0}, 2) == doctest::Approx(64.0 / 3.0).epsilon(1e-14));
  CHECK(metric_determinant(ComplexVector(3), 3) == doctest::Approx(64.0));
  std::mt19937_64 rng(1);
  for (int n : {2, 3}) {
    const auto z = ball_point(rng, n, 1.0);
    const double numeric = bergman_metric(z, n).determinant().real();
    CHECK(std::abs(numeric - metric_determinant(z, n)) / numeric < 1e-12);
  }
}

TEST_CASE("metric properties at random points") {
  std::mt19937_64 rng(2);
  double inv = 0.0, det = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto z = ball_point(rng, 2, 1.0);
    const auto g = bergman_metric(z, 2);
    CHECK(is_hermitian(g));
    CHECK(is_positive_definite(g));
    inv = std::max(inv, (g * inverse_metric(z, 2) - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff());
    det = std::max(det, std::abs(metric_determinant(z, 2) * std::pow(1.0 - z.norm2(), 3) / 9.0 - 1.0));
  }
  CHECK(inv <= 1e-12);
  CHECK(det <= 1e-12);
}

TEST_CASE("predicates reject bad matrices") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 1.0;
  CHECK_FALSE(is_hermitian(m));
  m << 1.0, 2.0, 2.0, 1.0;
  CHECK(is_hermitian(m));
  CHECK_FALSE(is_positive_definite(m));
}

TEST_CASE("metric is the Hessian of log K(z,z)") {
  std::mt19937_64 rng(3);
  for (int n : {1, 2, 3}) {
    for (int i = 0; i < 20; ++i) {
      const auto z = ball_point(rng, n, 0.8);
      const Field logk = [n](CSpan w) { return cplx(log_bergman_diagonal(w, n)); };
      const auto h = wirtinger_hessian(logk, z);
      const auto g = bergman_metric(z, n);
      // H(k,j) = ∂²/∂z_k∂z̄_j = g_{kj}
      CHECK((h - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff() <= 1e-6);
    }
  }
}

TEST_CASE("Wirtinger derivatives of polynomials") {
  const auto f = TestFunction::parse("z1^2*w2 + 3*z2");
  const ComplexVector z{{0.3, -0.1}, {0.2, 0.4}};
  const Field F = [&](CSpan w) { return f(w); };
  const auto dz = wirtinger_dz(F, z), dzb = wirtinger_dzbar(F, z);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(dz(k) - f.dz(k)(z)) < 1e-12);
    CHECK(std::abs(dzb(k) - f.dzbar(k)(z)) < 1e-12);
  }
  CHECK_THROWS_AS(wirtinger_dz(F, z, {1.0}), DomainError);
}

TEST_CASE("divergence identities") {
  CHECK(divergence_residual(ComplexVector(2), 2).dzbar <= 1e-8);
  CHECK(divergence_residual(ComplexVector(2), 2).dz <= 1e-8);
  CHECK(divergence_residual(ComplexVector{0.4}, 1).dzbar <= 1e-8);
  std::mt19937_64 rng(4);
  double worst = 0.0, same = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto z = ball_point(rng, 2, 0.9);
    const auto r = divergence_residual(z, 2);
    worst = std::max({worst, r.dzbar, r.dz});
    same = std::max(same, r.dz_same_index);
  }
  CHECK(worst <= 1e-6);
  // the same-index contraction is not an identity
  CHECK(same > 1.0);
  CHECK_THROWS_AS(divergence_residual(ComplexVector{0.95, 0.0}, 2), DomainError);
}

TEST_CASE("invariant Laplacian on polynomials") {
  CHECK(std::abs(invariant_laplacian(TestFunction::parse("z1 + w1", 2), ComplexVector{0.3, 0.2})) == 0.0);
  const auto r2 = TestFunction::parse("z1*w1 + z2*w2", 2);
  CHECK(invariant_laplacian(r2, ComplexVector(2)).real() == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  // (4/(n+1))(1−|z|²)(n−|z|²) for |z|² in general
  const ComplexVector z{0.3, {0.0, 0.4}};
  const double s = z.norm2();
  CHECK(invariant_laplacian(r2, z).real() == doctest::Approx(4.0 / 3.0 * (1.0 - s) * (2.0 - s)).epsilon(1e-14));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_pluriharmonic(rng, 5, 6);
    CHECK(std::abs(invariant_laplacian(f, ball_point(rng, 2, 1.0))) <= 1e-13);
  }
}

TEST_CASE("symbolic and finite-difference Laplacians agree on polynomials") {
  std::mt19937_64 rng(6);
  const auto f = random_holomorphic(rng, 3, 4) * random_holomorphic(rng, 3, 4).conj();
  const auto z = ball_point(rng, 2, 0.7);
  const cplx sym = invariant_laplacian(f, z);
  const cplx fd = invariant_laplacian(Field([&](CSpan w) { return f(w); }), z);
  CHECK(std::abs(sym - fd) <= 1e-8 * std::max(1.0, std::abs(sym)));
}

TEST_CASE("the Laplacian annihilates P(·, ζ) for every boundary ζ") {
  std::mt19937_64 rng(7);
  const auto ball = DomainSpec::ball(2);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto zeta = sphere_point(rng, 2);
    const auto z = ball_point(rng, 2, 0.8);
    const Field P = [&](CSpan w) { return cplx(poisson_szego(ball, w, zeta)); };
    worst = std::max(worst, std::abs(invariant_laplacian(P, z)) / std::max(1.0, poisson_szego(ball, z, zeta)));
    // unitary reduction: P(z, ζ) = P(Uz, e₁) with Uζ = e₁
    const Automorphism U = Automorphism::unitary(unitary_to_e1(zeta));
    const double lhs = poisson_szego(ball, z, zeta), rhs = poisson_szego(ball, U(z), ComplexVector::basis(2, 0));
    CHECK(std::abs(lhs - rhs) <= 1e-13 * lhs);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("derivative table") {
  SUBCASE("values at the origin") {
    const auto t = hua_partials(ComplexVector(2), DiffMode::closed_form);
    CHECK(t.d2P_dz2_dzbar2.real() == doctest::Approx(-2.0));
    CHECK(t.dP_dzbar1.real() == doctest::Approx(2.0));
    CHECK(hua_body(ComplexVector(2)) == 1.0);
  }
  SUBCASE("closed form matches finite differences and the assembly vanishes") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
      const auto z = ball_point(rng, 2, 0.8);
      const auto a = hua_partials(z, DiffMode::closed_form);
      const auto b = hua_partials(z, DiffMode::finite_difference);
      const cplx ea[] = {a.dP_dzbar1, a.d2P_dzbar1_dz1, a.d2P_dzbar1_dz2, a.d2P_dz1_dzbar2, a.dP_dz2, a.d2P_dz2_dzbar2};
      const cplx eb[] = {b.dP_dzbar1, b.d2P_dzbar1_dz1, b.d2P_dzbar1_dz2, b.d2P_dz1_dzbar2, b.dP_dz2, b.d2P_dz2_dzbar2};
      double scale = 0.0;
      for (const cplx& e : ea) scale = std::max(scale, std::abs(e));
      for (int k = 0; k < 6; ++k) CHECK(std::abs(ea[k] - eb[k]) <= 1e-6 * std::max(1.0, scale));
      CHECK(std::abs(a.d2P_dz1_dzbar2 - std::conj(a.d2P_dzbar1_dz2)) <= 1e-14 * std::max(1.0, scale));
      CHECK(std::abs(assemble_laplacian(a, z)) <= 1e-6 * std::max(1.0, hua_body(z)));
    }
  }
  SUBCASE("the unconjugated dP/dz2 form is the conjugate of the true partial") {
    const ComplexVector z{{0.2, 0.1}, {0.3, -0.4}};
    const auto t = hua_partials(z, DiffMode::closed_form);
    CHECK(std::abs(dP_dz2_unconjugated(z) - std::conj(t.dP_dz2)) < 1e-14);
    CHECK(std::abs(dP_dz2_unconjugated(z) - t.dP_dz2) > 1e-3);
    const Field body = [](CSpan w) { return cplx(hua_body(w)); };
    CHECK(std::abs(wirtinger_dz(body, z)(1) - t.dP_dz2) < 1e-9);
  }
  CHECK_THROWS(hua_partials(ComplexVector{1.0, 0.0}, DiffMode::closed_form));
}
