#include <doctest.h>

#include <cmath>
#include <random>

#include "hua/errors.hpp"
#include "hua/kernels.hpp"
#include "hua/transforms.hpp"
#include "support.hpp"

using namespace hua;
using namespace hua::testing;

namespace {

/// (1/σ)∫_S |1 − ⟨z,ζ⟩|^{−2c} dσ(ζ) = Σ_k ((c)_k)² / (k! (n)_k) |z|^{2k}.
double sphere_power_series(double c, int n, double x, double tol = 1e-17) {
  long double term = 1.0L, sum = 1.0L;
  for (int k = 0; k < 50'000'000; ++k) {
    term *= (c + k) * (c + k) / ((k + 1.0L) * (n + k)) * x;
    sum += term;
    if (term < tol * sum) break;
  }
  return static_cast<double>(sum);
}

/// ∫_B B(z,ζ) dV(z) = Σ_k ((n+1)_k)²/(k!(n)_k) |ζ|^{2k} · n·Beta(n+k, n+2).
double dual_mass_series(int n, double s2) {
  const double c = n + 1.0;
  long double coef = 1.0L, sum = 0.0L;
  for (int k = 0; k < 100'000; ++k) {
    const long double beta = std::exp(std::lgamma(n + k) + std::lgamma(n + 2.0) - std::lgamma(2.0 * n + k + 2.0));
    const long double term = coef * n * beta;
    sum += term;
    if (k > 10 && term < 1e-18L * sum) break;
    coef *= (c + k) * (c + k) / ((k + 1.0L) * (n + k)) * s2;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("Berezin transform examples") {
  const auto ball = DomainSpec::ball(2);
  const auto q = QuadratureSpec::ball2_defaults();
  const ComplexVector z{{0.2, 0.1}, {0.0, -0.3}};

  CHECK(std::abs(berezin_transform(TestFunction::constant(2, 1.0), z, ball, q).value - 1.0) <= 1e-12);
  const auto f = TestFunction::parse("z1^2*z2", 2);
  CHECK(std::abs(berezin_transform(f, z, ball, q).value - f(z)) <= 1e-8);
  const auto re = TestFunction::parse("0.5*z1 + 0.5*w1", 2);
  CHECK(std::abs(berezin_transform(re, z, ball, q).value - z[0].real()) <= 1e-8);

  const auto disc_f = TestFunction::parse("z1^3 + 2i*z1", 1);
  const ComplexVector w{{0.4, -0.2}};
  CHECK(std::abs(berezin_transform(disc_f, w, DomainSpec::disc(), QuadratureSpec::disc_defaults()).value - disc_f(w)) <=
        1e-10);
  CHECK_THROWS_AS(berezin_transform(f, ComplexVector{1.0, 0.0}, ball, q), DomainError);
  CHECK_THROWS_AS(berezin_transform(disc_f, z, ball, q), DimensionMismatch);
}

TEST_CASE("reproduction of random holomorphic polynomials") {
  std::mt19937_64 rng(31);
  const auto q = QuadratureSpec::ball2_defaults();
  for (int i = 0; i < 10; ++i) {
    const auto f = random_holomorphic(rng, 6, 5);
    const auto z = ball_point(rng, 2, 0.6);
    CHECK(std::abs(berezin_transform(f, z, DomainSpec::ball(2), q).value - f(z)) <= 1e-8);
    CHECK(std::abs(poisson_szego_integral(f, z, DomainSpec::ball(2), q).value - f(z)) <= 1e-10);
  }
}

TEST_CASE("Möbius form") {
  const auto q = QuadratureSpec::ball2_defaults();
  CHECK(std::abs(berezin_transform_mobius_form(TestFunction::constant(2, 1.0), ComplexVector{0.5, 0.1}, q).value - 1.0) <=
        1e-12);
  // at z = 0 it is the volume average
  const auto f = TestFunction::parse("z1*w1", 2);
  CHECK(berezin_transform_mobius_form(f, ComplexVector(2), q).value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  std::mt19937_64 rng(32);
  for (int i = 0; i < 5; ++i) {
    const auto g = random_holomorphic(rng, 3, 3) * random_holomorphic(rng, 3, 3).conj();
    const auto z = ball_point(rng, 2, 0.6);
    const cplx a = berezin_transform(g, z, DomainSpec::ball(2), q).value;
    const cplx b = berezin_transform_mobius_form(g, z, q).value;
    CHECK(std::abs(a - b) <= 1e-6);
  }
}

TEST_CASE("escalation and precision flags near the sphere") {
  const auto q = QuadratureSpec::disc_defaults();
  const auto one = TestFunction::constant(1, 1.0);
  const auto mid = berezin_transform(one, ComplexVector{0.5}, DomainSpec::disc(), q);
  CHECK_FALSE(mid.escalated);
  const auto near = berezin_transform(one, ComplexVector{0.995}, DomainSpec::disc(), q);
  CHECK(near.escalated);
  CHECK_FALSE(near.precision_limited);
  const auto edge = berezin_transform(one, ComplexVector{0.9995}, DomainSpec::disc(), q);
  CHECK(edge.precision_limited);
}

TEST_CASE("error estimate by refinement") {
  TransformOptions opt;
  opt.estimate_error = true;
  const auto r = berezin_transform(TestFunction::parse("z1^2", 2), ComplexVector{0.3, 0.0}, DomainSpec::ball(2),
                                   QuadratureSpec::ball2_defaults(), opt);
  CHECK(r.error_estimate <= 1e-12);
  CHECK_FALSE(r.nonconvergent);
}

TEST_CASE("Poisson-Szegő integral examples") {
  const auto q = QuadratureSpec::ball2_defaults();
  CHECK(std::abs(poisson_szego_integral(TestFunction::constant(2, 1.0), ComplexVector{0.3, 0.2}, DomainSpec::ball(2), q)
                     .value -
                 1.0) <= 1e-12);
  const ComplexVector z{0.3, {0.0, 0.2}};
  CHECK(std::abs(poisson_szego_integral(TestFunction::coordinate(2, 0), z, DomainSpec::ball(2), q).value - 0.3) <= 1e-10);
  // classical harmonic extension of Re e^{it}
  const ComplexVector w{{0.5, -0.4}};
  const auto re = TestFunction::parse("0.5*z1 + 0.5*w1", 1);
  CHECK(std::abs(poisson_szego_integral(re, w, DomainSpec::disc(), QuadratureSpec::disc_defaults()).value - 0.5) <= 1e-12);
}

TEST_CASE("spherical means") {
  const auto q = QuadratureSpec::ball2_defaults();
  CHECK(spherical_mean(TestFunction::constant(2, 1.0), 0.5, 2, q).real() == doctest::Approx(2.0 * kPi * kPi));
  CHECK(std::abs(spherical_mean(TestFunction::parse("0.5*z1^2 + 0.5*w1^2", 2), 0.8, 2, q)) <= 1e-14);
  const auto f = TestFunction::parse("1 + 0.5*z1 + 0.5*w1", 2);
  CHECK(std::abs(spherical_mean(f, 0.7, 2, q) - 2.0 * kPi * kPi) <= 1e-10);
  CHECK_THROWS_AS(spherical_mean(f, 1.5, 2, q), DomainError);
}

TEST_CASE("maximal function") {
  const auto mc = QuadratureSpec::monte_carlo(4000, 5);
  const ComplexVector z{0.3, 0.1};
  const auto radii = default_maximal_radii(z);
  CHECK(radii.size() == 20);
  CHECK(radii.front() == doctest::Approx(std::sqrt(1.0 - z.norm2()) / 8.0));
  CHECK(radii.back() == doctest::Approx(std::sqrt(2.0)));
  CHECK(maximal_function(TestFunction::constant(2, 1.0), z, DomainSpec::ball(2), radii, mc).value ==
        doctest::Approx(1.0));
  CHECK(maximal_function(TestFunction::constant(2, cplx(0.0, -3.0)), z, DomainSpec::ball(2), radii, mc).value ==
        doctest::Approx(3.0));
  // at the centre the largest ball is Ω; the plain average of |ζ₁|² is 1/3
  const auto at0 = maximal_function(TestFunction::parse("z1*w1", 2), ComplexVector(2), DomainSpec::ball(2),
                                    default_maximal_radii(ComplexVector(2)), QuadratureSpec::monte_carlo(100'000, 6));
  CHECK(at0.value >= 1.0 / 3.0 - 0.01);
}

TEST_CASE("domination report") {
  const auto q = QuadratureSpec::ball2_defaults();
  const auto mc = QuadratureSpec::monte_carlo(4000, 7);
  std::vector<ComplexVector> pts;
  for (double t : {0.0, 0.5, 0.9}) pts.push_back(ComplexVector{t, 0.0});
  const auto one = domination_report({TestFunction::constant(2, 1.0)}, pts, DomainSpec::ball(2), q, mc);
  for (const auto& row : one.rows) CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-8));
  const auto re = domination_report({TestFunction::parse("0.5*z1 + 0.5*w1", 2)}, pts, DomainSpec::ball(2), q, mc);
  CHECK(std::isfinite(re.max_ratio));
  CHECK(re.max_ratio <= 100.0);
}

TEST_CASE("approach paths") {
  const auto e1 = ComplexVector::basis(2, 0), e2 = ComplexVector::basis(2, 1);
  const auto radial = ApproachPath::radial(e1, 4.0, 10);
  REQUIRE(radial.steps().size() == 10);
  CHECK(1.0 - radial.steps().back().norm() == doctest::Approx(std::ldexp(1.0, -10)));
  const auto tang = ApproachPath::tangential(e1, 4.0, e2, 0.5, 10);
  for (const auto& z : tang.steps()) CHECK(admissible_contains(e1, 4.0, z));
  CHECK_THROWS_AS(ApproachPath::tangential(e1, 4.0, ComplexVector{0.6, 0.8}, 0.5, 10), DomainError);

  const auto q = QuadratureSpec::ball2_defaults();
  for (const auto& row : boundary_approach(TestFunction::constant(2, 1.0), tang, q)) CHECK(row.deviation <= 1e-12);
  const auto rows = boundary_approach(TestFunction::parse("0.5*z1 + 0.5*w1", 2), radial, q);
  CHECK(rows.back().deviation <= 0.01);
  CHECK(rows.back().precision_limited);
}

TEST_CASE("dual mass against its series") {
  CHECK(dual_mass(ComplexVector{0.0}, DomainSpec::disc(), QuadratureSpec::disc_defaults()) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const auto q = QuadratureSpec::ball2_defaults();
  for (double s : {0.0, 0.3, 0.6}) {
    const double v = dual_mass(ComplexVector{s, 0.0}, DomainSpec::ball(2), q);
    CHECK(v == doctest::Approx(dual_mass_series(2, s * s)).epsilon(1e-9));
    CHECK(v <= 1.0);
  }
  CHECK(dual_mass_series(2, 0.0) == doctest::Approx(0.1));
  CHECK(dual_mass(ComplexVector{0.5}, DomainSpec::disc(), QuadratureSpec::disc_defaults()) ==
        doctest::Approx(dual_mass_series(1, 0.25)).epsilon(1e-9));
}

TEST_CASE("shell integral against the hypergeometric series") {
  const QuadratureSpec q = QuadratureSpec::ball2_defaults();
  CHECK(shell_integral(ComplexVector(2), 2, q).value == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
  const double sigma = 2.0 * kPi * kPi;
  for (double gap : {1e-1, 1e-2, 1e-3}) {
    const double t = 1.0 - gap, x = t * t;
    const auto est = shell_integral(ComplexVector{t, 0.0}, 2, q, ShellIntegrand::estimate);
    const double oracle = sigma * (1.0 - x) * sphere_power_series(1.5, 2, x);
    CHECK(std::abs(est.value - oracle) <= 1e-10 * oracle);
    CHECK_FALSE(est.precision_limited);
    // exponent 2n: Σ (k+1)x^k = 1/(1−x)²
    const auto con = shell_integral(ComplexVector{t, 0.0}, 2, q, ShellIntegrand::contrast);
    CHECK(con.value == doctest::Approx(sigma / (1.0 - x)).epsilon(1e-10));
  }
}

TEST_CASE("plurisubharmonicity probes") {
  const auto c0 = psh_probe(ComplexVector(2), ComplexVector{0.1, 0.2}, ComplexVector{0.6, 0.8}, 0.05);
  CHECK(c0.center == doctest::Approx(c0.mean).epsilon(1e-14));
  const auto d = psh_probe(ComplexVector{0.5}, ComplexVector{0.0}, ComplexVector{1.0}, 0.1);
  CHECK(d.center <= d.mean);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const auto z = ball_point(rng, 2, 0.9), z0 = ball_point(rng, 2, 0.9), v = sphere_point(rng, 2);
    const auto p = psh_probe(z, z0, v, 0.05);
    CHECK(p.center <= p.mean + 1e-10);
    const auto pd = psh_probe_diagonal(z0, v, 0.05);
    CHECK(pd.center <= pd.mean + 1e-10);
  }
  CHECK_THROWS_AS(psh_probe(ComplexVector(2), ComplexVector{0.99, 0.0}, ComplexVector{1.0, 0.0}, 0.05), DomainError);
}
