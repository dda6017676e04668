#include "suites.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "hua/automorphism.hpp"
#include "hua/bergman_geometry.hpp"
#include "hua/geometry.hpp"
#include "hua/kernels.hpp"
#include "hua/quadrature.hpp"
#include "hua/test_function.hpp"
#include "hua/transforms.hpp"

namespace hua::detail {

namespace {

using Rng = std::mt19937_64;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string pt(CSpan z) { return ComplexVector(z).to_string(); }

ComplexVector gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> g;
  ComplexVector v(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < v.dim(); ++i) v[i] = cplx(g(rng), g(rng));
  return v;
}

ComplexVector sphere_point(Rng& rng, int n) {
  ComplexVector v = gaussian_vector(rng, n);
  return v * cplx(1.0 / v.norm());
}

/// Uniform in the ball of radius rmax.
ComplexVector ball_point(Rng& rng, int n, double rmax) {
  std::uniform_real_distribution<double> u;
  return sphere_point(rng, n) * cplx(rmax * std::pow(u(rng), 1.0 / (2.0 * n)));
}

/// Point at exactly radius r in a random direction.
ComplexVector point_at_radius(Rng& rng, int n, double r) { return sphere_point(rng, n) * cplx(r); }

Eigen::MatrixXcd random_unitary(Rng& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ();
}

/// A random polynomial: `terms` monomials with |α| ≤ degree (and |β| ≤ degree unless holomorphic).
TestFunction random_polynomial(Rng& rng, int n, int degree, int terms, bool holomorphic) {
  std::uniform_int_distribution<int> coord(0, n - 1), deg(0, degree);
  std::normal_distribution<double> g;
  TestFunction f(n);
  for (int t = 0; t < terms; ++t) {
    MultiIndex a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int k = deg(rng); k > 0; --k) ++a[static_cast<std::size_t>(coord(rng))];
    if (!holomorphic)
      for (int k = deg(rng); k > 0; --k) ++b[static_cast<std::size_t>(coord(rng))];
    f.add_term(a, b, cplx(g(rng), g(rng)));
  }
  return f;
}

/// Pluriharmonic polynomials used by the mean-value and fixed-point suites.
std::vector<TestFunction> pluriharmonic_family(int n) {
  std::vector<TestFunction> fam;
  if (n == 1) {
    for (const char* s : {"1", "1 + 0.5*z1 + 0.5*w1", "0.5*z1^2 + 0.5*w1^2", "(2-1i)*z1^3 + 3 + 0.25i*w1^5"})
      fam.push_back(TestFunction::parse(s, 1));
  } else {
    for (const char* s : {"1", "1 + 0.5*z1 + 0.5*w1", "0.5*z1^2 + 0.5*w1^2", "z1*z2 + (1+2i)*w2^3",
                          "(2-1i)*z1^3*z2 + 3 + 0.25i*w1*w2^2"})
      fam.push_back(TestFunction::parse(s, 2));
  }
  return fam;
}

double relative(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

DomainSpec domain_of(int n) { return domain_for(n); }

const char* rule_name(int n) { return n == 1 ? "disc" : "ball2"; }

// --- suites ---------------------------------------------------------------

void reproduce_szego(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int trials = ctx.config.count(ctx.name, "trials");
  const double tol = ctx.config.tolerance(ctx.name, "reproduction");
  for (int n : {1, 2}) {
    const QuadratureSpec q = ctx.config.rule(ctx.name, rule_name(n));
    const DomainSpec dom = domain_of(n);
    for (int t = 0; t < trials; ++t) {
      const TestFunction f = random_polynomial(rng, n, 6, 5, true);
      const ComplexVector z = ball_point(rng, n, 0.6);
      const auto r = poisson_szego_integral(f, z, dom, q);
      rec.check("holomorphic_n" + std::to_string(n), "f=" + f.to_string() + " z=" + pt(z), relative(r.value, f(z)), tol);
    }
  }
  {
    const TestFunction f = TestFunction::parse("z1", 2);
    const ComplexVector z{0.3, cplx(0.0, 0.2)};
    const auto r = poisson_szego_integral(f, z, DomainSpec::ball(2), ctx.config.rule(ctx.name, "ball2"));
    rec.check("zeta1_on_s3", "f=z1 z=" + pt(z), std::abs(r.value - 0.3), tol);
  }
  {
    const TestFunction f = TestFunction::parse("0.5*z1 + 0.5*w1", 1);
    const ComplexVector z{cplx(0.5, 0.3)};
    const auto r = poisson_szego_integral(f, z, DomainSpec::disc(), ctx.config.rule(ctx.name, "disc"));
    rec.check("harmonic_extension_disc", "f=Re z1 z=" + pt(z), std::abs(r.value - 0.5), tol);
  }
}

void reproduce_bergman(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int trials = ctx.config.count(ctx.name, "trials");
  const int degree = ctx.config.count(ctx.name, "max_degree");
  const double tol = ctx.config.tolerance(ctx.name, "reproduction");
  const QuadratureSpec qb = ctx.config.rule(ctx.name, "ball2");
  const DomainSpec ball = DomainSpec::ball(2);
  {
    const TestFunction f = TestFunction::parse("z1^2*z2", 2);
    const ComplexVector z{cplx(0.2, 0.1), cplx(0.0, -0.3)};
    rec.check("example_z1sq_z2", "f=z1^2*z2 z=" + pt(z), std::abs(berezin_transform(f, z, ball, qb).value - f(z)), tol);
  }
  for (int n : {1, 2}) {
    const QuadratureSpec q = ctx.config.rule(ctx.name, rule_name(n));
    for (int t = 0; t < trials; ++t) {
      const TestFunction f = random_polynomial(rng, n, degree, 4, true);
      const ComplexVector z = ball_point(rng, n, 0.6);
      rec.check("holomorphic_n" + std::to_string(n), "f=" + f.to_string() + " z=" + pt(z),
                relative(berezin_transform(f, z, domain_of(n), q).value, f(z)), tol);
    }
  }
  {
    const TestFunction f = TestFunction::parse("0.5*z1 + 0.5*w1", 2);
    const ComplexVector z = ball_point(rng, 2, 0.6);
    rec.check("pluriharmonic_re_z1", "f=Re z1 z=" + pt(z), std::abs(berezin_transform(f, z, ball, qb).value - f(z)),
              ctx.config.tolerance(ctx.name, "pluriharmonic"));
  }
  const double tol_m = ctx.config.tolerance(ctx.name, "mobius_agreement");
  for (int t = 0; t < trials; ++t) {
    const TestFunction f = random_polynomial(rng, 2, 3, 3, false);
    const ComplexVector z = ball_point(rng, 2, 0.6);
    const cplx a = berezin_transform(f, z, ball, qb).value;
    const cplx b = berezin_transform_mobius_form(f, z, qb).value;
    rec.check("mobius_form_agreement", "f=" + f.to_string() + " z=" + pt(z), relative(a, b), tol_m);
  }
}

template <class Residual>
void transformation_law(Recorder& rec, const SuiteContext& ctx, Residual residual, bool bergman) {
  Rng rng(ctx.seed);
  const int pairs = ctx.config.count(ctx.name, "pairs");
  for (int n : {1, 2}) {
    const std::string tag = "_n" + std::to_string(n);
    double worst_m = 0.0, worst_u = 0.0, worst_i = 0.0, worst_c = 0.0;
    std::string at_m, at_u;
    for (int t = 0; t < pairs; ++t) {
      const ComplexVector a = ball_point(rng, n, 0.7);
      const ComplexVector z = ball_point(rng, n, 0.8), zeta = ball_point(rng, n, 0.8);
      const auto phi = Automorphism::moebius(a);
      const auto U = Automorphism::unitary(random_unitary(rng, n));
      const double rm = residual(phi, z, zeta), ru = residual(U, z, zeta);
      if (!(rm <= worst_m)) {
        worst_m = rm;
        at_m = "a=" + pt(a) + " z=" + pt(z) + " zeta=" + pt(zeta);
      }
      if (!(ru <= worst_u)) {
        worst_u = ru;
        at_u = "z=" + pt(z) + " zeta=" + pt(zeta);
      }
      worst_i = std::max(worst_i, residual(Automorphism::identity(static_cast<std::size_t>(n)), z, zeta));
      worst_c = std::max(worst_c, residual(Automorphism::composite({phi, U}), z, zeta));
    }
    rec.check("moebius" + tag, "max over " + std::to_string(pairs) + " pairs; worst " + at_m, worst_m,
              ctx.config.tolerance(ctx.name, "moebius"));
    rec.check("unitary" + tag, "max over " + std::to_string(pairs) + " pairs; worst " + at_u, worst_u,
              ctx.config.tolerance(ctx.name, "unitary"));
    rec.check("identity" + tag, "max over " + std::to_string(pairs) + " pairs", worst_i,
              ctx.config.tolerance(ctx.name, "identity"));
    rec.check("composite_law" + tag, "moebius then unitary, max over " + std::to_string(pairs) + " pairs", worst_c,
              ctx.config.tolerance(ctx.name, "moebius"));
  }
  if (!bergman) return;

  // Automorphism properties backing the law: involution, closure, the Möbius identity, |det J|².
  double inv = 0.0, clos = 0.0, ident = 0.0, jac = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const int n = 2;
    const ComplexVector a = ball_point(rng, n, 0.9), z = ball_point(rng, n, 0.9);
    const auto phi = Automorphism::moebius(a);
    const Eigen::MatrixXcd Um = random_unitary(rng, n);
    const auto U = Automorphism::unitary(Um);
    inv = std::max(inv, (phi(phi(z)) - z).norm());
    clos = std::max(clos, (Automorphism::composite({phi, U})(z) - U(phi(z))).norm());
    const double za = std::norm(1.0 - hermitian_dot(z, a));
    const double expect = (1.0 - a.norm2()) * (1.0 - z.norm2()) / za;
    ident = std::max(ident, std::abs(1.0 - phi(z).norm2() - expect) / expect);
    const double det2 = std::norm(complex_jacobian_det(phi, z));
    const double det_expect = std::pow((1.0 - a.norm2()) / za, n + 1);
    jac = std::max(jac, std::abs(det2 - det_expect) / det_expect);
  }
  const std::string over = "max over " + std::to_string(pairs) + " random (a,z), |a|,|z| ≤ 0.9";
  rec.check("involution", over, inv, ctx.config.tolerance(ctx.name, "involution"));
  rec.check("composite_closure", over, clos, ctx.config.tolerance(ctx.name, "composite"));
  rec.check("moebius_identity", over, ident, ctx.config.tolerance(ctx.name, "moebius_identity"));
  rec.check("jacobian_modulus", over, jac, ctx.config.tolerance(ctx.name, "jacobian"));
}

void law_bergman(Recorder& rec, const SuiteContext& ctx) {
  transformation_law(
      rec, ctx, [](const Automorphism& phi, CSpan z, CSpan zeta) { return bergman_law_residual(phi, z, zeta); }, true);
}

void law_berezin(Recorder& rec, const SuiteContext& ctx) {
  transformation_law(
      rec, ctx, [](const Automorphism& phi, CSpan z, CSpan zeta) { return berezin_law_residual(phi, z, zeta); }, false);
}

void injectivity_probe(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int points = ctx.config.count(ctx.name, "points");
  const QuadratureSpec q = ctx.config.rule(ctx.name, "ball2_light");
  std::vector<TestFunction> basis;
  for (const char* s : {"1", "z1", "z2", "w1", "w2", "z1*w1", "z2*w2", "z1*w2", "z1^2", "w1*w2"})
    basis.push_back(TestFunction::parse(s, 2));
  Eigen::MatrixXcd M(points, static_cast<Eigen::Index>(basis.size()));
  for (int i = 0; i < points; ++i) {
    const ComplexVector z = ball_point(rng, 2, 0.7);
    for (std::size_t j = 0; j < basis.size(); ++j)
      M(i, static_cast<Eigen::Index>(j)) = berezin_transform(basis[j], z, DomainSpec::ball(2), q).value;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  rec.check_min("gram_min_singular_value",
                std::to_string(points) + " points |z| ≤ 0.7, basis {1,z1,z2,w1,w2,z1w1,z2w2,z1w2,z1^2,w1w2}",
                sv[sv.size() - 1], ctx.config.tolerance(ctx.name, "min_singular_value"));
  rec.observe("gram_condition_number", "largest/smallest singular value", sv[0] / sv[sv.size() - 1]);
}

void normalization(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const double tol = ctx.config.tolerance(ctx.name, "mass");
  const double tol_s = ctx.config.tolerance(ctx.name, "szego_mass");
  for (int n : {1, 2}) {
    const QuadratureSpec q = ctx.config.rule(ctx.name, rule_name(n));
    const DomainSpec dom = domain_of(n);
    const TestFunction one = TestFunction::constant(n, 1.0);
    for (double r : {0.0, 0.3, 0.6}) {
      const ComplexVector z = point_at_radius(rng, n, r);
      const std::string in = "n=" + std::to_string(n) + " z=" + pt(z);
      rec.check("berezin_mass", in, std::abs(berezin_transform(one, z, dom, q).value - 1.0), tol);
      rec.check("poisson_szego_mass", in, std::abs(poisson_szego_integral(one, z, dom, q).value - 1.0), tol_s);
      if (n == 2) rec.check("mobius_form_mass", in, std::abs(berezin_transform_mobius_form(one, z, q).value - 1.0), tol);
    }
  }
}

void mass_bounds(Recorder& rec, const SuiteContext& ctx) {
  const double tol = ctx.config.tolerance(ctx.name, "dual_mass_excess");
  const QuadratureSpec qd = ctx.config.rule(ctx.name, "disc"), qb = ctx.config.rule(ctx.name, "ball2");
  for (double r : {0.0, 0.3, 0.6, 0.9}) {
    const ComplexVector zeta{r, 0.0};
    const double m = dual_mass(zeta, DomainSpec::ball(2), qb);
    rec.check("dual_mass_ball2", "zeta=" + pt(zeta) + " value=" + num(m), std::max(0.0, m - 1.0), tol);
  }
  const double m0 = dual_mass(ComplexVector{0.0}, DomainSpec::disc(), qd);
  rec.check("dual_mass_disc_center", "zeta=0 value=" + num(m0) + " expected 1/3", std::abs(m0 - 1.0 / 3.0),
            ctx.config.tolerance(ctx.name, "disc_center"));
  for (double r : {0.3, 0.6}) {
    const double m = dual_mass(ComplexVector{r}, DomainSpec::disc(), qd);
    rec.check("dual_mass_disc", "zeta=" + num(r) + " value=" + num(m), std::max(0.0, m - 1.0), tol);
  }
  rec.observe("dual_mass_disc_0.9", "zeta=0.9", dual_mass(ComplexVector{0.9}, DomainSpec::disc(), qd),
              "exceeds 1: on the disc the L1 norm of B(.,zeta) grows like log 1/(1-|zeta|)");
  // the other Schur ingredient: ∫ B(z,·) dV = 1 across the same sweep; the peak of B(z,·)
  // at |z| = 0.9 needs 256 nodes in the angle along z = (r, 0)
  const QuadratureSpec qw = ctx.config.rule(ctx.name, "ball2_wide");
  for (double r : {0.0, 0.3, 0.6, 0.9}) {
    const ComplexVector z{r, 0.0};
    const double m =
        berezin_transform(TestFunction::constant(2, 1.0), z, DomainSpec::ball(2), r > 0.6 ? qw : qb).value.real();
    rec.check("row_mass_ball2", "z=" + pt(z), std::abs(m - 1.0), ctx.config.tolerance(ctx.name, "row_mass"));
  }
}

void boundary_continuity(Recorder& rec, const SuiteContext& ctx) {
  const int steps = ctx.config.count(ctx.name, "steps");
  const double tol = ctx.config.tolerance(ctx.name, "final_deviation");
  const QuadratureSpec q = ctx.config.rule(ctx.name, "ball2");
  const double s = std::numbers::sqrt2 / 2.0;
  struct Case {
    const char* f;
    ComplexVector P;
  };
  const std::vector<Case> cases{{"z1*w1", ComplexVector{1.0, 0.0}},
                                {"z1*w1 + 0.5*z2*w2 + 0.5*z1", ComplexVector{cplx(s, 0.0), cplx(0.0, s)}}};
  for (const auto& c : cases) {
    const TestFunction f = TestFunction::parse(c.f, 2);
    const auto rows = boundary_approach(f, ApproachPath::radial(c.P, 2.0, steps), q);
    const std::string in = "f=" + f.to_string() + " P=" + pt(c.P);
    double final_dev = 0.0;
    for (const auto& r : rows)
      if (r.gap <= 1e-3) final_dev = std::max(final_dev, r.deviation);
    rec.check("radial_limit", in + " rows with 1-|z| ≤ 1e-3", final_dev, tol);
    rec.observe("precision_limited_rows", in,
                static_cast<double>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.precision_limited; })));
    // kernel decay away from P along the path
    const ComplexVector far = (c.P * cplx(-0.5));
    const double decay = poisson_bergman(DomainSpec::ball(2), rows.back().z, far);
    rec.check("kernel_decay_off_target", in + " zeta=" + pt(far) + " z=" + pt(rows.back().z), decay,
              ctx.config.tolerance(ctx.name, "kernel_decay"));
  }
}


void pseudometric(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int triples = ctx.config.count(ctx.name, "triples");
  double excess = 0.0;
  int violations = 0;
  const double slack = ctx.config.tolerance(ctx.name, "triangle_slack");
  for (int t = 0; t < triples; ++t) {
    const ComplexVector z = sphere_point(rng, 2), xi = sphere_point(rng, 2), zeta = sphere_point(rng, 2);
    const double e = rho(z, zeta) - (rho(z, xi) + rho(xi, zeta));
    excess = std::max(excess, e);
    if (e > slack) ++violations;
  }
  const std::string over = std::to_string(triples) + " random triples on S3";
  rec.check("sphere_triangle_excess", over, std::max(0.0, excess), slack);
  rec.observe("sphere_triangle_violations", over, violations);

  double quasi = 0.0;
  for (int t = 0; t < triples; ++t) {
    const ComplexVector z = ball_point(rng, 2, 1.0), xi = ball_point(rng, 2, 1.0), zeta = ball_point(rng, 2, 1.0);
    quasi = std::max(quasi, rho(z, zeta) / (rho(z, xi) + rho(xi, zeta)));
  }
  rec.check("interior_quasi_constant", std::to_string(triples) + " random interior triples", quasi,
            ctx.config.tolerance(ctx.name, "quasi_constant"), "empirical C in rho(z,zeta) <= C(rho(z,xi)+rho(xi,zeta))");

  // Doubling: radii r ≥ rho(z,z) on a dyadic grid.
  QuadratureSpec mc = ctx.config.rule(ctx.name, "quasi_ball_mc");
  double worst = 0.0;
  std::string worst_at;
  std::uint64_t seed = ctx.seed;
  for (double t : {0.0, 0.5, 0.9, 0.99, 0.999, 1.0}) {
    const ComplexVector z{t, 0.0};
    const double r0 = std::max(std::sqrt(1.0 - t * t), 1.0 / 16.0);
    for (double r = r0; 2.0 * r <= 1.5; r *= 2.0) {
      mc.seed = seed++;
      const double v1 = quasi_ball_volume(z, r, DomainSpec::ball(2), mc).value;
      mc.seed = seed++;
      const double v2 = quasi_ball_volume(z, 2.0 * r, DomainSpec::ball(2), mc).value;
      const double ratio = v1 > 0.0 ? v2 / v1 : std::numeric_limits<double>::infinity();
      if (!(ratio <= worst)) {
        worst = ratio;
        worst_at = "z=" + pt(z) + " r=" + num(r);
      }
    }
  }
  rec.check("doubling_ratio", "max V(2r)/V(r), |z| in {0,.5,.9,.99,.999,1}, r >= rho(z,z); worst " + worst_at, worst,
            ctx.config.tolerance(ctx.name, "doubling_ratio"));
}

void maximal_domination(Recorder& rec, const SuiteContext& ctx) {
  const int points = ctx.config.count(ctx.name, "points");
  const QuadratureSpec q = ctx.config.rule(ctx.name, "ball2_light");
  QuadratureSpec mc = ctx.config.rule(ctx.name, "maximal_mc");
  mc.seed = ctx.seed;
  std::vector<TestFunction> family;
  for (const char* s : {"1", "z1*w1", "z2*w2", "1 + 0.5*z1 + 0.5*w1", "0.5*z1 + 0.5*w1"})
    family.push_back(TestFunction::parse(s, 2));
  std::vector<ComplexVector> sample;
  for (int i = 0; i < points; ++i) sample.push_back(ComplexVector{0.99 * i / (points - 1), 0.0});
  const DominationSummary s = domination_report(family, sample, DomainSpec::ball(2), q, mc);

  double const_dev = 0.0, nonneg_max = 0.0;
  std::vector<double> per(family.size(), 0.0);
  for (const auto& row : s.rows) {
    if (row.skipped) continue;
    per[row.function] = std::max(per[row.function], row.ratio);
    if (row.function == 0) const_dev = std::max(const_dev, std::abs(row.ratio - 1.0));
    if (row.function < 4) nonneg_max = std::max(nonneg_max, row.ratio);
  }
  const std::string over = std::to_string(points) + " radial points t*e1, t in [0,0.99]";
  rec.check("constant_ratio", "f=1, " + over, const_dev, ctx.config.tolerance(ctx.name, "constant_ratio"));
  for (std::size_t j = 0; j < family.size(); ++j)
    rec.observe("max_ratio", "f=" + family[j].to_string() + ", " + over, per[j]);
  const double tol = ctx.config.tolerance(ctx.name, "max_ratio");
  rec.check("empirical_constant", "all functions, " + over, s.max_ratio, tol);
  rec.check("nonnegative_family_constant", "f in {1,|z1|^2,|z2|^2,1+Re z1}, " + over, nonneg_max, tol);
  rec.observe("skipped_points", over, s.skipped);
}

void admissible_limits(Recorder& rec, const SuiteContext& ctx) {
  const int steps = ctx.config.count(ctx.name, "steps");
  const double alpha = ctx.config.number(ctx.name, "alpha");
  const double ratio = ctx.config.number(ctx.name, "ratio");
  const int from = ctx.config.count(ctx.name, "monotone_from");
  const double tol = ctx.config.tolerance(ctx.name, "final_deviation");
  const QuadratureSpec q = ctx.config.rule(ctx.name, "ball2");
  const TestFunction f = TestFunction::parse("0.5*z1 + 0.5*w1", 2);
  const ComplexVector P{1.0, 0.0}, v{0.0, 1.0};
  const std::vector<std::pair<std::string, ApproachPath>> paths{
      {"radial", ApproachPath::radial(P, alpha, steps)},
      {"tangential", ApproachPath::tangential(P, alpha, v, ratio, steps)}};
  for (const auto& [label, path] : paths) {
    const auto rows = boundary_approach(f, path, q);
    const std::string in = "f=Re z1 P=e1 alpha=" + num(alpha) + " path=" + label;
    double final_dev = 0.0;
    bool monotone = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].gap <= 1e-3) final_dev = std::max(final_dev, rows[k].deviation);
      if (static_cast<int>(k) + 1 > from && k > 0 && rows[k].deviation > rows[k - 1].deviation) monotone = false;
      if (!admissible_contains(P, alpha, rows[k].z)) monotone = false;
    }
    rec.check("final_deviation_" + label, in + " rows with 1-|z| ≤ 1e-3", final_dev, tol);
    rec.require("monotone_beyond_k" + std::to_string(from) + "_" + label, in, monotone,
                "deviations non-increasing and every z_k admissible");
    for (const auto& r : rows)
      rec.observe("deviation_" + label, "z=" + pt(r.z) + " gap=" + num(r.gap) + (r.escalated ? " escalated" : "") +
                                            (r.precision_limited ? " precision_limited" : ""),
                  r.deviation);
  }
}

void metric_identities(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int points = ctx.config.count(ctx.name, "points");
  const double scale = ctx.config.fault("metric_prefactor_scale");
  auto metric = [scale](CSpan z, int n) { return HermitianMatrix(scale * bergman_metric(z, n)); };
  for (int n : {1, 2, 3}) {
    double inv = 0.0, det = 0.0, hess = 0.0;
    for (int t = 0; t < points; ++t) {
      const ComplexVector z = ball_point(rng, n, 0.95);
      const HermitianMatrix g = metric(z, n);
      const auto I = Eigen::MatrixXcd::Identity(n, n);
      inv = std::max(inv, (g * inverse_metric(z, n) - I).cwiseAbs().maxCoeff());
      const double expect = metric_determinant(z, n);
      det = std::max(det, std::abs(g.determinant() - expect) / expect);
      if (n <= 2 && z.norm() <= 0.9) {
        const Field logk = [n](CSpan w) { return cplx(log_bergman_diagonal(w, n)); };
        const Eigen::MatrixXcd H = wirtinger_hessian(logk, z);
        hess = std::max(hess, (H - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff());
      }
    }
    const std::string over = "n=" + std::to_string(n) + ", " + std::to_string(points) + " random z, |z| ≤ 0.95";
    rec.check("metric_times_inverse", over, inv, ctx.config.tolerance(ctx.name, "inverse"));
    rec.check("determinant_closed_form", over + ", (n+1)^n/(1-|z|^2)^(n+1) vs numeric det", det,
              ctx.config.tolerance(ctx.name, "determinant"));
    if (n <= 2)
      rec.check("hessian_of_log_kernel", over + " (FD points |z| ≤ 0.9)", hess, ctx.config.tolerance(ctx.name, "hessian"));
  }
  {
    const ComplexVector z{0.5, 0.0};
    Eigen::MatrixXcd expect(2, 2);
    expect << 1.0, 0.0, 0.0, 0.75;
    expect *= 3.0 / (0.75 * 0.75);
    rec.check("displayed_matrix_at_half_e1", "z=(0.5,0)", (metric(z, 2) - expect).cwiseAbs().maxCoeff(),
              ctx.config.tolerance(ctx.name, "inverse"));
    rec.check("determinant_n2_at_half_e1", "z=(0.5,0), 9/(0.75)^3 = 64/3",
              std::abs(metric(z, 2).determinant() - 64.0 / 3.0) / (64.0 / 3.0), ctx.config.tolerance(ctx.name, "determinant"));
    rec.check("determinant_n3_at_center", "z=0 n=3, 4^3",
              std::abs(metric(ComplexVector(3), 3).determinant() - 64.0) / 64.0, ctx.config.tolerance(ctx.name, "determinant"));
  }
  const int def_points = ctx.config.count(ctx.name, "definiteness_points");
  bool herm = true, pd = true;
  for (int t = 0; t < def_points; ++t) {
    const ComplexVector z = ball_point(rng, 2, 0.999);
    const HermitianMatrix g = metric(z, 2);
    herm = herm && is_hermitian(g, ctx.config.tolerance(ctx.name, "hermitian"));
    pd = pd && is_positive_definite(g);
  }
  const std::string over = std::to_string(def_points) + " random interior z, n=2";
  rec.require("hermitian", over, herm);
  rec.require("positive_definite", over, pd);
}

void divergence(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int points = ctx.config.count(ctx.name, "points");
  {
    const auto r = divergence_residual(ComplexVector(2), 2);
    rec.check("center_dzbar", "z=0 n=2", r.dzbar, ctx.config.tolerance(ctx.name, "center"));
    rec.check("center_dz", "z=0 n=2", r.dz, ctx.config.tolerance(ctx.name, "center"));
  }
  double dzbar = 0.0, dz = 0.0, same = 0.0, disc = 0.0;
  for (int t = 0; t < points; ++t) {
    const auto r = divergence_residual(ball_point(rng, 2, 0.9), 2);
    dzbar = std::max(dzbar, r.dzbar);
    dz = std::max(dz, r.dz);
    same = std::max(same, r.dz_same_index);
    const auto r1 = divergence_residual(ball_point(rng, 1, 0.9), 1);
    disc = std::max({disc, r1.dzbar, r1.dz});
  }
  const std::string over = std::to_string(points) + " random z, |z| ≤ 0.9";
  rec.check("random_dzbar", "sum_j d/dzbar_j (g g^jk), n=2, " + over, dzbar, ctx.config.tolerance(ctx.name, "random"));
  rec.check("random_dz", "sum_k d/dz_k (g g^jk), n=2, " + over, dz, ctx.config.tolerance(ctx.name, "random"));
  rec.check("disc", "n=1, " + over, disc, ctx.config.tolerance(ctx.name, "disc"));
  rec.observe("same_index_dz", "sum_j d/dz_j (g g^jk), n=2, " + over, same,
              "does not vanish; the conjugate identity contracts d/dz_k against the second index");
}

void annihilation(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int points = ctx.config.count(ctx.name, "points");
  const double c2 = szego_constant(2);
  const double tol_l = ctx.config.tolerance(ctx.name, "laplacian");
  const double tol_e = ctx.config.tolerance(ctx.name, "entrywise");
  double cf_lap = 0.0, fd_lap = 0.0, entry = 0.0, unconj = 0.0, unconj_conj = 0.0, rotated = 0.0, rotated_cf = 0.0;
  const Field P = [c2](CSpan w) { return cplx(c2 * hua_body(w)); };
  for (int t = 0; t < points; ++t) {
    const ComplexVector z = ball_point(rng, 2, 0.8);
    const DerivativeTable a = hua_partials(z, DiffMode::closed_form);
    const DerivativeTable b = hua_partials(z, DiffMode::finite_difference);
    const cplx A[6]{a.dP_dzbar1, a.d2P_dzbar1_dz1, a.d2P_dzbar1_dz2, a.d2P_dz1_dzbar2, a.dP_dz2, a.d2P_dz2_dzbar2};
    const cplx B[6]{b.dP_dzbar1, b.d2P_dzbar1_dz1, b.d2P_dzbar1_dz2, b.d2P_dz1_dzbar2, b.dP_dz2, b.d2P_dz2_dzbar2};
    for (int i = 0; i < 6; ++i) entry = std::max(entry, relative(B[i], A[i]));
    const cplx pz2 = dP_dz2_unconjugated(z);
    unconj = std::max(unconj, relative(pz2, b.dP_dz2));
    unconj_conj = std::max(unconj_conj, relative(pz2, std::conj(b.dP_dz2)));
    cf_lap = std::max(cf_lap, std::abs(c2 * assemble_laplacian(a, z)));
    fd_lap = std::max(fd_lap, std::abs(invariant_laplacian(P, z)));

    // arbitrary boundary point through the unitary reduction U zeta = e1
    const ComplexVector zeta = sphere_point(rng, 2);
    const Field Pz = [&zeta](CSpan w) { return cplx(poisson_szego(DomainSpec::ball(2), w, zeta)); };
    const double pval = poisson_szego(DomainSpec::ball(2), z, zeta);
    rotated = std::max(rotated, std::abs(invariant_laplacian(Pz, z)) / std::max(1.0, pval));
    const ComplexVector Uz = from_eigen(unitary_to_e1(zeta) * to_eigen(z));
    rotated_cf = std::max(rotated_cf, std::abs(c2 * assemble_laplacian(hua_partials(Uz, DiffMode::closed_form), Uz)) /
                                          std::max(1.0, pval));
  }
  const std::string over = std::to_string(points) + " random z, |z| ≤ 0.8, zeta=e1, P normalized";
  rec.check("laplacian_table_assembly", over, cf_lap, tol_l);
  rec.check("laplacian_finite_difference", over, fd_lap, tol_l);
  rec.check("table_entrywise_agreement", over + ", relative to max(1,|entry|)", entry, tol_e);
  rec.check("laplacian_any_boundary_point", over + ", random zeta, FD", rotated, tol_l);
  rec.check("laplacian_unitary_reduction", over + ", random zeta, table at Uz", rotated_cf, tol_l);
  rec.observe("dP_dz2_unconjugated_mismatch", over, unconj,
              "the form with z2 in place of conj(z2) differs from dP/dz2; the table uses -2 conj(z2)(1-|z|^2)/|1-z1|^4");
  rec.check("dP_dz2_unconjugated_is_conjugate", over + ", unconjugated form vs conj(dP/dz2)", unconj_conj, tol_e);

  const double tol_c = ctx.config.tolerance(ctx.name, "table_center");
  const DerivativeTable at0 = hua_partials(ComplexVector(2), DiffMode::closed_form);
  rec.check("table_center_d2P_dz2_dzbar2", "z=0, expected -2", std::abs(at0.d2P_dz2_dzbar2 + 2.0), tol_c);
  rec.check("table_center_dP_dzbar1", "z=0, expected 2", std::abs(at0.dP_dzbar1 - 2.0), tol_c);

  const double tol_s = ctx.config.tolerance(ctx.name, "symbolic");
  double symbolic = 0.0;
  for (const auto& f : pluriharmonic_family(2))
    for (int t = 0; t < 20; ++t) symbolic = std::max(symbolic, std::abs(invariant_laplacian(f, ball_point(rng, 2, 0.95))));
  rec.check("pluriharmonic_symbolic", "pluriharmonic family, 20 random z each", symbolic, tol_s);
  const TestFunction r2 = TestFunction::parse("z1*w1 + z2*w2", 2);
  rec.check("norm_squared_at_center", "f=|z|^2 z=0, expected 8/3", std::abs(invariant_laplacian(r2, ComplexVector(2)) - 8.0 / 3.0),
            tol_s);
}

void shell_estimate(Recorder& rec, const SuiteContext& ctx) {
  const QuadratureSpec q = ctx.config.rule(ctx.name, "zonal");
  const double sigma = sphere_area(2);
  const ShellResult c0 = shell_integral(ComplexVector(2), 2, q);
  rec.check("center", "z=0 n=2, expected 2 pi^2", std::abs(c0.value - sigma) / sigma, ctx.config.tolerance(ctx.name, "center"));
  std::vector<double> est, con;
  double refine = 0.0;
  for (double gap : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const ComplexVector z{1.0 - gap, 0.0};
    const ShellResult e = shell_integral(z, 2, q, ShellIntegrand::estimate);
    const ShellResult c = shell_integral(z, 2, q, ShellIntegrand::contrast);
    est.push_back(e.value);
    con.push_back(c.value);
    refine = std::max({refine, e.refinement_delta, c.refinement_delta});
    rec.observe("shell_value", "1-|z|=" + num(gap), e.value);
    rec.observe("contrast_value", "1-|z|=" + num(gap), c.value);
  }
  const auto [lo, hi] = std::minmax_element(est.begin(), est.end());
  rec.check("uniform_bound_spread", "max/min over 1-|z| in {1e-1,1e-2,1e-3,1e-4}", *hi / *lo,
            ctx.config.tolerance(ctx.name, "spread_factor"));
  rec.check_min("contrast_growth", "exponent 2n, last/first over the same sweep", con.back() / con.front(),
                ctx.config.tolerance(ctx.name, "contrast_growth"));
  rec.check("quadrature_refinement", "relative change with panel order +4", refine,
            ctx.config.tolerance(ctx.name, "refinement"));
}

void mean_value(Recorder& rec, const SuiteContext& ctx) {
  const double tol = ctx.config.tolerance(ctx.name, "mean");
  for (int n : {1, 2}) {
    const QuadratureSpec q = ctx.config.rule(ctx.name, rule_name(n));
    const double sigma = sphere_area(n);
    for (const auto& f : pluriharmonic_family(n))
      for (double r : {0.3, 0.7, 0.95}) {
        const cplx m = spherical_mean(f, r, n, q);
        const cplx f0 = f(ComplexVector(static_cast<std::size_t>(n)));
        rec.check("pluriharmonic_mean", "n=" + std::to_string(n) + " f=" + f.to_string() + " r=" + num(r),
                  std::abs(m - sigma * f0) / sigma, tol);
      }
  }
}

void fixed_point(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int points = ctx.config.count(ctx.name, "points");
  const double tol = ctx.config.tolerance(ctx.name, "fixed_point");
  for (int n : {1, 2}) {
    const QuadratureSpec q = ctx.config.rule(ctx.name, rule_name(n));
    for (const auto& f : pluriharmonic_family(n))
      for (int t = 0; t < points; ++t) {
        const ComplexVector z = ball_point(rng, n, 0.6);
        rec.check("berezin_fixed_point", "n=" + std::to_string(n) + " f=" + f.to_string() + " z=" + pt(z),
                  relative(berezin_transform(f, z, domain_of(n), q).value, f(z)), tol);
      }
  }
}

void psh(Recorder& rec, const SuiteContext& ctx) {
  Rng rng(ctx.seed);
  const int probes = ctx.config.count(ctx.name, "probes");
  const double r = ctx.config.number(ctx.name, "radius");
  const double tol = ctx.config.tolerance(ctx.name, "sub_mean");
  {
    const PshProbe p = psh_probe(ComplexVector(2), ComplexVector{0.3, 0.2}, ComplexVector{1.0, 0.0}, r);
    rec.check("center_constant", "z=0: B(0,.) constant", std::abs(p.center - p.mean) / p.center, tol);
    const PshProbe d = psh_probe(ComplexVector{0.5}, ComplexVector{0.0}, ComplexVector{1.0}, 0.1);
    rec.check("disc_example", "disc z=0.5 zeta0=0 r=0.1", std::max(0.0, d.center - d.mean), tol);
  }
  double slot = 0.0, diag = 0.0;
  int slot_viol = 0, diag_viol = 0;
  for (int t = 0; t < probes; ++t) {
    const ComplexVector z = ball_point(rng, 2, 0.9), zeta0 = ball_point(rng, 2, 0.9), v = sphere_point(rng, 2);
    const PshProbe p = psh_probe(z, zeta0, v, r);
    const double e = (p.center - p.mean) / std::max(1.0, p.center);
    slot = std::max(slot, e);
    if (e > tol) ++slot_viol;
    const PshProbe d = psh_probe_diagonal(zeta0, v, r);
    const double ed = (d.center - d.mean) / std::max(1.0, d.center);
    diag = std::max(diag, ed);
    if (ed > tol) ++diag_viol;
  }
  const std::string over = std::to_string(probes) + " random probes, r=" + num(r);
  rec.check("zeta_slot_sub_mean", over + ", (center-mean)/max(1,center)", std::max(0.0, slot), tol);
  rec.check("diagonal_sub_mean", over + ", zeta -> B(zeta,zeta)", std::max(0.0, diag), tol);
  rec.observe("zeta_slot_violations", over, slot_viol);
  rec.observe("diagonal_violations", over, diag_viol);
}

struct Entry {
  SuiteId id;
  SuiteFn fn;
};

constexpr Entry kTable[]{
    {SuiteId::reproduce_szego, reproduce_szego},
    {SuiteId::reproduce_bergman, reproduce_bergman},
    {SuiteId::law_bergman, law_bergman},
    {SuiteId::law_berezin, law_berezin},
    {SuiteId::injectivity_probe, injectivity_probe},
    {SuiteId::normalization, normalization},
    {SuiteId::mass_bounds, mass_bounds},
    {SuiteId::boundary_continuity, boundary_continuity},
    {SuiteId::pseudometric, pseudometric},
    {SuiteId::maximal_domination, maximal_domination},
    {SuiteId::admissible_limits, admissible_limits},
    {SuiteId::metric_identities, metric_identities},
    {SuiteId::divergence, divergence},
    {SuiteId::annihilation, annihilation},
    {SuiteId::shell_estimate, shell_estimate},
    {SuiteId::mean_value, mean_value},
    {SuiteId::fixed_point, fixed_point},
    {SuiteId::psh, psh},
};

const std::array<SuiteFn, kAllSuites.size()>& checked_table() {
  static const auto table = [] {
    std::array<SuiteFn, kAllSuites.size()> t{};
    for (const auto& e : kTable) {
      auto& slot = t.at(static_cast<std::size_t>(e.id));
      if (slot != nullptr) throw std::logic_error("suite registered twice: " + std::string(suite_name(e.id)));
      slot = e.fn;
    }
    for (SuiteId id : kAllSuites)
      if (t[static_cast<std::size_t>(id)] == nullptr)
        throw std::logic_error("suite has no registered checks: " + std::string(suite_name(id)));
    return t;
  }();
  return table;
}

}  // namespace

SuiteFn suite_function(SuiteId id) { return checked_table().at(static_cast<std::size_t>(id)); }

}  // namespace hua::detail
