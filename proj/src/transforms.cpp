#include "hua/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hua/automorphism.hpp"
#include "hua/errors.hpp"
#include "hua/kernels.hpp"

namespace hua {

namespace {

using Integrator = std::function<QuadratureResult(const QuadratureSpec&)>;

/// Runs an integral under the near-sphere policy and optional refinement estimate.
TransformResult run_with_policy(const Integrator& integrate, const QuadratureSpec& q, double gap, double scale,
                                const TransformOptions& opt, const char* what) {
  TransformResult out;
  QuadratureSpec rule = q;
  if (gap < kEscalateGap && q.kind == RuleKind::product) {
    rule = q.escalated();
    out.escalated = true;
  }
  out.precision_limited = gap < kPrecisionLimitedGap;
  const QuadratureResult r = integrate(rule);
  if (!r.ok())
    throw DomainError(std::string(what) + ": non-finite integrand at " + r.nonfinite_at->to_string());
  out.value = scale * r.value;
  out.nodes = r.nodes;
  if (r.monte_carlo) {
    out.error_estimate = scale * r.std_error;
  } else if (opt.estimate_error) {
    const QuadratureResult fine = integrate(rule.scaled(opt.refine_factor));
    if (!fine.ok()) throw DomainError(std::string(what) + ": non-finite integrand at " + fine.nonfinite_at->to_string());
    out.error_estimate = std::abs(scale * fine.value - out.value);
    out.nonconvergent = out.error_estimate > opt.convergence_tolerance * std::max(1.0, std::abs(out.value));
  }
  return out;
}

void check_dims(const TestFunction& f, CSpan z, int n, const char* what) {
  if (f.dim() != n || static_cast<int>(z.size()) != n) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

}  // namespace

DomainSpec domain_for(int n) { return n == 1 ? DomainSpec::disc() : DomainSpec::ball(n); }

TransformResult berezin_transform(const TestFunction& f, CSpan z, const DomainSpec& domain, const QuadratureSpec& q,
                                  TransformOptions opt) {
  const int n = domain.dim();
  check_dims(f, z, n, "berezin_transform");
  require_in(domain, z, false, "berezin_transform");
  const double d = 1.0 - norm2(z);
  const double c = bergman_constant(n) * std::pow(d, n + 1);
  const ComplexVector zc(z);
  const Integrand g = [&](CSpan w) {
    const double m = std::norm(1.0 - hermitian_dot(zc, w));
    return c / std::pow(m, n + 1) * f(w);
  };
  const Integrator integrate = [&](const QuadratureSpec& rule) { return integrate_ball(g, domain, rule); };
  return run_with_policy(integrate, q, 1.0 - std::sqrt(norm2(z)), 1.0, opt, "berezin_transform");
}

TransformResult berezin_transform_mobius_form(const TestFunction& f, CSpan z, const QuadratureSpec& q,
                                              TransformOptions opt) {
  const int n = static_cast<int>(z.size());
  check_dims(f, z, n, "berezin_transform_mobius_form");
  const DomainSpec domain = domain_for(n);
  require_in(domain, z, false, "berezin_transform_mobius_form");
  const Automorphism phi = Automorphism::moebius(ComplexVector(z));
  const Integrand g = [&](CSpan w) {
    thread_local ComplexVector image;
    if (image.dim() != w.size()) image = ComplexVector(w.size());
    phi.apply(w, image.mutable_span());
    return f(image);
  };
  const Integrator integrate = [&](const QuadratureSpec& rule) { return integrate_ball(g, domain, rule); };
  return run_with_policy(integrate, q, 1.0 - std::sqrt(norm2(z)), 1.0 / domain.volume(), opt,
                         "berezin_transform_mobius_form");
}

TransformResult poisson_szego_integral(const TestFunction& f, CSpan z, const DomainSpec& domain,
                                       const QuadratureSpec& q, TransformOptions opt) {
  const int n = domain.dim();
  check_dims(f, z, n, "poisson_szego_integral");
  require_in(domain, z, false, "poisson_szego_integral");
  const double c = szego_constant(n) * std::pow(1.0 - norm2(z), n);
  const ComplexVector zc(z);
  const Integrand g = [&](CSpan w) {
    const double m = std::norm(1.0 - hermitian_dot(zc, w));
    return c / std::pow(m, n) * f(w);
  };
  const Integrator integrate = [&](const QuadratureSpec& rule) { return integrate_sphere(g, n, rule); };
  return run_with_policy(integrate, q, 1.0 - std::sqrt(norm2(z)), 1.0, opt, "poisson_szego_integral");
}

cplx spherical_mean(const TestFunction& f, double r, int n, const QuadratureSpec& q) {
  if (f.dim() != n) throw DimensionMismatch("spherical_mean: dimension mismatch");
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("spherical_mean: radius must lie in (0, 1]");
  const Integrand g = [&](CSpan w) {
    thread_local ComplexVector scaled;
    if (scaled.dim() != w.size()) scaled = ComplexVector(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) scaled[i] = r * w[i];
    return f(scaled);
  };
  const QuadratureResult res = integrate_sphere(g, n, q);
  if (!res.ok()) throw DomainError("spherical_mean: non-finite integrand at " + res.nonfinite_at->to_string());
  return res.value;
}

std::vector<double> default_maximal_radii(CSpan z, int count) {
  if (count < 2) throw ConfigError("maximal radius grid needs at least two radii");
  const double lo = std::sqrt(std::max(0.0, 1.0 - norm2(z))) / 8.0;
  const double hi = std::numbers::sqrt2;
  std::vector<double> radii;
  if (!(lo > 0.0)) throw DomainError("default_maximal_radii: point on the sphere");
  const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  for (int i = 0; i < count; ++i) radii.push_back(i + 1 == count ? hi : lo * std::pow(ratio, i));
  return radii;
}

MaximalResult maximal_function(const TestFunction& f, CSpan z, const DomainSpec& domain,
                               const std::vector<double>& radii, const QuadratureSpec& mc) {
  if (f.dim() != domain.dim()) throw DimensionMismatch("maximal_function: dimension mismatch");
  if (radii.empty()) throw ConfigError("maximal_function: empty radius grid");
  const std::function<double(CSpan)> g = [&f](CSpan w) { return std::abs(f(w)); };
  MaximalResult out;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    QuadratureSpec rule = mc;
    rule.seed = mc.seed + i;
    const QuasiBallAverage avg = quasi_ball_average(z, radii[i], domain, rule, g);
    if (avg.volume.empty || avg.volume.hits == 0) {
      ++out.skipped;
      continue;
    }
    if (avg.mean > out.value) {
      out.value = avg.mean;
      out.best_radius = radii[i];
    }
  }
  return out;
}

DominationSummary domination_report(const std::vector<TestFunction>& family, const std::vector<ComplexVector>& sample,
                                    const DomainSpec& domain, const QuadratureSpec& q, const QuadratureSpec& mc) {
  DominationSummary out;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const ComplexVector& z = sample[i];
    require_in(domain, z, false, "domination_report");
    const auto radii = default_maximal_radii(z);
    QuadratureSpec point_mc = mc;
    point_mc.seed = mc.seed + 1000 * i;
    const bool mobius = std::sqrt(norm2(z)) > kMobiusFormRadius;
    for (std::size_t j = 0; j < family.size(); ++j) {
      DominationRow row;
      row.function = j;
      row.z = z;
      const TransformResult b =
          mobius ? berezin_transform_mobius_form(family[j], z, q) : berezin_transform(family[j], z, domain, q);
      row.berezin_abs = std::abs(b.value);
      row.maximal = maximal_function(family[j], z, domain, radii, point_mc).value;
      if (row.maximal == 0.0) {
        row.skipped = true;
        ++out.skipped;
      } else {
        row.ratio = row.berezin_abs / row.maximal;
        out.max_ratio = std::max(out.max_ratio, row.ratio);
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

// --- approach paths -------------------------------------------------------

ApproachPath ApproachPath::radial(ComplexVector P, double alpha, int steps) {
  ApproachPath path(Kind::radial, std::move(P), alpha);
  for (int k = 1; k <= steps; ++k) path.steps_.push_back((1.0 - std::ldexp(1.0, -k)) * path.P_);
  path.validate();
  return path;
}

ApproachPath ApproachPath::tangential(ComplexVector P, double alpha, ComplexVector v, double ratio, int steps) {
  if (v.dim() != P.dim()) throw DimensionMismatch("tangential path: direction dimension differs");
  if (std::abs(v.norm() - 1.0) > 1e-12 || std::abs(hermitian_dot(v, P)) > 1e-12)
    throw DomainError("tangential path: direction must be a unit vector orthogonal to P");
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("tangential path: ratio must lie in (0, 1)");
  ApproachPath path(Kind::tangential, std::move(P), alpha);
  for (int k = 1; k <= steps; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    const double cos_tau = (1.0 - ratio * alpha * (1.0 - r * r)) / r;
    if (!(std::abs(cos_tau) <= 1.0)) throw DomainError("tangential path: aperture too small for this ratio");
    const double sin_tau = std::sqrt(1.0 - cos_tau * cos_tau);
    path.steps_.push_back(r * (cos_tau * path.P_ + sin_tau * v));
  }
  path.validate();
  return path;
}

void ApproachPath::validate() const {
  for (const auto& z : steps_)
    if (!admissible_contains(P_, alpha_, z)) throw DomainError("approach path leaves the admissible region");
}

std::vector<ApproachRow> boundary_approach(const TestFunction& f, const ApproachPath& path, const QuadratureSpec& q) {
  const cplx target = f(path.target());
  std::vector<ApproachRow> rows;
  for (const auto& z : path.steps()) {
    const TransformResult r = berezin_transform_mobius_form(f, z, q);
    ApproachRow row;
    row.z = z;
    row.gap = 1.0 - z.norm();
    row.value = r.value;
    row.deviation = std::abs(r.value - target);
    row.escalated = r.escalated;
    row.precision_limited = r.precision_limited;
    rows.push_back(std::move(row));
  }
  return rows;
}

double dual_mass(CSpan zeta, const DomainSpec& domain, const QuadratureSpec& q) {
  const int n = domain.dim();
  if (static_cast<int>(zeta.size()) != n) throw DimensionMismatch("dual_mass: dimension mismatch");
  require_in(domain, zeta, false, "dual_mass");
  const double c = bergman_constant(n);
  const ComplexVector zc(zeta);
  const Integrand g = [&](CSpan w) {
    const double d = 1.0 - norm2(w);
    const double m = std::norm(1.0 - hermitian_dot(w, zc));
    return cplx(c * std::pow(d, n + 1) / std::pow(m, n + 1));
  };
  const QuadratureResult r = integrate_ball(g, domain, q);
  if (!r.ok()) throw DomainError("dual_mass: non-finite integrand at " + r.nonfinite_at->to_string());
  return r.value.real();
}

ShellResult shell_integral(CSpan z, int n, const QuadratureSpec& q, ShellIntegrand kind) {
  if (static_cast<int>(z.size()) != n) throw DimensionMismatch("shell_integral: dimension mismatch");
  require_in(domain_for(n), z, false, "shell_integral");
  const double r = std::sqrt(norm2(z));
  const double weight = std::pow(1.0 - r * r, n - 1);
  const double power = kind == ShellIntegrand::estimate ? 0.5 * (n + 1) : n;
  const std::function<cplx(cplx)> g = [&](cplx w) { return cplx(weight / std::pow(std::norm(1.0 - r * w), power)); };
  const double gap = std::max(1.0 - r, 1e-16);
  auto run = [&](const QuadratureSpec& rule) {
    const QuadratureResult res = integrate_sphere_zonal(g, n, gap, rule);
    if (!res.ok()) throw DomainError("shell_integral: non-finite integrand at " + res.nonfinite_at->to_string());
    return res.value.real();
  };
  ShellResult out;
  out.value = run(q);
  QuadratureSpec finer = q;
  finer.radial_order += 4;
  out.refinement_delta = std::abs(run(finer) - out.value) / std::abs(out.value);
  out.precision_limited = out.refinement_delta > 1e-8;
  return out;
}

PshProbe psh_probe(CSpan z, CSpan zeta0, CSpan v, double r, int points) {
  const int n = static_cast<int>(z.size());
  const DomainSpec domain = domain_for(n);
  if (zeta0.size() != z.size() || v.size() != z.size()) throw DimensionMismatch("psh_probe: dimension mismatch");
  if (points < 4) throw ConfigError("psh_probe: at least 4 circle points");
  PshProbe out;
  out.center = poisson_bergman(domain, z, zeta0);
  ComplexVector w(z.size());
  CompensatedSum sum;
  for (int k = 0; k < points; ++k) {
    const cplx e = std::polar(r, 2.0 * std::numbers::pi * k / points);
    for (std::size_t i = 0; i < w.dim(); ++i) w[i] = zeta0[i] + e * v[i];
    if (!contains(domain, w, false)) throw DomainError("psh_probe: circle leaves the ball");
    sum.add(poisson_bergman(domain, z, w));
  }
  out.mean = sum.value().real() / points;
  return out;
}

PshProbe psh_probe_diagonal(CSpan zeta0, CSpan v, double r, int points) {
  const int n = static_cast<int>(zeta0.size());
  const DomainSpec domain = domain_for(n);
  if (v.size() != zeta0.size()) throw DimensionMismatch("psh_probe_diagonal: dimension mismatch");
  if (points < 4) throw ConfigError("psh_probe_diagonal: at least 4 circle points");
  PshProbe out;
  out.center = poisson_bergman(domain, zeta0, zeta0);
  ComplexVector w(zeta0.size());
  CompensatedSum sum;
  for (int k = 0; k < points; ++k) {
    const cplx e = std::polar(r, 2.0 * std::numbers::pi * k / points);
    for (std::size_t i = 0; i < w.dim(); ++i) w[i] = zeta0[i] + e * v[i];
    if (!contains(domain, w, false)) throw DomainError("psh_probe_diagonal: circle leaves the ball");
    sum.add(poisson_bergman(domain, w, w));
  }
  out.mean = sum.value().real() / points;
  return out;
}

}  // namespace hua
