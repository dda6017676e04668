#include "hua/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>

#include "hua/errors.hpp"

namespace hua {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

GaussRule compute_gauss(int order) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] → [0,1]; ascending order
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

std::vector<cplx> unit_roots(int m) {
  std::vector<cplx> r(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) r[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / m);
  return r;
}

/// Accumulates integrand values, remembering the first non-finite node.
class Accumulator {
 public:
  void add(const Integrand& f, CSpan node, double weight) {
    const cplx v = f(node);
    ++nodes_;
    if (!finite(v)) {
      if (!bad_) bad_ = ComplexVector(node);
      return;
    }
    sum_.add(weight * v);
  }
  QuadratureResult finish(double scale) const {
    QuadratureResult r;
    r.nodes = nodes_;
    r.value = scale * sum_.value();
    if (bad_) {
      r.nonfinite_at = bad_;
      r.value = cplx(std::nan(""), std::nan(""));
    }
    return r;
  }

 private:
  CompensatedSum sum_;
  std::size_t nodes_ = 0;
  std::optional<ComplexVector> bad_;
};

QuadratureResult monte_carlo(const Integrand& f, int n, const QuadratureSpec& q, bool on_sphere) {
  if (q.samples < 1000) throw ConfigError("Monte Carlo needs at least 1000 samples");
  const auto dim = static_cast<std::size_t>(n);
  std::mt19937_64 rng(q.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  ComplexVector z(dim);
  CompensatedSum sum;
  double sum_sq = 0.0;
  std::optional<ComplexVector> bad;
  for (std::size_t s = 0; s < q.samples; ++s) {
    double len2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      z[i] = cplx(gauss(rng), gauss(rng));
      len2 += std::norm(z[i]);
    }
    double scale = 1.0 / std::sqrt(len2);
    if (!on_sphere) scale *= std::pow(unif(rng), 1.0 / (2.0 * n));
    z *= scale;
    const cplx v = f(z);
    if (!finite(v)) {
      if (!bad) bad = z;
      continue;
    }
    sum.add(v);
    sum_sq += std::norm(v);
  }
  const double N = static_cast<double>(q.samples);
  const double measure = on_sphere ? sphere_area(n) : ball_volume(n);
  const cplx mean = sum.value() / N;
  const double var = std::max(0.0, sum_sq / N - std::norm(mean));
  QuadratureResult r;
  r.monte_carlo = true;
  r.nodes = q.samples;
  r.value = measure * mean;
  r.std_error = measure * std::sqrt(var / (N - 1.0));
  if (bad) {
    r.nonfinite_at = bad;
    r.value = cplx(std::nan(""), std::nan(""));
  }
  return r;
}

/// Composite Gauss rule on [0, length] with panels growing geometrically from `hmin` at 0.
GaussRule graded_rule(double length, double hmin, int order) {
  constexpr double kGrowth = 3.0;
  std::vector<double> edges{0.0};
  double h = std::min(hmin, length);
  while (edges.back() + h < length * (1.0 - 1e-12)) {
    edges.push_back(edges.back() + h);
    h *= kGrowth;
  }
  edges.push_back(length);
  const auto& base = gauss_legendre_unit(order);
  GaussRule rule;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], w = edges[p + 1] - edges[p];
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      rule.nodes.push_back(a + w * base.nodes[i]);
      rule.weights.push_back(w * base.weights[i]);
    }
  }
  return rule;
}

}  // namespace

void CompensatedSum::add(cplx v) {
  auto step = [](double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  };
  step(re_, cre_, v.real());
  step(im_, cim_, v.imag());
}

const GaussRule& gauss_legendre_unit(int order) {
  if (order < 1) throw ConfigError("Gauss order must be positive");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
  return it->second;
}

QuadratureResult integrate_sphere(const Integrand& f, int n, const QuadratureSpec& q) {
  if (n < 1) throw DimensionMismatch("sphere dimension must be positive");
  q.validate(n);
  if (n >= 3 || q.kind == RuleKind::monte_carlo) return monte_carlo(f, n, q, true);

  Accumulator acc;
  if (n == 1) {
    const int m = q.angular(0);
    const auto roots = unit_roots(m);
    cplx node[1];
    for (const auto& e : roots) {
      node[0] = e;
      acc.add(f, node, 1.0);
    }
    return acc.finish(kTwoPi / m);
  }

  const auto& gu = gauss_legendre_unit(q.slice_order);
  const int m1 = q.angular(0), m2 = q.angular(1);
  const auto r1 = unit_roots(m1), r2 = unit_roots(m2);
  cplx node[2];
  for (std::size_t j = 0; j < gu.nodes.size(); ++j) {
    const double u = gu.nodes[j];
    const double c1 = std::sqrt(1.0 - u), c2 = std::sqrt(u);
    for (const auto& e1 : r1) {
      node[0] = c1 * e1;
      for (const auto& e2 : r2) {
        node[1] = c2 * e2;
        acc.add(f, node, gu.weights[j]);
      }
    }
  }
  return acc.finish(0.5 * (kTwoPi / m1) * (kTwoPi / m2));
}

QuadratureResult integrate_ball(const Integrand& f, const DomainSpec& domain, const QuadratureSpec& q) {
  const int n = domain.dim();
  q.validate(n);
  if (n >= 3 || q.kind == RuleKind::monte_carlo) return monte_carlo(f, n, q, false);

  Accumulator acc;
  const auto& gr = gauss_legendre_unit(q.radial_order);
  if (n == 1) {
    const int m = q.angular(0);
    const auto roots = unit_roots(m);
    cplx node[1];
    for (std::size_t i = 0; i < gr.nodes.size(); ++i) {
      const double r = std::sqrt(gr.nodes[i]);
      for (const auto& e : roots) {
        node[0] = r * e;
        acc.add(f, node, gr.weights[i]);
      }
    }
    return acc.finish(0.5 * kTwoPi / m);
  }

  const auto& gu = gauss_legendre_unit(q.slice_order);
  const int m1 = q.angular(0), m2 = q.angular(1);
  const auto r1 = unit_roots(m1), r2 = unit_roots(m2);
  cplx node[2];
  for (std::size_t i = 0; i < gr.nodes.size(); ++i) {
    const double s = gr.nodes[i];
    const double r = std::sqrt(s);
    for (std::size_t j = 0; j < gu.nodes.size(); ++j) {
      const double u = gu.nodes[j];
      const double c1 = r * std::sqrt(1.0 - u), c2 = r * std::sqrt(u);
      const double w = gr.weights[i] * s * gu.weights[j];
      for (const auto& e1 : r1) {
        node[0] = c1 * e1;
        for (const auto& e2 : r2) {
          node[1] = c2 * e2;
          acc.add(f, node, w);
        }
      }
    }
  }
  // dV = ½ s ds · dσ, dσ = ½ du dθ₁ dθ₂
  return acc.finish(0.25 * (kTwoPi / m1) * (kTwoPi / m2));
}

QuadratureResult integrate_sphere_zonal(const std::function<cplx(cplx)>& g, int n, double gap,
                                        const QuadratureSpec& q) {
  if (n < 1) throw DimensionMismatch("sphere dimension must be positive");
  if (!(gap > 0.0)) throw DomainError("integrate_sphere_zonal: gap must be positive");
  if (q.radial_order < 2) throw ConfigError("radial_order must be at least 2");
  const double hmin = 0.5 * gap;
  const GaussRule ang = graded_rule(std::numbers::pi, hmin, q.radial_order);

  Accumulator acc;
  const Integrand wrapped = [&g](CSpan w) { return g(w[0]); };
  cplx node[1];
  if (n == 1) {
    for (int sign : {1, -1})
      for (std::size_t i = 0; i < ang.nodes.size(); ++i) {
        node[0] = std::polar(1.0, sign * ang.nodes[i]);
        acc.add(wrapped, node, ang.weights[i]);
      }
    return acc.finish(1.0);
  }

  const GaussRule rad = graded_rule(1.0, hmin, q.radial_order);
  for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
    const double t = 1.0 - rad.nodes[i];
    const double radial_weight = rad.weights[i] * t * std::pow(1.0 - t * t, n - 2);
    for (int sign : {1, -1})
      for (std::size_t k = 0; k < ang.nodes.size(); ++k) {
        node[0] = std::polar(t, sign * ang.nodes[k]);
        acc.add(wrapped, node, radial_weight * ang.weights[k]);
      }
  }
  return acc.finish(sphere_area(n) * (n - 1) / std::numbers::pi);
}

QuadratureSpec rule_for_order(int k) {
  QuadratureSpec q;
  q.radial_order = k;
  q.slice_order = k;
  q.angular_points = {k, k};
  return q;
}

ConvergenceTable convergence_table(const Integrand& f, const DomainSpec& domain, std::span<const int> orders) {
  if (orders.size() < 2) throw ConfigError("convergence_table needs at least two orders");
  ConvergenceTable table;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto r = integrate_ball(f, domain, rule_for_order(orders[i]));
    ConvergenceRow row{orders[i], r.value, 0.0};
    if (i > 0) {
      row.delta = std::abs(r.value - table.rows.back().value);
      if (i > 1 && row.delta > table.rows.back().delta) table.monotone_decay = false;
    }
    table.rows.push_back(row);
  }
  return table;
}

// --- QuadratureSpec -------------------------------------------------------

QuadratureSpec QuadratureSpec::disc_defaults() {
  QuadratureSpec q;
  q.radial_order = 32;
  q.slice_order = 24;
  q.angular_points = {128};
  return q;
}

QuadratureSpec QuadratureSpec::ball2_defaults() {
  QuadratureSpec q;
  q.radial_order = 24;
  q.slice_order = 24;
  q.angular_points = {64, 64};
  return q;
}

QuadratureSpec QuadratureSpec::monte_carlo(std::size_t samples, std::uint64_t seed) {
  QuadratureSpec q;
  q.kind = RuleKind::monte_carlo;
  q.samples = samples;
  q.seed = seed;
  return q;
}

QuadratureSpec QuadratureSpec::defaults_for(const DomainSpec& domain) {
  switch (domain.dim()) {
    case 1: return disc_defaults();
    case 2: return ball2_defaults();
    default: return monte_carlo(1'000'000, 0);
  }
}

int QuadratureSpec::angular(std::size_t axis) const {
  if (angular_points.empty()) throw ConfigError("no angular point counts configured");
  return angular_points[std::min(axis, angular_points.size() - 1)];
}

void QuadratureSpec::validate(int n) const {
  if (kind == RuleKind::monte_carlo || n >= 3) {
    if (samples < 1000) throw ConfigError("Monte Carlo needs at least 1000 samples");
    return;
  }
  if (radial_order < 2) throw ConfigError("radial_order must be at least 2");
  if (n == 2 && slice_order < 2) throw ConfigError("slice_order must be at least 2");
  if (angular_points.empty()) throw ConfigError("angular_points must not be empty");
  for (int m : angular_points)
    if (m < 4) throw ConfigError("angular point counts must be at least 4");
}

QuadratureSpec QuadratureSpec::escalated() const {
  QuadratureSpec q = *this;
  for (auto& m : q.angular_points) m *= 2;
  return q;
}

QuadratureSpec QuadratureSpec::scaled(double factor) const {
  QuadratureSpec q = *this;
  auto sc = [factor](int v) { return std::max(2, static_cast<int>(std::lround(v * factor))); };
  q.radial_order = sc(radial_order);
  q.slice_order = sc(slice_order);
  for (auto& m : q.angular_points) m = std::max(4, sc(m));
  return q;
}

}  // namespace hua
