#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hua {

class DomainSpec;

enum class RuleKind { product, monte_carlo };

/// Quadrature configuration shared by volume and sphere integrals.
///
/// Product rules: disc uses (radial_order: Gauss in t = r², angular_points[0]);
/// ball n = 2 uses (radial_order: Gauss in s = r², slice_order: Gauss in u,
/// angular_points = {θ₁, θ₂}). The circle uses angular_points[0]; S³ uses
/// slice_order and both angular counts. Dimensions n ≥ 3 always fall back to
/// Monte Carlo with `samples` draws seeded by `seed`.
struct QuadratureSpec {
  RuleKind kind = RuleKind::product;
  int radial_order = 32;
  int slice_order = 24;
  std::vector<int> angular_points{128};
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;

  static QuadratureSpec defaults_for(const DomainSpec& domain);
  static QuadratureSpec disc_defaults();
  static QuadratureSpec ball2_defaults();
  static QuadratureSpec monte_carlo(std::size_t samples, std::uint64_t seed);

  /// Throws ConfigError when orders are out of bounds for dimension n.
  void validate(int n) const;

  /// Same rule with every angular count doubled.
  QuadratureSpec escalated() const;

  /// Uniformly scaled rule: radial/slice orders and angular counts times `factor`.
  QuadratureSpec scaled(double factor) const;

  int angular(std::size_t axis) const;
};

}  // namespace hua
