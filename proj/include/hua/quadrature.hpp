#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hua/complex_vector.hpp"
#include "hua/geometry.hpp"
#include "hua/quadrature_spec.hpp"

namespace hua {

using Integrand = std::function<cplx(CSpan)>;

struct QuadratureResult {
  cplx value = 0.0;
  double std_error = 0.0;  ///< zero for product rules
  std::size_t nodes = 0;
  bool monte_carlo = false;
  std::optional<ComplexVector> nonfinite_at;  ///< first node with a NaN/Inf integrand value

  bool ok() const { return !nonfinite_at.has_value(); }
};

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre_unit(int order);

/// ∫_Ω f dV. Disc: t = r², dV = ½ dt dθ. Ball n = 2: s = r², dV = ½ s ds dσ with the
/// S³ rule below. n ≥ 3 (or kind = monte_carlo): uniform Monte Carlo.
QuadratureResult integrate_ball(const Integrand& f, const DomainSpec& domain, const QuadratureSpec& q);

/// ∫_{S^{2n−1}} f dσ. n = 1: trapezoid in θ. n = 2: ω = (e^{iθ₁}√(1−u), e^{iθ₂}√u),
/// dσ = ½ du dθ₁ dθ₂. n ≥ 3 (or kind = monte_carlo): normalized Gaussian samples.
QuadratureResult integrate_sphere(const Integrand& f, int n, const QuadratureSpec& q);

/// ∫_{S^{2n−1}} g(ζ₁) dσ(ζ) for integrands depending on the first coordinate only.
///
/// For n ≥ 2 the sphere measure is pushed forward to the disc,
///   σ(S)·(n−1)/π · (1−|w|²)^{n−2} dA(w),
/// and integrated in polar form on composite Gauss panels graded geometrically
/// toward w = 1 down to width `gap`. For n = 1 the circle is graded toward θ = 0.
/// Panel order is q.radial_order. Used for near-singular integrands whose peak
/// sits at distance ~gap outside the sphere near e₁.
QuadratureResult integrate_sphere_zonal(const std::function<cplx(cplx)>& g, int n, double gap,
                                        const QuadratureSpec& q);

struct ConvergenceRow {
  int order = 0;
  cplx value = 0.0;
  double delta = 0.0;  ///< |value − previous value|; 0 for the first row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool monotone_decay = true;  ///< deltas non-increasing
};

/// Rule for a single convergence order k: disc (t: k, θ: k); ball n = 2
/// (s: k, u: k, θ₁: k, θ₂: k); sphere rules use the matching axes.
QuadratureSpec rule_for_order(int k);

/// Successive integrals over the domain at each order with Cauchy differences.
ConvergenceTable convergence_table(const Integrand& f, const DomainSpec& domain, std::span<const int> orders);

/// Compensated (Neumaier) complex accumulator; summation order is the call order.
class CompensatedSum {
 public:
  void add(cplx v);
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

}  // namespace hua
