#pragma once

#include <optional>
#include <vector>

#include "hua/complex_vector.hpp"
#include "hua/geometry.hpp"
#include "hua/quadrature.hpp"
#include "hua/test_function.hpp"

namespace hua {

/// Below this distance to the sphere angular counts are doubled once.
inline constexpr double kEscalateGap = 1e-2;
/// Below this distance to the sphere results are flagged precision-limited.
inline constexpr double kPrecisionLimitedGap = 1e-3;

struct TransformResult {
  cplx value = 0.0;
  double error_estimate = 0.0;  ///< |value − refined value|, or the Monte Carlo standard error
  std::size_t nodes = 0;
  bool escalated = false;
  bool precision_limited = false;
  bool nonconvergent = false;  ///< refined value differs by more than the convergence tolerance
};

struct TransformOptions {
  bool estimate_error = false;
  double refine_factor = 1.5;
  double convergence_tolerance = 1e-6;  ///< relative to max(1, |value|)
};

/// Bf(z) = ∫ B(z,ζ) f(ζ) dV(ζ). Requires |z| < 1 (escalation/flag policy near the sphere).
TransformResult berezin_transform(const TestFunction& f, CSpan z, const DomainSpec& domain,
                                  const QuadratureSpec& q, TransformOptions opt = {});

/// (1/V) ∫ f(φ_z(ζ)) dV(ζ) with the involutive Möbius map φ_z.
TransformResult berezin_transform_mobius_form(const TestFunction& f, CSpan z, const QuadratureSpec& q,
                                              TransformOptions opt = {});

/// ∫_S P(z,ζ) f(ζ) dσ(ζ).
TransformResult poisson_szego_integral(const TestFunction& f, CSpan z, const DomainSpec& domain,
                                       const QuadratureSpec& q, TransformOptions opt = {});

/// ∫_S f(rζ) dσ(ζ).
cplx spherical_mean(const TestFunction& f, double r, int n, const QuadratureSpec& q);

/// 20 log-spaced radii from √(1−|z|²)/8 to √2.
std::vector<double> default_maximal_radii(CSpan z, int count = 20);

struct MaximalResult {
  double value = 0.0;       ///< max over the grid of ball averages of |f| (a lower bound for the sup)
  double best_radius = 0.0;
  int skipped = 0;          ///< radii whose quasi-ball had no sample
};

/// Grid maximal function. Radius i uses seed mc.seed + i.
MaximalResult maximal_function(const TestFunction& f, CSpan z, const DomainSpec& domain,
                               const std::vector<double>& radii, const QuadratureSpec& mc);

struct DominationRow {
  std::size_t function = 0;
  ComplexVector z;
  double berezin_abs = 0.0;
  double maximal = 0.0;
  double ratio = 0.0;
  bool skipped = false;  ///< maximal value zero
};

struct DominationSummary {
  std::vector<DominationRow> rows;
  double max_ratio = 0.0;
  int skipped = 0;
};

/// Beyond this radius domination_report evaluates Bf in the Möbius form.
inline constexpr double kMobiusFormRadius = 0.6;

/// |Bf(z)|/ℳf(z) over a function family and sample points. Points with |z| > kMobiusFormRadius
/// use the Möbius form, whose integrand stays smooth as z nears the sphere. Point i uses maximal-function seeds from mc.seed + 1000·i.
DominationSummary domination_report(const std::vector<TestFunction>& family, const std::vector<ComplexVector>& sample,
                                    const DomainSpec& domain, const QuadratureSpec& q, const QuadratureSpec& mc);

/// A sequence of points tending to P inside the admissible region A_α(P).
class ApproachPath {
 public:
  enum class Kind { radial, tangential };

  /// z_k = (1 − 2^{−k}) P for k = 1..steps.
  static ApproachPath radial(ComplexVector P, double alpha, int steps);
  /// z_k = r(P cos τ + v sin τ), r = 1 − 2^{−k}, with ⟨z_k,P⟩ = 1 − ratio·α(1 − r²).
  /// v must be a unit vector orthogonal to P; 0 < ratio < 1.
  static ApproachPath tangential(ComplexVector P, double alpha, ComplexVector v, double ratio, int steps);

  Kind kind() const { return kind_; }
  const ComplexVector& target() const { return P_; }
  double alpha() const { return alpha_; }
  const std::vector<ComplexVector>& steps() const { return steps_; }

 private:
  ApproachPath(Kind k, ComplexVector P, double alpha) : kind_(k), P_(std::move(P)), alpha_(alpha) {}
  void validate() const;

  Kind kind_;
  ComplexVector P_;
  double alpha_;
  std::vector<ComplexVector> steps_;
};

struct ApproachRow {
  ComplexVector z;
  double gap = 0.0;  ///< 1 − |z|
  cplx value = 0.0;
  double deviation = 0.0;
  bool escalated = false;
  bool precision_limited = false;
};

/// Berezin values along the path (Möbius form) with deviations from f(P).
std::vector<ApproachRow> boundary_approach(const TestFunction& f, const ApproachPath& path, const QuadratureSpec& q);

/// ∫ B(z,ζ) dV(z), integrating in the first variable.
double dual_mass(CSpan zeta, const DomainSpec& domain, const QuadratureSpec& q);

enum class ShellIntegrand {
  estimate,  ///< (1−|z|²)^{n−1}/|1−⟨z,ζ⟩|^{n+1}
  contrast   ///< (1−|z|²)^{n−1}/|1−⟨z,ζ⟩|^{2n}
};

struct ShellResult {
  double value = 0.0;
  double refinement_delta = 0.0;  ///< relative change when the panel order grows by 4
  bool precision_limited = false;  ///< refinement_delta above 1e−8
};

/// ∫_S integrand dσ(ζ) with the graded zonal rule.
ShellResult shell_integral(CSpan z, int n, const QuadratureSpec& q, ShellIntegrand kind = ShellIntegrand::estimate);

struct PshProbe {
  double center = 0.0;
  double mean = 0.0;
};

/// B(z, ζ₀) and the trapezoid mean of θ ↦ B(z, ζ₀ + r e^{iθ} v) over `points` nodes.
PshProbe psh_probe(CSpan z, CSpan zeta0, CSpan v, double r, int points = 64);
/// Same probe for ζ ↦ B(ζ, ζ).
PshProbe psh_probe_diagonal(CSpan zeta0, CSpan v, double r, int points = 64);

DomainSpec domain_for(int n);

}  // namespace hua
