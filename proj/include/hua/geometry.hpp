#pragma once

#include <cstddef>
#include <functional>

#include "hua/complex_vector.hpp"
#include "hua/quadrature_spec.hpp"

namespace hua {

enum class DomainKind { disc, ball };

/// The unit disc (n = 1) or the unit ball of C^n.
class DomainSpec {
 public:
  static DomainSpec disc() { return DomainSpec(DomainKind::disc, 1); }
  static DomainSpec ball(int n);

  DomainKind kind() const { return kind_; }
  int dim() const { return n_; }

  /// Euclidean volume π^n/n!.
  double volume() const;
  /// Area of the bounding sphere, 2π^n/(n−1)!.
  double sphere_area() const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  DomainSpec(DomainKind k, int n) : kind_(k), n_(n) {}
  DomainKind kind_;
  int n_;
};

/// Slack used for |z| = 1 decisions.
inline constexpr double kBoundaryTolerance = 1e-12;

double ball_volume(int n);
double sphere_area(int n);

bool contains(const DomainSpec& domain, CSpan z, bool closed);

/// Throws DimensionMismatch/DomainError unless z lies in the (open or closed) domain.
void require_in(const DomainSpec& domain, CSpan z, bool closed, const char* what);

/// Boundary pseudometric |1 − ⟨z,ζ⟩|^{1/2}.
double rho(CSpan z, CSpan zeta);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
  std::size_t draws = 0;
  bool empty = false;  ///< no sample hit, or the set is provably empty
};

struct QuasiBallAverage {
  VolumeEstimate volume;
  double mean = 0.0;  ///< mean of the integrand over accepted samples
  double mean_std_error = 0.0;
};

/// Monte Carlo volume of β₂(z,r) = {ζ ∈ Ω : ρ(z,ζ) < r}.
///
/// Samples are drawn uniformly from a product region that contains β₂(z,r):
/// a disc for the component along z and a ball for the orthogonal part.
VolumeEstimate quasi_ball_volume(CSpan z, double r, const DomainSpec& domain,
                                 const QuadratureSpec& mc);

/// Volume estimate together with the uniform average of g over β₂(z,r).
QuasiBallAverage quasi_ball_average(CSpan z, double r, const DomainSpec& domain,
                                    const QuadratureSpec& mc,
                                    const std::function<double(CSpan)>& g);

/// Membership in |1 − ⟨z,P⟩| < α(1 − |z|²). Throws for α ≤ 1 or |P| ≠ 1.
bool admissible_contains(CSpan P, double alpha, CSpan z);

}  // namespace hua
