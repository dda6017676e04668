#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hua/complex_vector.hpp"

namespace hua {

/// Biholomorphic self-map of the unit ball.
///
/// Möbius maps follow the involutive convention
///   φ_a(z) = (a − P_a z − s_a Q_a z) / (1 − ⟨z,a⟩),
/// P_a the orthogonal projection onto span(a), Q_a = I − P_a, s_a = (1−|a|²)^{1/2},
/// so that φ_a(0) = a, φ_a(a) = 0 and φ_a∘φ_a = id. Composite maps apply their
/// parts in list order (parts[0] first).
class Automorphism {
 public:
  enum class Kind { identity, unitary, moebius, composite };

  static Automorphism identity(std::size_t n);
  /// Requires U·U* = I within 1e−12.
  static Automorphism unitary(Eigen::MatrixXcd U);
  /// Requires |a| < 1.
  static Automorphism moebius(ComplexVector a);
  static Automorphism composite(std::vector<Automorphism> parts);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return n_; }
  const Eigen::MatrixXcd& matrix() const { return u_; }
  const ComplexVector& center() const { return a_; }
  const std::vector<Automorphism>& parts() const { return parts_; }

  ComplexVector operator()(CSpan z) const;
  /// Allocation-free form; `out` must have dimension dim() and may alias nothing in z.
  void apply(CSpan z, std::span<cplx> out) const;

 private:
  Automorphism(Kind k, std::size_t n) : kind_(k), n_(n) {}

  Kind kind_;
  std::size_t n_;
  Eigen::MatrixXcd u_;
  ComplexVector a_;
  std::vector<Automorphism> parts_;
};

ComplexVector apply_automorphism(const Automorphism& phi, CSpan z);

/// det of the holomorphic Jacobian ∂φ_j/∂z_k.
///
/// Identity and unitary maps are exact; Möbius maps use central differences of
/// the Wirtinger derivative ∂/∂z_k with the given step; composites use the
/// chain rule over their parts.
cplx complex_jacobian_det(const Automorphism& phi, CSpan z, double step = 1e-5);

/// A unitary matrix whose first column is u/|u|.
Eigen::MatrixXcd unitary_with_first_column(CSpan u);

/// A unitary U with U·ζ = |ζ|·e₁.
Eigen::MatrixXcd unitary_to_e1(CSpan zeta);

Eigen::VectorXcd to_eigen(CSpan z);
ComplexVector from_eigen(const Eigen::VectorXcd& v);

}  // namespace hua
