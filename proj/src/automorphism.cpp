#include "hua/automorphism.hpp"

#include <cmath>
#include <string>

#include "hua/errors.hpp"
#include "hua/geometry.hpp"

namespace hua {

Automorphism Automorphism::identity(std::size_t n) {
  if (n == 0) throw DimensionMismatch("automorphism dimension must be positive");
  return Automorphism(Kind::identity, n);
}

Automorphism Automorphism::unitary(Eigen::MatrixXcd U) {
  if (U.rows() == 0 || U.rows() != U.cols()) throw DimensionMismatch("unitary must be square");
  const auto n = static_cast<std::size_t>(U.rows());
  const double defect = (U * U.adjoint() - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).norm();
  if (!(defect <= 1e-12))
    throw DomainError("matrix is not unitary (‖UU* − I‖ = " + std::to_string(defect) + ")");
  Automorphism phi(Kind::unitary, n);
  phi.u_ = std::move(U);
  return phi;
}

Automorphism Automorphism::moebius(ComplexVector a) {
  if (a.dim() == 0) throw DimensionMismatch("automorphism dimension must be positive");
  if (!a.finite() || !(a.norm2() < 1.0)) throw DomainError("Möbius center must satisfy |a| < 1");
  Automorphism phi(Kind::moebius, a.dim());
  phi.a_ = std::move(a);
  return phi;
}

Automorphism Automorphism::composite(std::vector<Automorphism> parts) {
  if (parts.empty()) throw DimensionMismatch("composite automorphism needs at least one part");
  const auto n = parts.front().dim();
  for (const auto& p : parts)
    if (p.dim() != n) throw DimensionMismatch("composite parts differ in dimension");
  Automorphism phi(Kind::composite, n);
  phi.parts_ = std::move(parts);
  return phi;
}

void Automorphism::apply(CSpan z, std::span<cplx> out) const {
  if (z.size() != n_ || out.size() != n_) throw DimensionMismatch("automorphism argument");
  switch (kind_) {
    case Kind::identity:
      std::copy(z.begin(), z.end(), out.begin());
      return;
    case Kind::unitary:
      for (std::size_t i = 0; i < n_; ++i) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < n_; ++k) s += u_(i, k) * z[k];
        out[i] = s;
      }
      return;
    case Kind::moebius: {
      const double a2 = a_.norm2();
      const cplx za = hermitian_dot(z, a_);
      const cplx denom = 1.0 - za;
      if (denom == 0.0) throw PoleError("Möbius denominator 1 − ⟨z,a⟩ vanished");
      if (a2 == 0.0) {
        for (std::size_t i = 0; i < n_; ++i) out[i] = -z[i];
        return;
      }
      const double s = std::sqrt(1.0 - a2);
      const cplx proj = za / a2;
      for (std::size_t i = 0; i < n_; ++i) {
        const cplx pz = proj * a_[i];
        out[i] = (a_[i] - pz - s * (z[i] - pz)) / denom;
      }
      return;
    }
    case Kind::composite: {
      ComplexVector cur(z), next(n_);
      for (const auto& p : parts_) {
        p.apply(cur, next.mutable_span());
        std::swap(cur, next);
      }
      std::copy(cur.begin(), cur.end(), out.begin());
      return;
    }
  }
}

ComplexVector Automorphism::operator()(CSpan z) const {
  ComplexVector out(n_);
  apply(z, out.mutable_span());
  return out;
}

ComplexVector apply_automorphism(const Automorphism& phi, CSpan z) { return phi(z); }

namespace {

cplx numeric_jacobian_det(const Automorphism& phi, CSpan z, double h) {
  const auto n = phi.dim();
  Eigen::MatrixXcd J(n, n);
  ComplexVector zp(z), zm(z), fp(n), fm(n), gp(n), gm(n);
  const cplx ih(0.0, h);
  for (std::size_t k = 0; k < n; ++k) {
    zp[k] = z[k] + h;
    zm[k] = z[k] - h;
    phi.apply(zp, fp.mutable_span());
    phi.apply(zm, fm.mutable_span());
    zp[k] = z[k] + ih;
    zm[k] = z[k] - ih;
    phi.apply(zp, gp.mutable_span());
    phi.apply(zm, gm.mutable_span());
    zp[k] = z[k];
    zm[k] = z[k];
    // ∂/∂z_k = (∂_x − i ∂_y)/2
    for (std::size_t j = 0; j < n; ++j) {
      const cplx dx = (fp[j] - fm[j]) / (2.0 * h);
      const cplx dy = (gp[j] - gm[j]) / (2.0 * h);
      J(j, k) = 0.5 * (dx - cplx(0.0, 1.0) * dy);
    }
  }
  const cplx det = J.determinant();
  if (!std::isfinite(det.real()) || !std::isfinite(det.imag()))
    throw DomainError("complex Jacobian determinant is not finite at " + ComplexVector(z).to_string());
  return det;
}

}  // namespace

cplx complex_jacobian_det(const Automorphism& phi, CSpan z, double step) {
  if (z.size() != phi.dim()) throw DimensionMismatch("complex_jacobian_det");
  if (!(step >= 1e-7 && step <= 1e-3)) throw DomainError("Jacobian step must lie in [1e-7, 1e-3]");
  switch (phi.kind()) {
    case Automorphism::Kind::identity:
      return 1.0;
    case Automorphism::Kind::unitary:
      return phi.matrix().determinant();
    case Automorphism::Kind::moebius:
      return numeric_jacobian_det(phi, z, step);
    case Automorphism::Kind::composite: {
      cplx det = 1.0;
      ComplexVector cur(z), next(phi.dim());
      for (const auto& p : phi.parts()) {
        det *= complex_jacobian_det(p, cur, step);
        p.apply(cur, next.mutable_span());
        std::swap(cur, next);
      }
      return det;
    }
  }
  return 0.0;
}

Eigen::VectorXcd to_eigen(CSpan z) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) v(static_cast<Eigen::Index>(i)) = z[i];
  return v;
}

ComplexVector from_eigen(const Eigen::VectorXcd& v) {
  ComplexVector z(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) z[static_cast<std::size_t>(i)] = v(i);
  return z;
}

Eigen::MatrixXcd unitary_with_first_column(CSpan u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  const double len = std::sqrt(norm2(u));
  if (n == 0 || len == 0.0) throw DomainError("unitary_with_first_column: zero vector");
  Eigen::MatrixXcd Q(n, n);
  Q.col(0) = to_eigen(u) / len;
  // Modified Gram-Schmidt against the standard basis, skipping near-dependent vectors.
  Eigen::Index filled = 1;
  for (Eigen::Index k = 0; k < n && filled < n; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < filled; ++j) v -= Q.col(j).dot(v) * Q.col(j);
    const double vn = v.norm();
    if (vn < 1e-8) continue;
    Q.col(filled++) = v / vn;
  }
  return Q;
}

Eigen::MatrixXcd unitary_to_e1(CSpan zeta) { return unitary_with_first_column(zeta).adjoint(); }

}  // namespace hua
