#pragma once

#include <Eigen/Dense>

#include "hua/complex_vector.hpp"
#include "hua/test_function.hpp"
#include "hua/wirtinger.hpp"

namespace hua {

using HermitianMatrix = Eigen::MatrixXcd;

/// g_{jk} = ∂²/∂z_j∂z̄_k log K(z,z) = (n+1)/(1−|z|²)² [δ_{jk}(1−|z|²) + z̄_j z_k].
HermitianMatrix bergman_metric(CSpan z, int n);
/// g^{jk} = (1−|z|²)/(n+1) (δ_{jk} − z̄_j z_k).
HermitianMatrix inverse_metric(CSpan z, int n);
/// det g = (n+1)^n / (1−|z|²)^{n+1}.
double metric_determinant(CSpan z, int n);

bool is_hermitian(const HermitianMatrix& m, double tol = 1e-12);
bool is_positive_definite(const HermitianMatrix& m);

/// log K(z,z) on the ball, the potential of the metric.
double log_bergman_diagonal(CSpan z, int n);

struct DivergenceResidual {
  double dzbar = 0.0;          ///< max_k |Σ_j ∂/∂z̄_j (g g^{jk})|
  double dz = 0.0;             ///< max_j |Σ_k ∂/∂z_k (g g^{jk})|
  double dz_same_index = 0.0;  ///< max_k |Σ_j ∂/∂z_j (g g^{jk})|; not an identity, reported only
};

/// Central-difference divergences of g·g^{jk} built from the closed forms. Requires |z| ≤ 0.9.
DivergenceResidual divergence_residual(CSpan z, int n, FiniteDifference fd = {});

/// ℒf = (4/(n+1))(1−|z|²) Σ_{j,k} (δ_{jk} − z̄_j z_k) ∂²f/∂z_k∂z̄_j with exact polynomial partials.
cplx invariant_laplacian(const TestFunction& f, CSpan z);
/// Same operator with the mixed partials taken by central differences. Requires |z| ≤ 0.95.
cplx invariant_laplacian(const Field& f, CSpan z, FiniteDifference fd = {});

/// (1−|z|²)²/|1−z₁|⁴: the n = 2 Poisson-Szegő kernel at ζ = e₁ without its constant.
double hua_body(CSpan z);

/// Partials of hua_body. The two off-diagonal mixed entries are conjugate.
struct DerivativeTable {
  cplx dP_dzbar1;
  cplx d2P_dzbar1_dz1;
  cplx d2P_dzbar1_dz2;
  cplx d2P_dz1_dzbar2;
  cplx dP_dz2;
  cplx d2P_dz2_dzbar2;
};

enum class DiffMode { closed_form, finite_difference };

DerivativeTable hua_partials(CSpan z, DiffMode mode, FiniteDifference fd = {});

/// ∂P/∂z₂ written with z₂ where z̄₂ belongs, (−2z₂ + 2|z₁|²z₂ + 2|z₂|²z₂)/|1−z₁|⁴. It equals
/// ∂P/∂z̄₂, the conjugate of the true value; hua_partials uses −2z̄₂(1−|z|²)/|1−z₁|⁴.
cplx dP_dz2_unconjugated(CSpan z);

/// ℒP from the table: (4/3)(1−|z|²)[(1−|z₁|²)P₁₁̄ − z̄₁z₂ P₁̄₂ − z̄₂z₁ P₁₂̄ + (1−|z₂|²)P₂₂̄].
cplx assemble_laplacian(const DerivativeTable& t, CSpan z);

}  // namespace hua
