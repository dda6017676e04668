#include "hua/bergman_geometry.hpp"

#include <cmath>
#include <numbers>

#include "hua/errors.hpp"
#include "hua/kernels.hpp"

namespace hua {

namespace {

double interior_gap(CSpan z, int n, const char* what) {
  if (static_cast<int>(z.size()) != n) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
  const double d = 1.0 - norm2(z);
  if (!(d > 0.0)) throw DomainError(std::string(what) + ": point not in the open ball");
  return d;
}

/// g·g^{jk} = (n+1)^{n−1} (δ_{jk} − z̄_j z_k) / (1−|z|²)^n.
cplx weighted_inverse(CSpan z, int n, std::size_t j, std::size_t k) {
  const double d = 1.0 - norm2(z);
  const cplx delta = j == k ? 1.0 : 0.0;
  return std::pow(n + 1.0, n - 1) * (delta - std::conj(z[j]) * z[k]) / std::pow(d, n);
}

}  // namespace

HermitianMatrix bergman_metric(CSpan z, int n) {
  const double d = interior_gap(z, n, "bergman_metric");
  HermitianMatrix g(n, n);
  const double pre = (n + 1.0) / (d * d);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const auto jj = static_cast<std::size_t>(j), kk = static_cast<std::size_t>(k);
      g(j, k) = pre * ((j == k ? d : 0.0) + std::conj(z[jj]) * z[kk]);
    }
  return g;
}

HermitianMatrix inverse_metric(CSpan z, int n) {
  const double d = interior_gap(z, n, "inverse_metric");
  HermitianMatrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const auto jj = static_cast<std::size_t>(j), kk = static_cast<std::size_t>(k);
      g(j, k) = d / (n + 1.0) * ((j == k ? 1.0 : 0.0) - std::conj(z[jj]) * z[kk]);
    }
  return g;
}

double metric_determinant(CSpan z, int n) {
  const double d = interior_gap(z, n, "metric_determinant");
  return std::pow(n + 1.0, n) / std::pow(d, n + 1);
}

bool is_hermitian(const HermitianMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_positive_definite(const HermitianMatrix& m) {
  Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (m + m.adjoint()));
  return llt.info() == Eigen::Success;
}

double log_bergman_diagonal(CSpan z, int n) {
  const double d = interior_gap(z, n, "log_bergman_diagonal");
  return std::log(bergman_constant(n)) - (n + 1.0) * std::log(d);
}

DivergenceResidual divergence_residual(CSpan z, int n, FiniteDifference fd) {
  interior_gap(z, n, "divergence_residual");
  if (norm2(z) > 0.81 + 1e-12) throw DomainError("divergence_residual: requires |z| ≤ 0.9");
  const auto N = static_cast<std::size_t>(n);
  std::vector<Eigen::VectorXcd> dz(N * N), dzbar(N * N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) {
      const Field entry = [n, j, k](CSpan w) { return weighted_inverse(w, n, j, k); };
      dz[j * N + k] = wirtinger_dz(entry, z, fd);
      dzbar[j * N + k] = wirtinger_dzbar(entry, z, fd);
    }
  DivergenceResidual r;
  for (std::size_t k = 0; k < N; ++k) {
    cplx s_bar = 0.0, s_same = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      s_bar += dzbar[j * N + k][static_cast<Eigen::Index>(j)];
      s_same += dz[j * N + k][static_cast<Eigen::Index>(j)];
    }
    r.dzbar = std::max(r.dzbar, std::abs(s_bar));
    r.dz_same_index = std::max(r.dz_same_index, std::abs(s_same));
  }
  for (std::size_t j = 0; j < N; ++j) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < N; ++k) s += dz[j * N + k][static_cast<Eigen::Index>(k)];
    r.dz = std::max(r.dz, std::abs(s));
  }
  return r;
}

cplx invariant_laplacian(const TestFunction& f, CSpan z) {
  const int n = f.dim();
  const double d = interior_gap(z, n, "invariant_laplacian");
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const TestFunction fk = f.dz(k);
    for (int j = 0; j < n; ++j) {
      const auto jj = static_cast<std::size_t>(j), kk = static_cast<std::size_t>(k);
      const cplx coeff = (j == k ? 1.0 : 0.0) - std::conj(z[jj]) * z[kk];
      if (coeff == cplx(0.0)) continue;
      sum += coeff * fk.dzbar(j)(z);
    }
  }
  return 4.0 / (n + 1.0) * d * sum;
}

cplx invariant_laplacian(const Field& f, CSpan z, FiniteDifference fd) {
  const int n = static_cast<int>(z.size());
  const double d = interior_gap(z, n, "invariant_laplacian");
  if (norm2(z) > 0.9025 + 1e-12) throw DomainError("invariant_laplacian: requires |z| ≤ 0.95");
  const Eigen::MatrixXcd H = wirtinger_hessian(f, z, fd);
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const auto jj = static_cast<std::size_t>(j), kk = static_cast<std::size_t>(k);
      sum += ((j == k ? 1.0 : 0.0) - std::conj(z[jj]) * z[kk]) * H(k, j);
    }
  return 4.0 / (n + 1.0) * d * sum;
}

double hua_body(CSpan z) {
  if (z.size() != 2) throw DimensionMismatch("hua_body is defined on C^2");
  const double q = std::norm(1.0 - z[0]);
  if (q == 0.0) throw PoleError("hua_body: z₁ = 1");
  const double d = 1.0 - norm2(z);
  return d * d / (q * q);
}

DerivativeTable hua_partials(CSpan z, DiffMode mode, FiniteDifference fd) {
  if (z.size() != 2) throw DimensionMismatch("hua_partials is defined on C^2");
  const cplx z1 = z[0], z2 = z[1];
  const double q = std::norm(1.0 - z1);
  if (q == 0.0) throw PoleError("hua_partials: z₁ = 1");

  if (mode == DiffMode::finite_difference) {
    const Field body = [](CSpan w) { return cplx(hua_body(w)); };
    const auto g = wirtinger_dz(body, z, fd);
    const auto gb = wirtinger_dzbar(body, z, fd);
    const auto H = wirtinger_hessian(body, z, fd);
    return {gb[0], H(0, 0), H(1, 0), H(0, 1), g[1], H(1, 1)};
  }

  const double A = std::norm(z1), b = std::norm(z2);
  const cplx c1 = std::conj(z1), c2 = std::conj(z2);
  const double d = 1.0 - A - b;
  const double q2 = q * q, q3 = q2 * q;
  DerivativeTable t;
  t.dP_dzbar1 = -2.0 * (1.0 - z1) * d * (-1.0 + z1 + b) / q3;
  t.d2P_dzbar1_dz1 = -2.0 / q3 * (-A - A * b + 3.0 * b - z1 * b - 2.0 * b * b - 1.0 + z1 + c1 - c1 * b);
  t.d2P_dzbar1_dz2 = -2.0 * (1.0 - z1) / q3 * (2.0 * c2 - c2 * z1 - 2.0 * c2 * b - c2 * A);
  t.d2P_dz1_dzbar2 = -2.0 * (1.0 - c1) / q3 * (2.0 * z2 - z2 * c1 - 2.0 * z2 * b - z2 * A);
  t.dP_dz2 = -2.0 * c2 * d / q2;
  t.d2P_dz2_dzbar2 = (-2.0 + 2.0 * A + 4.0 * b) / q2;
  return t;
}

cplx dP_dz2_unconjugated(CSpan z) {
  if (z.size() != 2) throw DimensionMismatch("dP_dz2_unconjugated is defined on C^2");
  const cplx z2 = z[1];
  const double q = std::norm(1.0 - z[0]);
  return (-2.0 * z2 + 2.0 * std::norm(z[0]) * z2 + 2.0 * std::norm(z2) * z2) / (q * q);
}

cplx assemble_laplacian(const DerivativeTable& t, CSpan z) {
  if (z.size() != 2) throw DimensionMismatch("assemble_laplacian is defined on C^2");
  const cplx z1 = z[0], z2 = z[1];
  const double d = 1.0 - norm2(z);
  return 4.0 / 3.0 * d *
         ((1.0 - std::norm(z1)) * t.d2P_dzbar1_dz1 - std::conj(z1) * z2 * t.d2P_dzbar1_dz2 -
          std::conj(z2) * z1 * t.d2P_dz1_dzbar2 + (1.0 - std::norm(z2)) * t.d2P_dz2_dzbar2);
}

}  // namespace hua
