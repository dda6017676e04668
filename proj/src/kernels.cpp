#include "hua/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hua/errors.hpp"

namespace hua {

std::string_view kernel_name(KernelId id) {
  switch (id) {
    case KernelId::bergman: return "bergman";
    case KernelId::szego: return "szego";
    case KernelId::poisson_szego: return "poisson-szego";
    case KernelId::poisson_bergman: return "poisson-bergman";
  }
  return "?";
}

KernelId parse_kernel(std::string_view name) {
  std::string s(name);
  for (auto& c : s)
    if (c == '_') c = '-';
  if (s == "bergman") return KernelId::bergman;
  if (s == "szego") return KernelId::szego;
  if (s == "poisson-szego") return KernelId::poisson_szego;
  if (s == "poisson-bergman") return KernelId::poisson_bergman;
  throw ParseError("unknown kernel '" + std::string(name) + "'");
}

double bergman_constant(int n) { return 1.0 / ball_volume(n); }

double szego_constant(int n) { return 1.0 / sphere_area(n); }

namespace {

void check_pair(const DomainSpec& domain, CSpan z, CSpan zeta, const char* what) {
  require_in(domain, z, true, what);
  require_in(domain, zeta, true, what);
}

cplx pole_gap(CSpan z, CSpan zeta, const char* what) {
  const cplx w = 1.0 - hermitian_dot(z, zeta);
  if (w == 0.0) throw PoleError(std::string(what) + ": pole at ⟨z,ζ⟩ = 1");
  return w;
}

/// w^{−p}
cplx inverse_power(cplx w, int p) {
  if (std::abs(w) < kLogSpaceThreshold) return std::exp(-static_cast<double>(p) * std::log(w));
  cplx acc = 1.0;
  for (int i = 0; i < p; ++i) acc *= w;
  return 1.0 / acc;
}

/// |w|^{−2p}
double inverse_abs_power(cplx w, int p) {
  const double a2 = std::norm(w);
  if (std::abs(w) < kLogSpaceThreshold) return std::exp(-static_cast<double>(p) * std::log(a2));
  double acc = 1.0;
  for (int i = 0; i < p; ++i) acc *= a2;
  return 1.0 / acc;
}

double ipow(double x, int p) {
  double acc = 1.0;
  for (int i = 0; i < p; ++i) acc *= x;
  return acc;
}

void require_interior(CSpan z, const char* what) {
  if (!(norm2(z) < 1.0)) throw DomainError(std::string(what) + ": z must lie in the open ball");
}

}  // namespace

cplx bergman_kernel(const DomainSpec& domain, CSpan z, CSpan zeta) {
  check_pair(domain, z, zeta, "bergman_kernel");
  const int n = domain.dim();
  return bergman_constant(n) * inverse_power(pole_gap(z, zeta, "bergman_kernel"), n + 1);
}

cplx szego_kernel(const DomainSpec& domain, CSpan z, CSpan zeta) {
  check_pair(domain, z, zeta, "szego_kernel");
  const int n = domain.dim();
  return szego_constant(n) * inverse_power(pole_gap(z, zeta, "szego_kernel"), n);
}

double poisson_szego(const DomainSpec& domain, CSpan z, CSpan zeta) {
  check_pair(domain, z, zeta, "poisson_szego");
  require_interior(z, "poisson_szego");
  const int n = domain.dim();
  const double d = 1.0 - norm2(z);
  return szego_constant(n) * ipow(d, n) * inverse_abs_power(pole_gap(z, zeta, "poisson_szego"), n);
}

double poisson_szego_quotient(const DomainSpec& domain, CSpan z, CSpan zeta) {
  require_interior(z, "poisson_szego_quotient");
  const cplx s = szego_kernel(domain, z, zeta);
  return std::norm(s) / szego_kernel(domain, z, z).real();
}

double poisson_bergman(const DomainSpec& domain, CSpan z, CSpan zeta) {
  check_pair(domain, z, zeta, "poisson_bergman");
  require_interior(z, "poisson_bergman");
  const int n = domain.dim();
  const double d = 1.0 - norm2(z);
  return bergman_constant(n) * ipow(d, n + 1) *
         inverse_abs_power(pole_gap(z, zeta, "poisson_bergman"), n + 1);
}

double poisson_bergman_quotient(const DomainSpec& domain, CSpan z, CSpan zeta) {
  require_interior(z, "poisson_bergman_quotient");
  const cplx k = bergman_kernel(domain, z, zeta);
  return std::norm(k) / bergman_kernel(domain, z, z).real();
}

cplx evaluate_kernel(KernelId id, const DomainSpec& domain, CSpan z, CSpan zeta) {
  switch (id) {
    case KernelId::bergman: return bergman_kernel(domain, z, zeta);
    case KernelId::szego: return szego_kernel(domain, z, zeta);
    case KernelId::poisson_szego: return poisson_szego(domain, z, zeta);
    case KernelId::poisson_bergman: return poisson_bergman(domain, z, zeta);
  }
  return 0.0;
}

double bergman_law_residual(const Automorphism& phi, CSpan z, CSpan zeta, double step) {
  const auto domain = DomainSpec::ball(static_cast<int>(phi.dim()));
  require_interior(z, "bergman_law_residual");
  require_interior(zeta, "bergman_law_residual");
  const ComplexVector fz = phi(z), fzeta = phi(zeta);
  const cplx lhs = complex_jacobian_det(phi, z, step) * bergman_kernel(domain, fz, fzeta) *
                   std::conj(complex_jacobian_det(phi, zeta, step));
  const cplx rhs = bergman_kernel(domain, z, zeta);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double berezin_law_residual(const Automorphism& phi, CSpan z, CSpan zeta, double step) {
  const auto domain = DomainSpec::ball(static_cast<int>(phi.dim()));
  require_interior(z, "berezin_law_residual");
  require_interior(zeta, "berezin_law_residual");
  const ComplexVector fz = phi(z), fzeta = phi(zeta);
  const double lhs = poisson_bergman(domain, fz, fzeta) * std::norm(complex_jacobian_det(phi, zeta, step));
  const double rhs = poisson_bergman(domain, z, zeta);
  return std::abs(lhs - rhs) / rhs;
}

}  // namespace hua
