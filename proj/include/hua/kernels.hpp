#pragma once

#include <string_view>

#include "hua/automorphism.hpp"
#include "hua/complex_vector.hpp"
#include "hua/geometry.hpp"

namespace hua {

enum class KernelId { bergman, szego, poisson_szego, poisson_bergman };

std::string_view kernel_name(KernelId id);
/// Accepts "bergman", "szego", "poisson-szego", "poisson-bergman" (and '_' forms).
KernelId parse_kernel(std::string_view name);

/// n!/π^n = 1/V(B).
double bergman_constant(int n);
/// (n−1)!/(2π^n) = 1/σ(S^{2n−1}); fixed by ∫ S(0,ζ) dσ(ζ) = 1.
double szego_constant(int n);

/// Below this |1 − ⟨z,ζ⟩| kernel powers are formed through logarithms.
inline constexpr double kLogSpaceThreshold = 1e-6;

cplx bergman_kernel(const DomainSpec& domain, CSpan z, CSpan zeta);
cplx szego_kernel(const DomainSpec& domain, CSpan z, CSpan zeta);

/// Closed form c_n^S (1−|z|²)^n / |1 − ⟨z,ζ⟩|^{2n}.
double poisson_szego(const DomainSpec& domain, CSpan z, CSpan zeta);
/// |S(z,ζ)|² / S(z,z).
double poisson_szego_quotient(const DomainSpec& domain, CSpan z, CSpan zeta);

/// Closed form (n!/π^n)(1−|z|²)^{n+1} / |1 − ⟨z,ζ⟩|^{2n+2}.
double poisson_bergman(const DomainSpec& domain, CSpan z, CSpan zeta);
/// |K(z,ζ)|² / K(z,z).
double poisson_bergman_quotient(const DomainSpec& domain, CSpan z, CSpan zeta);

/// Kernel by id; Hua kernels return their (real) closed form.
cplx evaluate_kernel(KernelId id, const DomainSpec& domain, CSpan z, CSpan zeta);

/// |det J φ(z) K(φz,φζ) conj det J φ(ζ) − K(z,ζ)| / |K(z,ζ)| on the ball.
double bergman_law_residual(const Automorphism& phi, CSpan z, CSpan zeta, double step = 1e-5);

/// |B(φz,φζ) |det J φ(ζ)|² − B(z,ζ)| / B(z,ζ) on the ball.
double berezin_law_residual(const Automorphism& phi, CSpan z, CSpan zeta, double step = 1e-5);

}  // namespace hua
