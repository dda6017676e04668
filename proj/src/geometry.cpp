#include "hua/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hua/automorphism.hpp"
#include "hua/errors.hpp"

namespace hua {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double ball_volume(int n) { return std::pow(std::numbers::pi, n) / factorial(n); }

double sphere_area(int n) { return 2.0 * std::pow(std::numbers::pi, n) / factorial(n - 1); }

DomainSpec DomainSpec::ball(int n) {
  if (n < 1) throw DimensionMismatch("ball dimension must be positive");
  return DomainSpec(DomainKind::ball, n);
}

double DomainSpec::volume() const { return ball_volume(n_); }

double DomainSpec::sphere_area() const { return hua::sphere_area(n_); }

bool contains(const DomainSpec& domain, CSpan z, bool closed) {
  if (static_cast<int>(z.size()) != domain.dim())
    throw DimensionMismatch("point of dimension " + std::to_string(z.size()) +
                            " tested against domain of dimension " + std::to_string(domain.dim()));
  const double r2 = norm2(z);
  return closed ? r2 <= 1.0 + 2.0 * kBoundaryTolerance : r2 < 1.0;
}

void require_in(const DomainSpec& domain, CSpan z, bool closed, const char* what) {
  if (!contains(domain, z, closed))
    throw DomainError(std::string(what) + ": point " + ComplexVector(z).to_string() + " outside the " +
                      (closed ? "closed" : "open") + " domain");
}

double rho(CSpan z, CSpan zeta) { return std::sqrt(std::abs(1.0 - hermitian_dot(z, zeta))); }

namespace {

/// Uniform sample in the ball of C^m (real dimension 2m) of the given radius.
void sample_ball(std::mt19937_64& rng, std::size_t m, double radius, std::span<cplx> out) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  double len2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = cplx(gauss(rng), gauss(rng));
    len2 += std::norm(out[i]);
  }
  const double scale = radius * std::pow(unif(rng), 1.0 / (2.0 * static_cast<double>(m))) / std::sqrt(len2);
  for (std::size_t i = 0; i < m; ++i) out[i] *= scale;
}

}  // namespace

QuasiBallAverage quasi_ball_average(CSpan z, double r, const DomainSpec& domain, const QuadratureSpec& mc,
                                    const std::function<double(CSpan)>& g) {
  require_in(domain, z, true, "quasi_ball_volume");
  if (!(r > 0.0)) throw DomainError("quasi-ball radius must be positive");
  if (mc.samples < 1000) throw ConfigError("Monte Carlo needs at least 1000 samples");

  const auto n = static_cast<std::size_t>(domain.dim());
  const double zn = std::sqrt(norm2(z));
  const double r2 = r * r;
  QuasiBallAverage out;
  out.volume.draws = mc.samples;

  // |1 − ⟨z,ζ⟩| ≥ 1 − |z| on the closed ball, so small radii give the empty set.
  if (r2 <= 1.0 - zn) {
    out.volume.empty = true;
    return out;
  }

  // Bounding region: ζ = w·u + ζ_⊥, w in a disc, ζ_⊥ in a ball of C^{n−1}.
  bool whole_ball = zn < 1e-14;
  cplx center = 0.0;
  double disc_radius = 1.0, perp_radius = 0.0;
  Eigen::MatrixXcd frame;
  if (!whole_ball) {
    frame = unitary_with_first_column(z);
    const double c = 1.0 / zn, rho_w = r2 / zn;
    if (rho_w < 1.0) {
      center = c;
      disc_radius = rho_w;
    }
    const double wmin = std::max(0.0, c - rho_w);
    perp_radius = wmin < 1.0 ? std::sqrt(1.0 - wmin * wmin) : 0.0;
  }
  const double bound_volume = whole_ball ? domain.volume()
                                         : std::numbers::pi * disc_radius * disc_radius *
                                               (n > 1 ? ball_volume(static_cast<int>(n - 1)) *
                                                            std::pow(perp_radius, 2.0 * static_cast<double>(n - 1))
                                                      : 1.0);

  std::mt19937_64 rng(mc.seed);
  std::uniform_real_distribution<double> unif;
  ComplexVector zeta(n), local(n);
  std::size_t hits = 0;
  double sum = 0.0, sum2 = 0.0, comp = 0.0;
  for (std::size_t s = 0; s < mc.samples; ++s) {
    if (whole_ball) {
      sample_ball(rng, n, 1.0, zeta.mutable_span());
    } else {
      const double rad = disc_radius * std::sqrt(unif(rng));
      const double ang = 2.0 * std::numbers::pi * unif(rng);
      local[0] = center + std::polar(rad, ang);
      if (n > 1) sample_ball(rng, n - 1, perp_radius, local.mutable_span().subspan(1));
      for (std::size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          acc += frame(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * local[k];
        zeta[i] = acc;
      }
    }
    if (zeta.norm2() >= 1.0) continue;
    if (!(rho(z, zeta) < r)) continue;
    ++hits;
    if (g) {
      const double v = g(zeta);
      // Kahan-compensated running sum
      const double y = v - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      sum2 += v * v;
    }
  }
  const double N = static_cast<double>(mc.samples);
  const double p = static_cast<double>(hits) / N;
  out.volume.hits = hits;
  out.volume.value = bound_volume * p;
  out.volume.std_error = bound_volume * std::sqrt(p * (1.0 - p) / N);
  out.volume.empty = hits == 0;
  if (g && hits > 0) {
    const double h = static_cast<double>(hits);
    out.mean = sum / h;
    const double var = std::max(0.0, sum2 / h - out.mean * out.mean);
    out.mean_std_error = hits > 1 ? std::sqrt(var / (h - 1.0)) : 0.0;
  }
  return out;
}

VolumeEstimate quasi_ball_volume(CSpan z, double r, const DomainSpec& domain, const QuadratureSpec& mc) {
  return quasi_ball_average(z, r, domain, mc, nullptr).volume;
}

bool admissible_contains(CSpan P, double alpha, CSpan z) {
  if (!(alpha > 1.0)) throw DomainError("aperture must exceed 1");
  if (P.size() != z.size()) throw DimensionMismatch("admissible_contains");
  if (std::abs(std::sqrt(norm2(P)) - 1.0) > kBoundaryTolerance)
    throw DomainError("admissible_contains: P must lie on the unit sphere");
  const double z2 = norm2(z);
  if (!(z2 < 1.0)) throw DomainError("admissible_contains: z must lie in the open ball");
  return std::abs(1.0 - hermitian_dot(z, P)) < alpha * (1.0 - z2);
}

}  // namespace hua
