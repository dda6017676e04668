#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "hua/complex_vector.hpp"
#include "hua/test_function.hpp"

namespace hua::testing {

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform point on S^{2n−1}.
inline ComplexVector sphere_point(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  ComplexVector z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[k] = {g(rng), g(rng)};
  return (1.0 / z.norm()) * z;
}

/// Point with |z| uniform in [0, rmax).
inline ComplexVector ball_point(std::mt19937_64& rng, int n, double rmax) {
  std::uniform_real_distribution<double> u(0.0, rmax);
  return cplx(u(rng)) * sphere_point(rng, n);
}

inline cplx random_coeff(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

/// Random holomorphic polynomial on C² with total degree ≤ deg.
inline TestFunction random_holomorphic(std::mt19937_64& rng, int deg, int terms) {
  TestFunction f(2);
  std::uniform_int_distribution<int> d(0, deg);
  for (int t = 0; t < terms; ++t) {
    const int a = d(rng);
    const int b = std::uniform_int_distribution<int>(0, deg - a)(rng);
    f.add_term({a, b}, {0, 0}, random_coeff(rng));
  }
  return f;
}

/// Re of a random holomorphic polynomial: pluriharmonic.
inline TestFunction random_pluriharmonic(std::mt19937_64& rng, int deg, int terms) {
  return random_holomorphic(rng, deg, terms).real_part();
}

inline double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace hua::testing
