#pragma once

#include <Eigen/Dense>
#include <functional>

#include "hua/complex_vector.hpp"

namespace hua {

using Field = std::function<cplx(CSpan)>;

/// Central-difference settings for Wirtinger derivatives of smooth fields.
///
/// Sixth-order stencils on each of the 2n real coordinates; mixed second
/// partials use the tensor product of first-derivative stencils.
struct FiniteDifference {
  double step = 1e-3;
};

/// ∂f/∂z_k = ½(∂_x − i∂_y), k = 0..n−1.
Eigen::VectorXcd wirtinger_dz(const Field& f, CSpan z, FiniteDifference fd = {});
/// ∂f/∂z̄_k = ½(∂_x + i∂_y).
Eigen::VectorXcd wirtinger_dzbar(const Field& f, CSpan z, FiniteDifference fd = {});
/// H(k, j) = ∂²f/∂z_k∂z̄_j.
Eigen::MatrixXcd wirtinger_hessian(const Field& f, CSpan z, FiniteDifference fd = {});

}  // namespace hua
