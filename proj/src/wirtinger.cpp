#include "hua/wirtinger.hpp"

#include <array>
#include <cmath>

#include "hua/errors.hpp"

namespace hua {

namespace {

constexpr std::array<double, 7> kFirst{-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
constexpr std::array<double, 7> kSecond{1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};

void check_step(double h) {
  if (!(h > 1e-8 && h < 1e-1)) throw DomainError("finite-difference step out of range");
}

/// Evaluates f with real coordinate p (0..2n−1) shifted by dp and q by dq.
class Shifted {
 public:
  Shifted(const Field& f, CSpan z) : f_(f), base_(z), work_(z) {}

  cplx at(std::size_t p, double dp, std::size_t q, double dq) {
    bump(p, dp);
    bump(q, dq);
    const cplx v = f_(work_);
    for (std::size_t i = 0; i < base_.size(); ++i) work_[i] = base_[i];
    return v;
  }

 private:
  void bump(std::size_t p, double d) {
    if (d == 0.0) return;
    work_[p / 2] += (p % 2 == 0) ? cplx(d, 0.0) : cplx(0.0, d);
  }

  const Field& f_;
  CSpan base_;
  ComplexVector work_;
};

Eigen::VectorXcd real_gradient(const Field& f, CSpan z, double h) {
  check_step(h);
  const std::size_t m = 2 * z.size();
  Shifted s(f, z);
  Eigen::VectorXcd g(static_cast<Eigen::Index>(m));
  for (std::size_t p = 0; p < m; ++p) {
    cplx acc = 0.0;
    for (int i = 0; i < 7; ++i)
      if (kFirst[i] != 0.0) acc += kFirst[i] * s.at(p, (i - 3) * h, p, 0.0);
    g[static_cast<Eigen::Index>(p)] = acc / h;
  }
  return g;
}

}  // namespace

Eigen::VectorXcd wirtinger_dz(const Field& f, CSpan z, FiniteDifference fd) {
  const auto g = real_gradient(f, z, fd.step);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(z.size()));
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = 0.5 * (g[2 * k] - cplx(0, 1) * g[2 * k + 1]);
  return out;
}

Eigen::VectorXcd wirtinger_dzbar(const Field& f, CSpan z, FiniteDifference fd) {
  const auto g = real_gradient(f, z, fd.step);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(z.size()));
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = 0.5 * (g[2 * k] + cplx(0, 1) * g[2 * k + 1]);
  return out;
}

Eigen::MatrixXcd wirtinger_hessian(const Field& f, CSpan z, FiniteDifference fd) {
  const double h = fd.step;
  check_step(h);
  const std::size_t m = 2 * z.size();
  Shifted s(f, z);
  Eigen::MatrixXcd R(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  const cplx f0 = s.at(0, 0.0, 0, 0.0);
  for (std::size_t p = 0; p < m; ++p) {
    cplx acc = kSecond[3] * f0;
    for (int i = 0; i < 7; ++i)
      if (i != 3) acc += kSecond[i] * s.at(p, (i - 3) * h, p, 0.0);
    R(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = acc / (h * h);
    for (std::size_t q = p + 1; q < m; ++q) {
      cplx mixed = 0.0;
      for (int i = 0; i < 7; ++i) {
        if (kFirst[i] == 0.0) continue;
        for (int j = 0; j < 7; ++j)
          if (kFirst[j] != 0.0) mixed += kFirst[i] * kFirst[j] * s.at(p, (i - 3) * h, q, (j - 3) * h);
      }
      mixed /= h * h;
      R(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = mixed;
      R(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = mixed;
    }
  }
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXcd H(n, n);
  const cplx I(0, 1);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx xx = R(2 * k, 2 * j), yy = R(2 * k + 1, 2 * j + 1);
      const cplx xy = R(2 * k, 2 * j + 1), yx = R(2 * k + 1, 2 * j);
      H(k, j) = 0.25 * (xx + yy + I * (xy - yx));
    }
  return H;
}

}  // namespace hua
