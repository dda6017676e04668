#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hua {

using cplx = std::complex<double>;
using CSpan = std::span<const cplx>;

/// A point of C^n.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : v_(n) {}
  ComplexVector(std::initializer_list<cplx> init) : v_(init) {}
  explicit ComplexVector(std::vector<cplx> v) : v_(std::move(v)) {}
  explicit ComplexVector(CSpan s) : v_(s.begin(), s.end()) {}

  /// k-th standard basis vector e_{k+1} (zero-based k).
  static ComplexVector basis(std::size_t n, std::size_t k);

  std::size_t dim() const { return v_.size(); }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }

  operator CSpan() const { return {v_.data(), v_.size()}; }
  CSpan span() const { return {v_.data(), v_.size()}; }
  std::span<cplx> mutable_span() { return {v_.data(), v_.size()}; }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  double norm2() const;
  double norm() const;
  bool finite() const;

  ComplexVector& operator+=(const ComplexVector& o);
  ComplexVector& operator-=(const ComplexVector& o);
  ComplexVector& operator*=(cplx s);

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(cplx s, ComplexVector a) { return a *= s; }
  friend ComplexVector operator*(ComplexVector a, cplx s) { return a *= s; }
  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

  std::string to_string() const;

 private:
  std::vector<cplx> v_;
};

/// Σ_j z_j·conj(w_j).
cplx hermitian_dot(CSpan z, CSpan w);

double norm2(CSpan z);

/// Parses "re,im;re,im;…" (one pair per coordinate).
ComplexVector parse_point(const std::string& text);

}  // namespace hua
