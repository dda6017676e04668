#include "hua/complex_vector.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hua/errors.hpp"

namespace hua {

ComplexVector ComplexVector::basis(std::size_t n, std::size_t k) {
  if (k >= n) throw DimensionMismatch("basis index out of range");
  ComplexVector e(n);
  e[k] = 1.0;
  return e;
}

double ComplexVector::norm2() const { return hua::norm2(span()); }

double ComplexVector::norm() const { return std::sqrt(norm2()); }

bool ComplexVector::finite() const {
  for (const auto& c : v_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& o) {
  if (o.dim() != dim()) throw DimensionMismatch("vector addition");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& o) {
  if (o.dim() != dim()) throw DimensionMismatch("vector subtraction");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(cplx s) {
  for (auto& c : v_) c *= s;
  return *this;
}

std::string ComplexVector::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) os << ';';
    os << v_[i].real() << ',' << v_[i].imag();
  }
  return os.str();
}

cplx hermitian_dot(CSpan z, CSpan w) {
  if (z.size() != w.size())
    throw DimensionMismatch("hermitian_dot: dimensions " + std::to_string(z.size()) + " and " +
                            std::to_string(w.size()));
  cplx s = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

double norm2(CSpan z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

namespace {

double parse_double(std::string_view s, const std::string& whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad coordinate literal '" + std::string(s) + "' in '" + whole + "'");
  return v;
}

}  // namespace

ComplexVector parse_point(const std::string& text) {
  std::vector<cplx> coords;
  std::string_view rest = text;
  while (true) {
    auto semi = rest.find(';');
    std::string_view item = rest.substr(0, semi);
    auto comma = item.find(',');
    if (comma == std::string_view::npos) {
      coords.emplace_back(parse_double(item, text), 0.0);
    } else {
      coords.emplace_back(parse_double(item.substr(0, comma), text),
                          parse_double(item.substr(comma + 1), text));
    }
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  ComplexVector z(std::move(coords));
  if (!z.finite()) throw ParseError("non-finite coordinate in '" + text + "'");
  return z;
}

}  // namespace hua
