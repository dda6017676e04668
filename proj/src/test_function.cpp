#include "hua/test_function.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <sstream>

#include "hua/errors.hpp"

namespace hua {

TestFunction::TestFunction(int n) : n_(n) {
  if (n < 1) throw DimensionMismatch("TestFunction dimension must be positive");
}

TestFunction TestFunction::constant(int n, cplx c) {
  TestFunction f(n);
  f.add_term(MultiIndex(static_cast<std::size_t>(n)), MultiIndex(static_cast<std::size_t>(n)), c);
  return f;
}

TestFunction TestFunction::monomial(int n, MultiIndex alpha, MultiIndex beta, cplx c) {
  TestFunction f(n);
  f.add_term(alpha, beta, c);
  return f;
}

TestFunction TestFunction::coordinate(int n, int k) {
  MultiIndex a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  a.at(static_cast<std::size_t>(k)) = 1;
  return monomial(n, a, b);
}

void TestFunction::add_term(const MultiIndex& alpha, const MultiIndex& beta, cplx c) {
  const auto n = static_cast<std::size_t>(n_);
  if (alpha.size() != n || beta.size() != n) throw DimensionMismatch("multi-index length differs from dimension");
  for (std::size_t i = 0; i < n; ++i)
    if (alpha[i] < 0 || beta[i] < 0) throw ParseError("negative exponent");
  const Key key{alpha, beta};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (c != cplx(0.0)) terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
  compile();
}

void TestFunction::compile() {
  compiled_.clear();
  max_exp_ = 0;
  for (const auto& [key, c] : terms_) {
    Compiled t{c, {}};
    t.exps.insert(t.exps.end(), key.first.begin(), key.first.end());
    t.exps.insert(t.exps.end(), key.second.begin(), key.second.end());
    for (int e : t.exps) max_exp_ = std::max(max_exp_, e);
    compiled_.push_back(std::move(t));
  }
}

cplx TestFunction::operator()(CSpan z) const {
  const auto n = static_cast<std::size_t>(n_);
  if (z.size() != n) throw DimensionMismatch("TestFunction evaluated at a point of wrong dimension");
  const auto stride = static_cast<std::size_t>(max_exp_ + 1);
  thread_local std::vector<cplx> pw;
  pw.resize(2 * n * stride);
  for (std::size_t j = 0; j < n; ++j) {
    cplx* p = &pw[j * stride];
    cplx* q = &pw[(n + j) * stride];
    p[0] = q[0] = 1.0;
    const cplx c = std::conj(z[j]);
    for (std::size_t e = 1; e < stride; ++e) {
      p[e] = p[e - 1] * z[j];
      q[e] = q[e - 1] * c;
    }
  }
  cplx sum = 0.0;
  for (const auto& t : compiled_) {
    cplx v = t.coeff;
    for (std::size_t i = 0; i < 2 * n; ++i)
      if (t.exps[i] != 0) v *= pw[i * stride + static_cast<std::size_t>(t.exps[i])];
    sum += v;
  }
  return sum;
}

bool TestFunction::is_holomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    const auto& b = t.first.second;
    return std::all_of(b.begin(), b.end(), [](int e) { return e == 0; });
  });
}

bool TestFunction::is_pluriharmonic() const {
  auto zero = [](const MultiIndex& m) { return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; }); };
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return zero(t.first.first) || zero(t.first.second); });
}

std::pair<int, int> TestFunction::bidegree() const {
  int a = 0, b = 0;
  for (const auto& [key, c] : terms_) {
    int sa = 0, sb = 0;
    for (int e : key.first) sa += e;
    for (int e : key.second) sb += e;
    a = std::max(a, sa);
    b = std::max(b, sb);
  }
  return {a, b};
}

TestFunction TestFunction::dz(int k) const {
  const auto i = static_cast<std::size_t>(k);
  if (k < 0 || k >= n_) throw DimensionMismatch("derivative index out of range");
  TestFunction out(n_);
  for (const auto& [key, c] : terms_) {
    if (key.first[i] == 0) continue;
    MultiIndex a = key.first;
    const int e = a[i]--;
    out.add_term(a, key.second, c * static_cast<double>(e));
  }
  return out;
}

TestFunction TestFunction::dzbar(int k) const {
  const auto i = static_cast<std::size_t>(k);
  if (k < 0 || k >= n_) throw DimensionMismatch("derivative index out of range");
  TestFunction out(n_);
  for (const auto& [key, c] : terms_) {
    if (key.second[i] == 0) continue;
    MultiIndex b = key.second;
    const int e = b[i]--;
    out.add_term(key.first, b, c * static_cast<double>(e));
  }
  return out;
}

TestFunction TestFunction::conj() const {
  TestFunction out(n_);
  for (const auto& [key, c] : terms_) out.add_term(key.second, key.first, std::conj(c));
  return out;
}

TestFunction TestFunction::real_part() const {
  TestFunction out = *this;
  out += conj();
  out *= 0.5;
  return out;
}

TestFunction& TestFunction::operator+=(const TestFunction& o) {
  if (o.n_ != n_) throw DimensionMismatch("adding TestFunctions of different dimension");
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

TestFunction& TestFunction::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    terms_.clear();
  } else {
    for (auto& [key, c] : terms_) c *= s;
  }
  compile();
  return *this;
}

TestFunction operator*(const TestFunction& a, const TestFunction& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("multiplying TestFunctions of different dimension");
  TestFunction out(a.n_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      MultiIndex al = ka.first, be = ka.second;
      for (std::size_t i = 0; i < al.size(); ++i) {
        al[i] += kb.first[i];
        be[i] += kb.second[i];
      }
      out.add_term(al, be, ca * cb);
    }
  return out;
}

// --- text form ------------------------------------------------------------

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_coeff(cplx c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  std::string im = format_double(c.imag());
  if (im.front() != '-') im = "+" + im;
  return "(" + format_double(c.real()) + im + "i)";
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  struct Term {
    cplx coeff = 1.0;
    std::vector<std::pair<int, int>> zs;  // (index, exponent)
    std::vector<std::pair<int, int>> ws;
  };

  std::vector<Term> run() {
    if (s_.empty()) throw ParseError("empty polynomial");
    std::vector<Term> terms;
    for (;;) {
      terms.push_back(term());
      if (pos_ == s_.size()) break;
      expect('+');
    }
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial: " + what + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool number_at(std::size_t p, double& out, std::size_t& end) const {
    if (p < s_.size() && s_[p] == '+') return false;
    const char* b = s_.data() + p;
    const char* e = s_.data() + s_.size();
    auto res = std::from_chars(b, e, out);
    if (res.ec != std::errc()) return false;
    end = static_cast<std::size_t>(res.ptr - s_.data());
    return true;
  }

  /// Complex literal: x, yi, i, x±yi, x±i.
  bool literal(cplx& out) {
    if (peek('(')) {
      ++pos_;
      if (!literal(out)) fail("expected complex literal");
      expect(')');
      return true;
    }
    double x = 0.0;
    std::size_t end = 0;
    if (!number_at(pos_, x, end)) {
      if (peek('i')) {
        ++pos_;
        out = cplx(0.0, 1.0);
        return true;
      }
      if (peek('-') && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'i') {
        pos_ += 2;
        out = cplx(0.0, -1.0);
        return true;
      }
      return false;
    }
    pos_ = end;
    if (peek('i')) {
      ++pos_;
      out = cplx(0.0, x);
      return true;
    }
    out = cplx(x, 0.0);
    // greedy x±yi
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      const double sign = s_[pos_] == '-' ? -1.0 : 1.0;
      std::size_t p = pos_ + 1;
      double y = 1.0;
      std::size_t yend = p;
      if (p < s_.size() && s_[p] != '-' && number_at(p, y, yend)) p = yend;
      else y = 1.0;
      if (p < s_.size() && s_[p] == 'i' && (p + 1 == s_.size() || s_[p + 1] == '*' || s_[p + 1] == '+' ||
                                            s_[p + 1] == ')')) {
        out = cplx(x, sign * y);
        pos_ = p + 1;
      }
    }
    return true;
  }

  std::pair<int, int> variable() {
    ++pos_;  // 'z' or 'w'
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected variable index");
    const int idx = std::stoi(s_.substr(start, pos_ - start));
    if (idx < 1) fail("variable indices start at 1");
    int e = 1;
    if (peek('^')) {
      ++pos_;
      start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      e = std::stoi(s_.substr(start, pos_ - start));
    }
    return {idx, e};
  }

  Term term() {
    Term t;
    bool first = true;
    for (;;) {
      if (peek('z') || peek('w')) {
        const bool conj = peek('w');
        (conj ? t.ws : t.zs).push_back(variable());
      } else if (first) {
        cplx c;
        if (!literal(c)) fail("expected coefficient or variable");
        t.coeff *= c;
      } else {
        fail("expected variable");
      }
      first = false;
      if (!peek('*')) break;
      ++pos_;
      // a second literal factor is allowed too
      if (!(peek('z') || peek('w'))) {
        cplx c;
        if (!literal(c)) fail("expected factor");
        t.coeff *= c;
        if (!peek('*')) break;
        ++pos_;
      }
    }
    return t;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

TestFunction TestFunction::parse(std::string_view text, int n) {
  Parser p(text);
  const auto terms = p.run();
  int needed = 1;
  for (const auto& t : terms) {
    for (const auto& v : t.zs) needed = std::max(needed, v.first);
    for (const auto& v : t.ws) needed = std::max(needed, v.first);
  }
  if (n == 0) n = needed;
  if (needed > n) throw ParseError("polynomial uses variable index above dimension " + std::to_string(n));
  TestFunction f(n);
  for (const auto& t : terms) {
    MultiIndex a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (const auto& [i, e] : t.zs) a[static_cast<std::size_t>(i - 1)] += e;
    for (const auto& [i, e] : t.ws) b[static_cast<std::size_t>(i - 1)] += e;
    f.add_term(a, b, t.coeff);
  }
  return f;
}

std::string TestFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    const bool constant_term = std::all_of(key.first.begin(), key.first.end(), [](int e) { return e == 0; }) &&
                               std::all_of(key.second.begin(), key.second.end(), [](int e) { return e == 0; });
    // a bare constant must not merge with a following "yi" coefficient
    std::string coeff = format_coeff(c);
    if (constant_term && coeff.front() != '(') coeff = "(" + coeff + ")";
    out += coeff;
    for (std::size_t i = 0; i < key.first.size(); ++i)
      if (key.first[i] > 0) out += " * z" + std::to_string(i + 1) + "^" + std::to_string(key.first[i]);
    for (std::size_t i = 0; i < key.second.size(); ++i)
      if (key.second[i] > 0) out += " * w" + std::to_string(i + 1) + "^" + std::to_string(key.second[i]);
  }
  return out;
}

}  // namespace hua
