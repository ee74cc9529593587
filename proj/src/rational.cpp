#include "evco/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

#include "evco/errors.hpp"

namespace evco {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

void check_dims(const RatVector& a, const RatVector& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num.front() == '+' ? num.substr(1) : num);
  mpz_class p(n, 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_display(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

std::string to_string(const RatVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + "]";
}

RatVector zeros(std::size_t dim) { return RatVector(dim, Rational(0)); }

RatVector unit(std::size_t dim, std::size_t index) {
  RatVector e = zeros(dim);
  e.at(index) = 1;
  return e;
}

Rational dot(const RatVector& a, const RatVector& b) {
  check_dims(a, b, "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RatVector add(const RatVector& a, const RatVector& b) {
  check_dims(a, b, "add");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  check_dims(a, b, "sub");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector scale(const Rational& s, const RatVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

RatVector negate(const RatVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

RatVector concat(const RatVector& a, const RatVector& b) {
  RatVector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

RatVector slice(const RatVector& v, std::size_t first, std::size_t count) {
  if (first + count > v.size()) throw DimensionMismatch("slice out of range");
  return RatVector(v.begin() + static_cast<std::ptrdiff_t>(first),
                   v.begin() + static_cast<std::ptrdiff_t>(first + count));
}

std::size_t rank(std::vector<RatVector> rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<Rational> solve_square(std::vector<RatVector> m, RatVector rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == n) return {};
    std::swap(m[c], m[pivot]);
    std::swap(rhs[c], rhs[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      rhs[i] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

}  // namespace evco
