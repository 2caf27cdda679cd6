#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "linalg.hpp"

namespace delpezzo {

using Exponent = std::vector<int>;

/// A homogeneous polynomial with integer coefficients, stored sparsely.
class IntForm {
public:
  struct Term {
    i64 coef;
    Exponent exps;
  };

  IntForm() = default;

  IntForm(int num_vars, int degree, std::initializer_list<Term> terms)
      : IntForm(num_vars, degree, std::vector<Term>(terms)) {}

  IntForm(int num_vars, int degree, const std::vector<Term> &terms)
      : num_vars_(num_vars), degree_(degree) {
    if (num_vars < 1) throw std::invalid_argument("form needs at least one variable");
    if (degree < 1) throw std::invalid_argument("form degree must be positive");
    for (const auto &t : terms) {
      if (static_cast<int>(t.exps.size()) != num_vars)
        throw std::invalid_argument("exponent vector has wrong length");
      int total = 0;
      for (int e : t.exps) {
        if (e < 0) throw std::invalid_argument("negative exponent");
        total += e;
      }
      if (total != degree) throw std::invalid_argument("form is not homogeneous");
      i64 c = checked_add(terms_[t.exps], t.coef);
      if (c == 0)
        terms_.erase(t.exps);
      else
        terms_[t.exps] = c;
    }
  }

  [[nodiscard]] int num_vars() const noexcept { return num_vars_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] const std::map<Exponent, i64> &terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  /// Largest absolute coefficient times the number of terms; bounds |F(x)| / |x|^deg.
  [[nodiscard]] i128 coefficient_mass() const {
    i128 s = 0;
    for (const auto &[e, c] : terms_) s = checked_add(s, static_cast<i128>(abs_value(c)));
    return s;
  }

  /// Formal partial derivative with respect to variable i.
  [[nodiscard]] IntForm derivative(int i) const {
    if (i < 0 || i >= num_vars_) throw std::out_of_range("derivative index");
    IntForm d;
    d.num_vars_ = num_vars_;
    d.degree_ = degree_ - 1;
    for (const auto &[e, c] : terms_) {
      if (e[static_cast<std::size_t>(i)] == 0) continue;
      Exponent de = e;
      de[static_cast<std::size_t>(i)] -= 1;
      d.terms_[de] = checked_mul(c, static_cast<i64>(e[static_cast<std::size_t>(i)]));
    }
    return d;
  }

  /// Substitute x_i -> sum_j m[i][j] y_j.
  [[nodiscard]] IntForm substitute(const IntMatrix &m) const;

  friend bool operator==(const IntForm &, const IntForm &) = default;

private:
  int num_vars_ = 0;
  int degree_ = 0;
  std::map<Exponent, i64> terms_;
};

/// A primitive integer vector whose first nonzero coordinate is positive.
class ProjectivePoint {
public:
  ProjectivePoint() = default;

  /// Accepts only vectors that already satisfy the invariants.
  static ProjectivePoint from_normalized(IntVector coords) {
    ProjectivePoint p;
    p.coords_ = std::move(coords);
    if (!p.is_valid()) throw std::invalid_argument("vector is not a normalized projective point");
    return p;
  }

  [[nodiscard]] const IntVector &coords() const noexcept { return coords_; }
  [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
  [[nodiscard]] i64 operator[](std::size_t i) const { return coords_[i]; }

  friend auto operator<=>(const ProjectivePoint &, const ProjectivePoint &) = default;

private:
  friend ProjectivePoint normalize(std::span<const i64> v);

  [[nodiscard]] bool is_valid() const {
    i64 g = 0;
    for (auto c : coords_) g = gcd(g, c);
    if (g != 1) return false;
    auto first = std::find_if(coords_.begin(), coords_.end(), [](i64 c) { return c != 0; });
    return *first > 0;
  }

  IntVector coords_;
};

inline ProjectivePoint normalize(std::span<const i64> v) {
  i64 g = 0;
  for (auto c : v) g = gcd(g, c);
  if (g == 0) throw std::invalid_argument("cannot normalize the zero vector");
  auto first = std::find_if(v.begin(), v.end(), [](i64 c) { return c != 0; });
  if (*first < 0) g = -g;
  ProjectivePoint p;
  p.coords_.reserve(v.size());
  for (auto c : v) p.coords_.push_back(c / g);
  return p;
}

inline ProjectivePoint normalize(std::initializer_list<i64> v) {
  return normalize(std::span<const i64>(v.begin(), v.size()));
}

/// Max-norm of a normalized point.
[[nodiscard]] inline i64 height(const ProjectivePoint &p) {
  i64 h = 0;
  for (auto c : p.coords()) h = std::max(h, abs_value(c));
  return h;
}

/// Exact value of the form at an integer vector.
[[nodiscard]] inline i128 evaluate(const IntForm &form, std::span<const i64> point) {
  if (static_cast<int>(point.size()) != form.num_vars())
    throw std::invalid_argument("point dimension does not match form");
  i128 total = 0;
  for (const auto &[e, c] : form.terms()) {
    i128 m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m = checked_mul(m, static_cast<i128>(point[i]));
    total = checked_add(total, m);
  }
  return total;
}

[[nodiscard]] inline i128 evaluate(const IntForm &form, const ProjectivePoint &p) {
  return evaluate(form, std::span<const i64>(p.coords()));
}

/// Binary form in (s, t) with coefficient of s^(d-k) t^k at index k.
using BinaryForm = std::vector<i128>;

namespace detail {

inline BinaryForm multiply(const BinaryForm &a, const BinaryForm &b) {
  BinaryForm r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  return r;
}

} // namespace detail

/// Coefficients of form(s*p + t*q). The form vanishes on the line through p
/// and q iff every coefficient is zero.
[[nodiscard]] inline BinaryForm restrict_to_line(const IntForm &form, std::span<const i64> p,
                                                 std::span<const i64> q) {
  const auto n = static_cast<std::size_t>(form.num_vars());
  if (p.size() != n || q.size() != n) throw std::invalid_argument("line points have wrong dimension");
  if (rank({IntVector(p.begin(), p.end()), IntVector(q.begin(), q.end())}) != 2)
    throw std::invalid_argument("line points are linearly dependent");
  BinaryForm out(static_cast<std::size_t>(form.degree()) + 1, 0);
  for (const auto &[e, c] : form.terms()) {
    BinaryForm m{static_cast<i128>(c)};
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 0; k < e[i]; ++k) m = detail::multiply(m, {p[i], q[i]});
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = checked_add(out[k], m[k]);
  }
  return out;
}

inline IntForm IntForm::substitute(const IntMatrix &m) const {
  const auto n = static_cast<std::size_t>(num_vars_);
  if (m.size() != n) throw std::invalid_argument("substitution matrix has wrong size");
  // Expand each monomial as a product of linear forms, tracking exponent vectors.
  std::map<Exponent, i64> acc;
  for (const auto &[e, c] : terms_) {
    std::map<Exponent, i64> poly{{Exponent(n, 0), c}};
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw std::invalid_argument("substitution matrix has wrong size");
      for (int k = 0; k < e[i]; ++k) {
        std::map<Exponent, i64> next;
        for (const auto &[pe, pc] : poly)
          for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] == 0) continue;
            Exponent ne = pe;
            ++ne[j];
            next[ne] = checked_add(next[ne], checked_mul(pc, m[i][j]));
          }
        poly = std::move(next);
      }
    }
    for (const auto &[pe, pc] : poly) acc[pe] = checked_add(acc[pe], pc);
  }
  std::vector<Term> terms;
  for (const auto &[e, c] : acc)
    if (c != 0) terms.push_back({c, e});
  return IntForm(num_vars_, degree_, terms);
}

/// Same form up to an overall sign.
[[nodiscard]] inline bool equal_up_to_sign(const IntForm &a, const IntForm &b) {
  if (a == b) return true;
  if (a.num_vars() != b.num_vars() || a.degree() != b.degree() ||
      a.terms().size() != b.terms().size())
    return false;
  return std::all_of(a.terms().begin(), a.terms().end(), [&](const auto &kv) {
    auto it = b.terms().find(kv.first);
    return it != b.terms().end() && it->second == -kv.second;
  });
}

/// Parses expressions such as "x0*x1 - 2*x2^2 + x3*x4" into a homogeneous form.
/// Only sums of signed monomials are accepted; parentheses are not.
[[nodiscard]] inline IntForm parse_form(std::string_view text, int num_vars) {
  std::vector<IntForm::Term> terms;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const char *why) -> void {
    throw std::invalid_argument(std::string("cannot parse form '") + std::string(text) + "': " + why);
  };
  auto read_int = [&]() -> i64 {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos) fail("expected a number");
    i64 v = 0;
    for (std::size_t i = start; i < pos; ++i) v = checked_add(checked_mul(v, 10), text[i] - '0');
    return v;
  };
  int degree = -1;
  skip_ws();
  while (pos < text.size()) {
    i64 sgn = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sgn = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!terms.empty()) {
      fail("expected '+' or '-'");
    }
    i64 coef = 1;
    Exponent e(static_cast<std::size_t>(num_vars), 0);
    bool first_factor = true;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9' && first_factor) {
        coef = read_int();
      } else if (pos < text.size() && text[pos] == 'x') {
        ++pos;
        i64 idx = read_int();
        if (idx >= num_vars) fail("variable index out of range");
        int power = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          power = static_cast<int>(read_int());
        }
        e[static_cast<std::size_t>(idx)] += power;
      } else {
        fail("expected a coefficient or variable");
      }
      first_factor = false;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    int d = 0;
    for (int v : e) d += v;
    if (degree < 0) degree = d;
    if (d != degree) fail("not homogeneous");
    terms.push_back({sgn * coef, std::move(e)});
    skip_ws();
  }
  if (terms.empty()) fail("empty expression");
  return IntForm(num_vars, degree, terms);
}

} // namespace delpezzo

template <> struct std::hash<delpezzo::ProjectivePoint> {
  std::size_t operator()(const delpezzo::ProjectivePoint &p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto c : p.coords()) h ^= std::hash<long long>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
