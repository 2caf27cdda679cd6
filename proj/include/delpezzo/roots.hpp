#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "arith.hpp"

namespace delpezzo {

/// Exact value of sum c[k] t^k.
[[nodiscard]] inline i128 eval_poly(std::span<const i128> c, i64 t) {
  i128 v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = checked_add(checked_mul(v, static_cast<i128>(t)), c[k]);
  return v;
}

namespace detail {

/// Integer zeros of c on [lo, hi], assuming c is monotone there.
inline void monotone_zero(std::span<const i128> c, i64 lo, i64 hi, std::vector<i64> &out) {
  if (lo > hi) return;
  int slo = sign(eval_poly(c, lo)), shi = sign(eval_poly(c, hi));
  if (slo == 0) {
    out.push_back(lo);
    return;
  }
  if (shi == 0) {
    out.push_back(hi);
    return;
  }
  if (slo == shi) return;
  while (hi - lo > 1) {
    i64 mid = lo + (hi - lo) / 2;
    int s = sign(eval_poly(c, mid));
    if (s == 0) {
      out.push_back(mid);
      return;
    }
    (s == slo ? lo : hi) = mid;
  }
}

/// An integer interval guaranteed to contain every real zero of a*t^2 + b*t + c.
inline std::vector<std::pair<i128, i128>> quadratic_root_brackets(i128 a, i128 b, i128 c) {
  std::vector<std::pair<i128, i128>> out;
  if (a == 0) {
    if (b == 0) return out;
    i128 f = floor_div(-c, b);
    out.push_back({f, f + 1});
    return out;
  }
  i128 disc = checked_sub(checked_mul(b, b), checked_mul(checked_mul(a, c), 4));
  if (disc < 0) return out;
  i128 s = isqrt(disc); // sqrt(disc) lies in [s, s + 1]
  i128 two_a = checked_mul(a, 2);
  for (int pm : {-1, 1}) {
    i128 n_lo = -b + pm * s, n_hi = -b + pm * (s + 1);
    if (n_lo > n_hi) std::swap(n_lo, n_hi);
    i128 lo = two_a > 0 ? floor_div(n_lo, two_a) : floor_div(n_hi, two_a);
    i128 hi = two_a > 0 ? ceil_div(n_hi, two_a) : ceil_div(n_lo, two_a);
    out.push_back({lo, hi});
  }
  return out;
}

} // namespace detail

/// Sorted integer zeros in [lo, hi] of the polynomial sum c[k] t^k of degree
/// at most 3. Returns every integer in range when c is identically zero.
/// Higher degrees fall back to a scan.
[[nodiscard]] inline std::vector<i64> integer_roots(std::span<const i128> coeffs, i64 lo, i64 hi) {
  std::vector<i64> out;
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0) --deg;
  auto c = coeffs.first(deg);
  if (lo > hi) return out;
  if (deg == 0) {
    for (i64 t = lo; t <= hi; ++t) out.push_back(t);
    return out;
  }
  if (deg == 1) return out;
  if (deg == 2) {
    if (c[0] % c[1] == 0) {
      i128 t = -c[0] / c[1];
      if (t >= lo && t <= hi) out.push_back(static_cast<i64>(t));
    }
    return out;
  }
  if (deg > 4) {
    for (i64 t = lo; t <= hi; ++t)
      if (eval_poly(c, t) == 0) out.push_back(t);
    return out;
  }
  // Split [lo, hi] at brackets around the critical points; the polynomial is
  // monotone between brackets, and bracket cells are checked point by point.
  std::vector<std::pair<i128, i128>> brackets;
  if (deg == 3) {
    i128 t = floor_div(-c[1], checked_mul(c[2], 2));
    brackets.push_back({t, t + 1});
  } else {
    brackets = detail::quadratic_root_brackets(checked_mul(c[3], 3), checked_mul(c[2], 2), c[1]);
  }
  std::sort(brackets.begin(), brackets.end());
  i64 cursor = lo;
  for (auto [wide_lo, wide_hi] : brackets) {
    auto blo = static_cast<i64>(std::max<i128>(wide_lo - 1, lo));
    auto bhi = static_cast<i64>(std::min<i128>(wide_hi + 1, hi));
    if (blo > bhi) continue;
    if (blo > cursor) detail::monotone_zero(c, cursor, blo - 1, out);
    for (i64 t = std::max(blo, cursor); t <= bhi; ++t)
      if (eval_poly(c, t) == 0) out.push_back(t);
    cursor = std::max(cursor, bhi + 1);
  }
  detail::monotone_zero(c, cursor, hi, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace delpezzo
