#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "arith.hpp"

namespace delpezzo {

using IntVector = std::vector<i64>;
using IntMatrix = std::vector<IntVector>;

namespace detail {

using WideMatrix = std::vector<std::vector<i128>>;

inline WideMatrix widen(const IntMatrix &m) {
  WideMatrix w;
  w.reserve(m.size());
  for (const auto &row : m) w.emplace_back(row.begin(), row.end());
  return w;
}

inline void make_primitive(std::vector<i128> &row) {
  i128 g = 0;
  for (auto v : row) g = gcd(g, v);
  if (g > 1)
    for (auto &v : row) v /= g;
}

inline void check_rectangular(const IntMatrix &m) {
  for (const auto &row : m)
    if (row.size() != m.front().size()) throw std::invalid_argument("ragged matrix");
}

} // namespace detail

/// Exact rank over Q by fraction-free (Bareiss) elimination.
[[nodiscard]] inline std::size_t rank(const IntMatrix &m) {
  if (m.empty()) return 0;
  detail::check_rectangular(m);
  auto a = detail::widen(m);
  const std::size_t rows = a.size(), cols = a.front().size();
  std::size_t r = 0;
  i128 prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a[i][j] = checked_sub(checked_mul(a[r][c], a[i][j]), checked_mul(a[i][c], a[r][j])) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Row-reduced echelon form scaled so every row is a primitive integer vector
/// with positive leading entry. Zero rows are dropped. Two matrices span the
/// same row space iff their canonical forms are identical.
[[nodiscard]] inline IntMatrix canonical_row_space(const IntMatrix &m) {
  if (m.empty()) return {};
  detail::check_rectangular(m);
  auto a = detail::widen(m);
  const std::size_t rows = a.size(), cols = a.front().size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    detail::make_primitive(a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      i128 g = gcd(a[r][c], a[i][c]);
      i128 mr = a[i][c] / g, mi = a[r][c] / g;
      for (std::size_t j = 0; j < cols; ++j)
        a[i][j] = checked_sub(checked_mul(mi, a[i][j]), checked_mul(mr, a[r][j]));
      detail::make_primitive(a[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  IntMatrix out;
  for (std::size_t i = 0; i < r; ++i) {
    auto &row = a[i];
    if (row[pivots[i]] < 0)
      for (auto &v : row) v = -v;
    IntVector narrow_row;
    narrow_row.reserve(cols);
    for (auto v : row) narrow_row.push_back(narrow(v));
    out.push_back(std::move(narrow_row));
  }
  return out;
}

} // namespace delpezzo
