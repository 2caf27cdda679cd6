#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "forms.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "surface.hpp"

namespace delpezzo {

/// Calls f(coords) for every normalized primitive vector of length `size`
/// with max-norm at most `bound`.
template <typename F> void for_each_normalized(std::size_t size, i64 bound, F &&f) {
  IntVector v(size, -bound);
  for (;;) {
    i64 g = 0;
    for (auto c : v) g = gcd(g, c);
    if (g == 1) {
      auto first = std::find_if(v.begin(), v.end(), [](i64 c) { return c != 0; });
      if (*first > 0) f(std::as_const(v));
    }
    std::size_t i = size;
    while (i > 0 && v[i - 1] == bound) v[--i] = -bound;
    if (i == 0) return;
    ++v[i - 1];
  }
}

[[nodiscard]] inline bool contains_line(const SurfaceRecord &s, const Line &line) {
  const auto &b = line.basis();
  for (const auto &eq : s.equations) {
    auto coeffs = restrict_to_line(eq, b[0], b[1]);
    for (auto c : coeffs)
      if (c != 0) return false;
  }
  return true;
}

/// Every line spanned by two points of height <= coord_bound lying on the surface.
[[nodiscard]] inline std::set<Line> find_rational_lines(const SurfaceRecord &s, i64 coord_bound,
                                                        unsigned threads = 1) {
  if (coord_bound < 1) throw std::invalid_argument("coord_bound must be at least 1");
  std::vector<IntVector> points;
  for_each_normalized(s.num_coords(), coord_bound, [&](const IntVector &v) {
    if (on_surface(s, v)) points.push_back(v);
  });
  auto found = parallel_reduce(
      points.size(), threads, std::set<Line>{},
      [&](std::size_t i, std::set<Line> &acc) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
          // Distinct normalized points are never proportional.
          auto line = Line::through(points[i], points[j]);
          if (acc.contains(line)) continue;
          if (contains_line(s, line)) acc.insert(std::move(line));
        }
      },
      [](std::set<Line> a, const std::set<Line> &b) {
        a.insert(b.begin(), b.end());
        return a;
      });
  return found;
}

[[nodiscard]] inline bool point_on_line(std::span<const i64> p, const Line &line) {
  if (p.size() != line.ambient_size()) throw std::invalid_argument("point and line dimensions differ");
  const auto &b = line.basis();
  return rank({b[0], b[1], IntVector(p.begin(), p.end())}) == 2;
}

[[nodiscard]] inline bool point_on_some_line(const ProjectivePoint &p, std::span<const Line> lines) {
  for (const auto &l : lines)
    if (point_on_line(p.coords(), l)) return true;
  return false;
}

[[nodiscard]] inline bool point_on_some_line(const ProjectivePoint &p, const std::set<Line> &lines) {
  std::vector<Line> v(lines.begin(), lines.end());
  return point_on_some_line(p, std::span<const Line>(v));
}

/// Rank of the Jacobian matrix of the defining forms at p.
[[nodiscard]] inline std::size_t jacobian_rank_at(const SurfaceRecord &s, const ProjectivePoint &p) {
  if (p.size() != s.num_coords()) throw std::invalid_argument("point dimension does not match surface");
  if (!on_surface(s, p)) throw std::invalid_argument("point does not lie on the surface");
  IntMatrix jac;
  for (const auto &eq : s.equations) {
    IntVector row;
    for (int i = 0; i < eq.num_vars(); ++i) row.push_back(narrow(evaluate(eq.derivative(i), p)));
    jac.push_back(std::move(row));
  }
  return rank(jac);
}

/// A point of a complete intersection is singular when its Jacobian drops rank.
[[nodiscard]] inline bool is_singular_point(const SurfaceRecord &s, const ProjectivePoint &p) {
  return jacobian_rank_at(s, p) < s.equations.size();
}

} // namespace delpezzo
