#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forms.hpp"
#include "linalg.hpp"

namespace delpezzo {

/// A projective line, stored as the canonical 2 x (n+1) basis of its row space.
class Line {
public:
  Line() = default;

  /// The line through two independent integer vectors.
  static Line through(std::span<const i64> p, std::span<const i64> q) {
    if (p.size() != q.size()) throw std::invalid_argument("line points have different dimensions");
    return from_basis({IntVector(p.begin(), p.end()), IntVector(q.begin(), q.end())});
  }

  static Line from_basis(const IntMatrix &rows) {
    if (rows.size() != 2) throw std::invalid_argument("a line basis has two rows");
    Line l;
    l.basis_ = canonical_row_space(rows);
    if (l.basis_.size() != 2) throw std::invalid_argument("line basis rows are dependent");
    return l;
  }

  [[nodiscard]] const IntMatrix &basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t ambient_size() const noexcept {
    return basis_.empty() ? 0 : basis_.front().size();
  }

  friend auto operator<=>(const Line &, const Line &) = default;

private:
  IntMatrix basis_;
};

/// One surface of the catalog.
struct SurfaceRecord {
  std::string id;
  int ambient_dim = 0;
  std::vector<IntForm> equations;
  std::string singularity_type;
  int geometric_line_count = 0;
  std::optional<int> picard_rank;
  std::vector<Line> known_lines;
  std::vector<ProjectivePoint> known_singular_points;
  std::vector<std::string> notes;
  /// For alternative models: id of the model this one is obtained from, and
  /// the matrix M with new_equation(y) = +-old_equation(M y).
  std::optional<std::string> model_of;
  std::optional<IntMatrix> substitution;

  /// Degree of the defining equations (2 for quartics, 3 for cubics).
  [[nodiscard]] int equation_degree() const { return equations.empty() ? 0 : equations.front().degree(); }
  /// Degree d of the surface as a del Pezzo surface in P^d.
  [[nodiscard]] int surface_degree() const { return ambient_dim; }
  [[nodiscard]] std::size_t num_coords() const { return static_cast<std::size_t>(ambient_dim) + 1; }

  friend bool operator==(const SurfaceRecord &, const SurfaceRecord &) = default;
};

[[nodiscard]] inline bool on_surface(const SurfaceRecord &s, std::span<const i64> v) {
  for (const auto &eq : s.equations)
    if (evaluate(eq, v) != 0) return false;
  return true;
}

[[nodiscard]] inline bool on_surface(const SurfaceRecord &s, const ProjectivePoint &p) {
  return on_surface(s, std::span<const i64>(p.coords()));
}

} // namespace delpezzo
