#pragma once

#include <array>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "parallel.hpp"
#include "torsor_s3.hpp"

namespace delpezzo {

struct budget_exceeded : std::length_error {
  using std::length_error::length_error;
};

struct DyadicLimits {
  i64 max_ternary_product = 1 << 12; // K1 * ... * K7
  i64 max_grid_bound = 10'000;       // B for complete dyadic grids
  i64 max_box_bound = 1'000'000;     // B for a single box
};

// ---------------------------------------------------------------------------
// Ternary equation  m1 m2 - m3 m4 m5 + m6 m7 = 0,  gcd(m1 m2, m3 m4 m5) = 1,
// with K_k < |m_k| <= 2 K_k.

struct TernaryBox {
  std::array<i64, 7> K{1, 1, 1, 1, 1, 1, 1};

  [[nodiscard]] i64 product() const {
    i64 p = 1;
    for (auto k : K) p = checked_mul(p, k);
    return p;
  }
  /// K1 K2 K3 K4 K5, the size the count is compared against.
  [[nodiscard]] i64 scale() const { return K[0] * K[1] * K[2] * K[3] * K[4]; }

  friend auto operator<=>(const TernaryBox &, const TernaryBox &) = default;
};

struct TernaryOptions {
  bool require_coprime = true;
  const DivisorTable *divisors = nullptr; // must cover 8 K3 K4 K5 + 4 K6 K7 when given
};

namespace detail {

inline void validate(const TernaryBox &box, const DyadicLimits &limits) {
  for (auto k : box.K)
    if (k < 1) throw std::invalid_argument("ternary box endpoints must be positive");
  if (box.product() > limits.max_ternary_product)
    throw budget_exceeded("K1...K7 = " + std::to_string(box.product()) + " exceeds the budget " +
                          std::to_string(limits.max_ternary_product));
}

inline i64 ternary_rhs_limit(const TernaryBox &b) {
  return 8 * b.K[2] * b.K[3] * b.K[4] + 4 * b.K[5] * b.K[6];
}

} // namespace detail

/// Number of integer 7-tuples in the shells satisfying the equation (and the
/// coprimality condition unless disabled). The magnitudes of m3..m7 are
/// enumerated; sign patterns are folded by symmetry (four sign choices give
/// each sign of m3 m4 m5, two each sign of m6 m7), and m1 m2 is split over
/// divisor pairs.
[[nodiscard]] inline long long count_ternary(const TernaryBox &box, TernaryOptions opt = {},
                                             const DyadicLimits &limits = {}) {
  detail::validate(box, limits);
  const auto &K = box.K;
  std::vector<i64> scratch;
  auto for_divisors = [&](i64 n, auto &&f) {
    if (opt.divisors && n <= opt.divisors->limit()) {
      auto [b, e] = opt.divisors->of(n);
      for (auto it = b; it != e; ++it) f(static_cast<i64>(*it));
    } else {
      scratch = divisors(n);
      for (auto d : scratch) f(d);
    }
  };
  long long total = 0;
  for (i64 a3 = K[2] + 1; a3 <= 2 * K[2]; ++a3)
    for (i64 a4 = K[3] + 1; a4 <= 2 * K[3]; ++a4)
      for (i64 a5 = K[4] + 1; a5 <= 2 * K[4]; ++a5) {
        const i64 P = a3 * a4 * a5;
        for (i64 a6 = K[5] + 1; a6 <= 2 * K[5]; ++a6)
          for (i64 a7 = K[6] + 1; a7 <= 2 * K[6]; ++a7) {
            const i64 Q = a6 * a7;
            for (i64 R : {abs_value(P - Q), P + Q}) { // |m1 m2| for the two relative signs
              if (R == 0) continue;
              if (opt.require_coprime && gcd(R, P) != 1) continue;
              long long pairs = 0;
              for_divisors(R, [&](i64 d) {
                if (d > K[0] && d <= 2 * K[0]) {
                  i64 e = R / d;
                  if (e > K[1] && e <= 2 * K[1]) ++pairs;
                }
              });
              // Given |m1 m2| = R: 2 overall signs of the equation, 4 sign
              // vectors of (m3, m4, m5) and 2 of (m6, m7) per product sign,
              // and 2 choices for the sign of m1.
              total += pairs * 2 * 4 * 2 * 2;
            }
          }
      }
  return total;
}

struct TernaryBoundReport {
  double max_ratio = 0;
  TernaryBox argmax{};
  std::size_t boxes = 0;
};

/// Every box with power-of-two endpoints and K1...K7 <= max_product.
[[nodiscard]] inline std::vector<TernaryBox> ternary_grid(i64 max_product) {
  std::vector<TernaryBox> out;
  TernaryBox b;
  std::function<void(std::size_t, i64)> rec = [&](std::size_t k, i64 prod) {
    if (k == 7) {
      out.push_back(b);
      return;
    }
    for (i64 v = 1; prod * v <= max_product; v *= 2) {
      b.K[k] = v;
      rec(k + 1, prod * v);
    }
    b.K[k] = 1;
  };
  rec(0, 1);
  return out;
}

/// Largest M / (K1 K2 K3 K4 K5) over the boxes. Ties keep the earliest box.
[[nodiscard]] inline TernaryBoundReport check_ternary_bound(const std::vector<TernaryBox> &boxes,
                                                            unsigned threads = 1,
                                                            const DyadicLimits &limits = {},
                                                            std::vector<long long> *counts = nullptr) {
  i64 rmax = 1;
  for (const auto &b : boxes) {
    detail::validate(b, limits);
    rmax = std::max(rmax, detail::ternary_rhs_limit(b));
  }
  DivisorTable table(rmax);
  std::vector<long long> M(boxes.size());
  parallel_reduce(
      boxes.size(), threads, 0,
      [&](std::size_t i, int &) { M[i] = count_ternary(boxes[i], {true, &table}, limits); },
      [](int a, int) { return a; });
  TernaryBoundReport rep;
  rep.boxes = boxes.size();
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    double r = static_cast<double>(M[i]) / static_cast<double>(boxes[i].scale());
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax = boxes[i];
    }
  }
  if (counts) *counts = std::move(M);
  return rep;
}

// ---------------------------------------------------------------------------
// Dyadic boxes for the torsor of the 3A1 quartic: Y <= |y| < 2Y per variable.

struct DyadicBox {
  // Y1, Y03, Y04, Y13, Y14, Y23, Y24, Y33, Y34
  std::array<i64, 9> Y{1, 1, 1, 1, 1, 1, 1, 1, 1};

  [[nodiscard]] s3::TorsorRanges ranges() const {
    s3::TorsorRanges r;
    for (std::size_t k = 0; k < 9; ++k) r[k] = {Y[k], checked_mul(Y[k], 2) - 1};
    return r;
  }

  /// The four height monomials evaluated at the shell minima.
  [[nodiscard]] std::array<i128, 4> monomial_minima() const {
    const i128 y1 = Y[0], y03 = Y[1], y04 = Y[2], y13 = Y[3], y14 = Y[4], y23 = Y[5], y24 = Y[6],
               y33 = Y[7], y34 = Y[8];
    return {y03 * y03 * y04 * y04 * y23 * y24, y1 * y1 * y13 * y13 * y14 * y14 * y23 * y24,
            y1 * y03 * y13 * y13 * y23 * y23 * y33, y1 * y04 * y14 * y14 * y24 * y24 * y34};
  }

  /// Some monomial exceeds B on the whole box, so the box holds no vector with psi <= B.
  [[nodiscard]] bool provably_empty(i64 B) const {
    for (auto m : monomial_minima())
      if (m > B) return true;
    return false;
  }

  /// Y1 Y13 Y14 Y23 Y24 min(Y03 Y04, Y33 Y34).
  [[nodiscard]] i128 bound_denominator() const {
    i128 base = static_cast<i128>(Y[0]) * Y[3] * Y[4] * Y[5] * Y[6];
    return base * std::min(static_cast<i128>(Y[1]) * Y[2], static_cast<i128>(Y[7]) * Y[8]);
  }

  [[nodiscard]] std::string label() const {
    std::string s;
    for (std::size_t k = 0; k < 9; ++k) {
      if (k) s += ':';
      s += std::to_string(Y[k]);
    }
    return s;
  }

  friend auto operator<=>(const DyadicBox &, const DyadicBox &) = default;
};

/// Canonical torsor vectors with psi(y) <= B in the box. The enumeration runs
/// over the whole box; it is not short-circuited by provably_empty.
[[nodiscard]] inline long long count_dyadic_box(const DyadicBox &box, i64 B, unsigned threads = 1,
                                                const DyadicLimits &limits = {}) {
  for (auto y : box.Y)
    if (y < 1) throw std::invalid_argument("dyadic box endpoints must be positive");
  if (B > limits.max_box_bound)
    throw budget_exceeded("B = " + std::to_string(B) + " exceeds the dyadic box budget");
  return s3::count_torsor_in_ranges(B, box.ranges(), threads);
}

/// All power-of-two boxes that are not provably empty at B. Boxes outside the
/// list are empty, so together they cover every vector with psi(y) <= B.
[[nodiscard]] inline std::vector<DyadicBox> complete_dyadic_grid(i64 B, const DyadicLimits &limits = {}) {
  if (B < 1) throw std::invalid_argument("B must be at least 1");
  if (B > limits.max_grid_bound)
    throw budget_exceeded("B = " + std::to_string(B) + " exceeds the dyadic grid budget");
  std::vector<DyadicBox> out;
  DyadicBox b;
  // Partial products only grow, so a prefix already exceeding B prunes the subtree.
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == 9) {
      out.push_back(b);
      return;
    }
    for (i64 v = 1; v <= B; v *= 2) {
      b.Y[k] = v;
      if (b.provably_empty(B)) break;
      rec(k + 1);
    }
    b.Y[k] = 1;
  };
  rec(0);
  return out;
}

struct BoxReport {
  DyadicBox box;
  long long count = 0;
  i128 bound_denominator = 1;
  double ratio = 0;
};

struct BoxBoundReport {
  double max_ratio = 0;
  DyadicBox argmax{};
  long long total = 0;
  std::vector<BoxReport> rows;
};

/// Per-box counts and the largest N / bound_denominator.
[[nodiscard]] inline BoxBoundReport check_box_bound(const std::vector<DyadicBox> &boxes, i64 B,
                                                    unsigned threads = 1, const DyadicLimits &limits = {}) {
  std::vector<long long> N(boxes.size());
  parallel_reduce(
      boxes.size(), threads, 0, [&](std::size_t i, int &) { N[i] = count_dyadic_box(boxes[i], B, 1, limits); },
      [](int a, int) { return a; });
  BoxBoundReport rep;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    BoxReport row{boxes[i], N[i], boxes[i].bound_denominator(), 0};
    row.ratio = static_cast<double>(N[i]) / static_cast<double>(row.bound_denominator);
    rep.total += N[i];
    if (row.ratio > rep.max_ratio) {
      rep.max_ratio = row.ratio;
      rep.argmax = boxes[i];
    }
    rep.rows.push_back(row);
  }
  return rep;
}

inline void write_box_report_csv(std::ostream &out, const BoxBoundReport &rep) {
  out << "box,count,bound_denominator,ratio\n";
  char buf[64];
  for (const auto &r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%.9g", r.ratio);
    out << r.box.label() << ',' << r.count << ',' << to_string(r.bound_denominator) << ',' << buf << '\n';
  }
}

} // namespace delpezzo
