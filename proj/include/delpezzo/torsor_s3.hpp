#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "counting.hpp"
#include "forms.hpp"
#include "parallel.hpp"

// Universal torsor of the 3A1 quartic surface in its working model
//   x0*x1 - x2^2 = x2^2 - x1*x2 + x3*x4 = 0.
// Points with all coordinates nonzero (the complement of the six lines)
// correspond to nine-tuples y with
//   x0 = y03^2 y04^2 y23 y24
//   x1 = y1^2 y13^2 y14^2 y23 y24
//   x2 = y1 y03 y04 y13 y14 y23 y24
//   x3 = y1 y03 y13^2 y23^2 y33
//   x4 = y1 y04 y14^2 y24^2 y34
// subject to y03*y04 - y1*y13*y14 + y33*y34 = 0 and coprimality conditions.

namespace delpezzo::s3 {

struct TorsorVector {
  i64 y1 = 0, y03 = 0, y04 = 0, y13 = 0, y14 = 0, y23 = 0, y24 = 0, y33 = 0, y34 = 0;

  [[nodiscard]] std::array<i64, 9> as_array() const { return {y1, y03, y04, y13, y14, y23, y24, y33, y34}; }
  friend auto operator<=>(const TorsorVector &, const TorsorVector &) = default;
};

inline constexpr std::array<const char *, 9> torsor_variable_names{"y1",  "y03", "y04", "y13", "y14",
                                                                   "y23", "y24", "y33", "y34"};

[[nodiscard]] inline bool torsor_equation_holds(const TorsorVector &y) {
  i128 lhs = checked_add(checked_sub(static_cast<i128>(y.y03) * y.y04,
                                     static_cast<i128>(y.y1) * y.y13 * y.y14),
                         static_cast<i128>(y.y33) * y.y34);
  return lhs == 0;
}

/// The two coprimality relations that accompany the torsor equation:
///   gcd(y13 y14 y23 y24, y13 y23 y33, y14 y24 y34) = 1,
///   gcd(y03 y04, y13 y14) = gcd(y1, y03 y04 y23 y24) = 1.
[[nodiscard]] inline bool stated_coprimality_holds(const TorsorVector &y) {
  auto p = [](std::initializer_list<i64> f) {
    i128 v = 1;
    for (auto x : f) v = checked_mul(v, static_cast<i128>(x));
    return v;
  };
  bool first = gcd(gcd(p({y.y13, y.y14, y.y23, y.y24}), p({y.y13, y.y23, y.y33})), p({y.y14, y.y24, y.y34})) == 1;
  bool second = gcd(p({y.y03, y.y04}), p({y.y13, y.y14})) == 1;
  bool third = gcd(static_cast<i128>(y.y1), p({y.y03, y.y04, y.y23, y.y24})) == 1;
  return first && second && third;
}

/// The relations above admit tuples such as y04 = y23 = 2 whose image is not
/// primitive; these two extra conditions exclude exactly those.
[[nodiscard]] inline bool primitivity_conditions_hold(const TorsorVector &y) {
  return gcd(y.y03, y.y24) == 1 && gcd(y.y04, y.y23) == 1;
}

/// Member of the set T as written (no sign convention, no primitivity conditions).
[[nodiscard]] inline bool in_stated_set(const TorsorVector &y) {
  for (auto v : y.as_array())
    if (v == 0) return false;
  if (y.y1 <= 0 || y.y13 <= 0 || y.y14 <= 0 || y.y23 <= 0 || y.y24 <= 0) return false;
  return torsor_equation_holds(y) && stated_coprimality_holds(y);
}

/// Canonical parameter: in T, with y03 > 0 fixing the residual sign
/// (y03, y04, y33, y34) -> -(y03, y04, y33, y34), and primitive image.
[[nodiscard]] inline bool is_valid(const TorsorVector &y) {
  return in_stated_set(y) && y.y03 > 0 && primitivity_conditions_hold(y);
}

/// The five coordinates before normalization.
[[nodiscard]] inline std::array<i128, 5> torsor_coordinates(const TorsorVector &y) {
  auto p = [](std::initializer_list<i64> f) {
    i128 v = 1;
    for (auto x : f) v = checked_mul(v, static_cast<i128>(x));
    return v;
  };
  return {p({y.y03, y.y03, y.y04, y.y04, y.y23, y.y24}),
          p({y.y1, y.y1, y.y13, y.y13, y.y14, y.y14, y.y23, y.y24}),
          p({y.y1, y.y03, y.y04, y.y13, y.y14, y.y23, y.y24}),
          p({y.y1, y.y03, y.y13, y.y13, y.y23, y.y23, y.y33}),
          p({y.y1, y.y04, y.y14, y.y14, y.y24, y.y24, y.y34})};
}

/// Height pulled back to the torsor: the largest of |x0|, |x1|, |x3|, |x4|.
[[nodiscard]] inline i64 psi(const TorsorVector &y) {
  auto x = torsor_coordinates(y);
  i128 m = std::max({abs_value(x[0]), abs_value(x[1]), abs_value(x[3]), abs_value(x[4])});
  return narrow(m);
}

[[nodiscard]] inline ProjectivePoint torsor_to_point(const TorsorVector &y) {
  if (!is_valid(y)) throw std::invalid_argument("torsor vector violates its defining conditions");
  auto x = torsor_coordinates(y);
  IntVector v;
  for (auto c : x) v.push_back(narrow(c));
  return ProjectivePoint::from_normalized(std::move(v));
}

[[nodiscard]] inline bool on_working_model(std::span<const i64> x) {
  if (x.size() != 5) return false;
  i128 q1 = static_cast<i128>(x[0]) * x[1] - static_cast<i128>(x[2]) * x[2];
  i128 q2 = static_cast<i128>(x[2]) * x[2] - static_cast<i128>(x[1]) * x[2] + static_cast<i128>(x[3]) * x[4];
  return q1 == 0 && q2 == 0;
}

/// Inverse of torsor_to_point on points off the six lines.
[[nodiscard]] inline TorsorVector lift_to_torsor(const ProjectivePoint &p) {
  if (p.size() != 5) throw std::invalid_argument("expected a point of P^4");
  if (!on_working_model(p.coords())) throw std::invalid_argument("point is not on the surface");
  const i64 x0 = p[0], x1 = p[1], x2 = p[2], x3 = p[3], x4 = p[4];
  if (x0 == 0 || x1 == 0 || x3 == 0 || x4 == 0) throw std::invalid_argument("point lies on one of the six lines");
  if (x0 < 0 || x1 < 0) throw std::invalid_argument("expected x0, x1 > 0");

  auto exact_div = [](i64 a, i64 b) {
    if (b == 0 || a % b != 0) throw std::logic_error("torsor lift: inexact division");
    return a / b;
  };
  auto exact_sqrt = [](i64 a) {
    i64 r{};
    if (!is_square(a, &r)) throw std::logic_error("torsor lift: expected a square");
    return r;
  };

  // x0 = z0^2 z2, x1 = z1^2 z2, x2 = z0 z1 z2 with z1, z2 > 0 and gcd(z0, z1) = 1.
  const i64 z2 = gcd(x0, x1);
  const i64 z1 = exact_sqrt(x1 / z2);
  const i64 z0 = sign(x2) * exact_sqrt(x0 / z2);
  if (static_cast<i128>(z0) * z1 * z2 != x2) throw std::logic_error("torsor lift: x2 mismatch");

  const i64 y1 = gcd(z1, gcd(x3, x4));
  const i64 y1p = z1 / y1, y3p = x3 / y1, y4p = x4 / y1;

  const i64 y03 = gcd(z0, y3p);
  const i64 y04 = exact_div(z0, y03);
  const i64 y3 = exact_div(y3p, y03), y4 = exact_div(y4p, y04);

  const i64 y13 = gcd(y1p, y3), y14 = exact_div(y1p, y13);
  const i64 y23 = gcd(z2, y3), y24 = exact_div(z2, y23);
  const i64 y33 = exact_div(y3, checked_mul(checked_mul(y13, y13), checked_mul(y23, y23)));
  const i64 y34 = exact_div(y4, checked_mul(checked_mul(y14, y14), checked_mul(y24, y24)));

  TorsorVector y{y1, y03, y04, y13, y14, y23, y24, y33, y34};
  if (!is_valid(y) || torsor_to_point(y) != p) throw std::logic_error("torsor lift failed to round-trip");
  return y;
}

// ---------------------------------------------------------------------------
// Enumeration

/// Inclusive bounds on |y| for one torsor variable.
struct MagnitudeRange {
  i64 lo = 1;
  i64 hi = std::numeric_limits<i64>::max();
};

/// Per-variable magnitude ranges, in the order y1, y03, y04, y13, y14, y23, y24, y33, y34.
using TorsorRanges = std::array<MagnitudeRange, 9>;

/// Largest B accepted; keeps every product formed during enumeration in 64 bits.
inline constexpr i64 max_torsor_bound = 100'000'000'000;

/// Enumerates canonical torsor vectors with psi(y) <= B and every |y_i| in
/// its range. The outer loops run over y1, y13, y14, y03, |y04| and the sign
/// of y04; the torsor equation then fixes y33*y34, which is split over divisor
/// pairs; y23 and y24 are innermost. Work items are (y1, y13) pairs.
class TorsorEnumerator {
public:
  explicit TorsorEnumerator(i64 B, TorsorRanges ranges = {}) : B_(B), r_(ranges), divisors_(1) {
    if (B < 1) throw std::invalid_argument("B must be at least 1");
    if (B > max_torsor_bound) throw arithmetic_overflow("B exceeds the torsor enumeration cap");
    for (auto &rg : r_) {
      if (rg.lo < 1) throw std::invalid_argument("magnitude ranges start at 1");
      rg.hi = std::min(rg.hi, B);
    }
    // |y33 y34| = |y1 y13 y14 - y03 y04| <= 2 sqrt(B).
    divisors_ = DivisorTable(2 * isqrt(B) + 2);
    for (i64 a = r_[0].lo; a <= r_[0].hi; ++a) {
      if (!fits({a, a, lo(3), lo(3), lo(4), lo(4), lo(5), lo(6)}) ||
          !fits({a, lo(1), lo(3), lo(3), lo(5), lo(5), lo(7)}))
        break;
      for (i64 b = r_[3].lo; b <= r_[3].hi; ++b) {
        if (!fits({a, a, b, b, lo(4), lo(4), lo(5), lo(6)}) || !fits({a, lo(1), b, b, lo(5), lo(5), lo(7)})) break;
        items_.push_back({a, b});
      }
    }
  }

  [[nodiscard]] std::size_t items() const noexcept { return items_.size(); }
  [[nodiscard]] i64 bound() const noexcept { return B_; }

  /// Calls visit(y) for every vector in work item i.
  template <typename Visit> void scan_item(std::size_t i, Visit &&visit) const {
    const auto [y1, y13] = items_[i];
    const auto &R = r_;
    for (i64 y14 = R[4].lo; y14 <= R[4].hi; ++y14) {
      if (!fits({y1, y1, y13, y13, y14, y14, lo(5), lo(6)}) || !fits({y1, lo(2), y14, y14, lo(6), lo(6), lo(8)}))
        break;
      if (gcd(y13, y14) != 1) continue;
      const i64 n = y1 * y13 * y14;
      for (i64 y03 = R[1].lo; y03 <= R[1].hi; ++y03) {
        if (!fits({y03, y03, lo(2), lo(2), lo(5), lo(6)}) || !fits({y1, y03, y13, y13, lo(5), lo(5), lo(7)})) break;
        if (gcd(y03, n) != 1) continue;
        for (i64 a04 = R[2].lo; a04 <= R[2].hi; ++a04) {
          if (!fits({y03, y03, a04, a04, lo(5), lo(6)}) || !fits({y1, a04, y14, y14, lo(6), lo(6), lo(8)})) break;
          if (gcd(a04, n) != 1) continue;
          for (i64 y04 : {a04, -a04}) scan_pair(y1, y13, y14, y03, y04, n, visit);
        }
      }
    }
  }

private:
  struct Item {
    i64 y1, y13;
  };

  [[nodiscard]] i64 lo(std::size_t k) const { return r_[k].lo; }

  /// Product of the factors is at most B.
  [[nodiscard]] bool fits(std::initializer_list<i64> factors) const {
    i128 v = 1;
    for (auto f : factors) {
      v *= f;
      if (v > B_) return false;
    }
    return true;
  }

  template <typename Visit>
  void scan_pair(i64 y1, i64 y13, i64 y14, i64 y03, i64 y04, i64 n, Visit &visit) const {
    const auto &R = r_;
    const i64 a04 = abs_value(y04);
    const i64 D = n - y03 * y04;
    if (D == 0) return;
    const i64 aD = abs_value(D);
    // y23 * y24 <= C from the first two monomials.
    const i64 lead = std::max(y03 * a04, n);
    const i64 C = B_ / (lead * lead);
    if (C < lo(5) * lo(6)) return;
    // |y33| y23^2 <= B / (y1 y03 y13^2) and |y34| y24^2 <= B / (y1 |y04| y14^2).
    const i64 K3 = B_ / (y1 * y03 * y13 * y13);
    const i64 K4 = B_ / (y1 * a04 * y14 * y14);
    const i64 max33 = std::min(R[7].hi, K3 / (lo(5) * lo(5)));
    const i64 max34 = std::min(R[8].hi, K4 / (lo(6) * lo(6)));
    if (max33 < lo(7) || max34 < lo(8)) return;
    auto [dbeg, dend] = divisors_.of(aD);
    for (auto it = dbeg; it != dend; ++it) {
      const i64 d = *it;
      if (d > max33) break;
      if (d < lo(7)) continue;
      const i64 e = aD / d;
      if (e > max34 || e < lo(8)) continue;
      if (gcd(y13, e) != 1 || gcd(y14, d) != 1) continue;
      const i64 max23 = std::min({R[5].hi, isqrt(K3 / d), C / lo(6)});
      const i64 max24_all = std::min(R[6].hi, isqrt(K4 / e));
      const i64 guard23 = y1 * a04 * y14 * e;  // y23 coprime to y1, y04, y14, y34
      const i64 guard24 = y1 * y03 * y13 * d;  // y24 coprime to y1, y03, y13, y33
      for (i64 y23 = lo(5); y23 <= max23; ++y23) {
        if (gcd(y23, guard23) != 1) continue;
        const i64 max24 = std::min(max24_all, C / y23);
        for (i64 y24 = lo(6); y24 <= max24; ++y24) {
          if (gcd(y24, y23) != 1 || gcd(y24, guard24) != 1) continue;
          const i64 y34 = D / d;
          visit(TorsorVector{y1, y03, y04, y13, y14, y23, y24, d, y34});
          visit(TorsorVector{y1, y03, y04, y13, y14, y23, y24, -d, -y34});
        }
      }
    }
  }

  i64 B_;
  TorsorRanges r_;
  DivisorTable divisors_;
  std::vector<Item> items_;
};

[[nodiscard]] inline long long count_torsor_in_ranges(i64 B, const TorsorRanges &ranges, unsigned threads = 1) {
  TorsorEnumerator en(B, ranges);
  return parallel_count(en.items(), threads, [&](std::size_t i) {
    long long c = 0;
    en.scan_item(i, [&](const TorsorVector &) { ++c; });
    return c;
  });
}

/// Number of canonical torsor vectors with psi(y) <= B, which equals the
/// number of points of height <= B off the six lines.
[[nodiscard]] inline CountResult count_torsor(i64 B, unsigned threads = 1) {
  auto [n, ms] = detail::timed([&] { return count_torsor_in_ranges(B, TorsorRanges{}, threads); });
  return {B, n, CountMethod::torsor, std::string("q-v-work"), ms};
}

/// Every canonical torsor vector with psi(y) <= B, in enumeration order.
[[nodiscard]] inline std::vector<TorsorVector> torsor_vectors(i64 B, const TorsorRanges &ranges = {}) {
  TorsorEnumerator en(B, ranges);
  std::vector<TorsorVector> out;
  for (std::size_t i = 0; i < en.items(); ++i) en.scan_item(i, [&](const TorsorVector &y) { out.push_back(y); });
  return out;
}

} // namespace delpezzo::s3
