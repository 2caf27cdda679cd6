#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "forms.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "roots.hpp"
#include "surface.hpp"

namespace delpezzo {

enum class CountMethod { brute, divisor_oracle, torsor, projective_line };

[[nodiscard]] inline const char *to_string(CountMethod m) {
  switch (m) {
  case CountMethod::brute: return "brute";
  case CountMethod::divisor_oracle: return "divisor_oracle";
  case CountMethod::torsor: return "torsor";
  case CountMethod::projective_line: return "projective_line";
  }
  return "?";
}

struct CountResult {
  i64 B = 0;
  long long N = 0;
  CountMethod method = CountMethod::brute;
  std::optional<std::string> surface_id;
  std::chrono::duration<double, std::milli> elapsed{0};
};

inline void write_csv_header(std::ostream &out) { out << "surface_id,method,B,N,elapsed_ms\n"; }

/// One CSV row; the elapsed column is left empty when include_elapsed is false.
inline void write_csv_row(std::ostream &out, const CountResult &r, bool include_elapsed = true) {
  out << r.surface_id.value_or("") << ',' << to_string(r.method) << ',' << r.B << ',' << r.N << ',';
  if (include_elapsed) out << static_cast<long long>(r.elapsed.count() + 0.5);
  out << '\n';
}

struct infeasible_bound : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

template <typename F> auto timed(F &&f) {
  auto start = std::chrono::steady_clock::now();
  auto value = f();
  return std::pair{value, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// P^1 calibration

/// Number of normalized primitive pairs (a, b) with max(|a|, |b|) <= B. For
/// each n >= 2 there are 4 phi(n) such pairs of norm exactly n, and 4 of norm 1.
[[nodiscard]] inline CountResult count_projective_line(i64 B) {
  if (B < 1) throw std::invalid_argument("B must be at least 1");
  auto [n, ms] = detail::timed([&] {
    auto phi = totients(B);
    long long total = 0;
    for (i64 k = 1; k <= B; ++k) total += 4 * phi[static_cast<std::size_t>(k)];
    return total;
  });
  return {B, n, CountMethod::projective_line, std::nullopt, ms};
}

// ---------------------------------------------------------------------------
// Full scans

/// Height limits for exhaustive scans, by ambient dimension.
struct ScanLimits {
  i64 max_bound_p4 = 60;
  i64 max_bound_p3 = 400;
};

/// Enumerates normalized points of height <= B on a surface by fixing all but
/// the last coordinate and solving the defining equations for it exactly.
/// Work is split into items over the first two coordinates.
class BruteScanner {
public:
  BruteScanner(const SurfaceRecord &s, i64 B, std::vector<Line> lines, ScanLimits limits = {})
      : n_(s.num_coords()), B_(B), lines_(std::move(lines)) {
    if (B < 1) throw std::invalid_argument("B must be at least 1");
    if (n_ < 3) throw std::invalid_argument("scanner needs at least three coordinates");
    i64 cap = s.ambient_dim >= 4 ? limits.max_bound_p4 : limits.max_bound_p3;
    if (B > cap)
      throw infeasible_bound("B = " + std::to_string(B) + " exceeds the full-scan bound " +
                             std::to_string(cap) + " for " + s.id);
    for (const auto &eq : s.equations) {
      i128 bound = eq.coefficient_mass();
      for (int k = 0; k < eq.degree(); ++k) bound = checked_mul(bound, static_cast<i128>(B));
      if (bound > (i128{1} << 62)) throw arithmetic_overflow("form values may exceed 62 bits at this B");
      Equation e;
      e.degree = eq.degree();
      for (const auto &[exps, c] : eq.terms()) e.terms.push_back({c, exps, exps.back()});
      eqs_.push_back(std::move(e));
    }
  }

  [[nodiscard]] std::size_t items() const noexcept {
    return static_cast<std::size_t>((B_ + 1) * (2 * B_ + 1));
  }

  /// Calls visit(point) for every point found in work item i.
  template <typename Visit> void scan_item(std::size_t i, Visit &&visit) const {
    const i64 x0 = static_cast<i64>(i) / (2 * B_ + 1);
    const i64 x1 = static_cast<i64>(i) % (2 * B_ + 1) - B_;
    if (x0 == 0 && x1 < 0) return;
    IntVector v(n_, 0);
    v[0] = x0;
    v[1] = x1;
    const std::size_t free_begin = 2, last = n_ - 1;
    for (std::size_t k = free_begin; k < last; ++k) v[k] = -B_;
    std::vector<i128> poly;
    for (;;) {
      visit_prefix(v, poly, visit);
      std::size_t k = last;
      while (k > free_begin && v[k - 1] == B_) v[--k] = -B_;
      if (k == free_begin) break;
      ++v[k - 1];
    }
  }

private:
  struct Term {
    i64 coef;
    Exponent exps;
    int last_exp;
  };
  struct Equation {
    int degree;
    std::vector<Term> terms;
  };

  void univariate(const Equation &e, const IntVector &v, std::vector<i128> &poly) const {
    poly.assign(static_cast<std::size_t>(e.degree) + 1, 0);
    const std::size_t last = n_ - 1;
    for (const auto &t : e.terms) {
      i64 m = t.coef;
      for (std::size_t j = 0; j < last && m != 0; ++j)
        for (int k = 0; k < t.exps[j]; ++k) m *= v[j];
      poly[static_cast<std::size_t>(t.last_exp)] += m;
    }
  }

  template <typename Visit> void visit_prefix(IntVector &v, std::vector<i128> &poly, Visit &visit) const {
    const std::size_t last = n_ - 1;
    auto first = std::find_if(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(last), [](i64 c) { return c != 0; });
    const bool zero_prefix = first == v.begin() + static_cast<std::ptrdiff_t>(last);
    if (!zero_prefix && *first < 0) return;
    // Candidates for the last coordinate from the first equation that is not
    // identically zero in it; the rest are checked exactly afterwards.
    std::optional<std::vector<i64>> candidates;
    std::size_t solved = eqs_.size();
    for (std::size_t e = 0; e < eqs_.size(); ++e) {
      univariate(eqs_[e], v, poly);
      bool all_zero = std::all_of(poly.begin(), poly.end(), [](i128 c) { return c == 0; });
      if (all_zero) continue;
      if (zero_prefix) {
        candidates = std::vector<i64>{};
        if (eval_poly(poly, 1) == 0) candidates->push_back(1);
      } else {
        candidates = integer_roots(poly, -B_, B_);
      }
      solved = e;
      break;
    }
    if (!candidates) {
      candidates = std::vector<i64>{};
      if (zero_prefix)
        candidates->push_back(1);
      else
        for (i64 t = -B_; t <= B_; ++t) candidates->push_back(t);
    }
    for (i64 t : *candidates) {
      v[last] = t;
      bool ok = true;
      for (std::size_t e = solved + 1; e < eqs_.size() && ok; ++e) {
        univariate(eqs_[e], v, poly);
        ok = eval_poly(poly, t) == 0;
      }
      if (!ok) continue;
      i64 g = 0;
      for (auto c : v) g = gcd(g, c);
      if (g != 1) continue;
      auto p = ProjectivePoint::from_normalized(v);
      if (point_on_some_line(p, std::span<const Line>(lines_))) continue;
      visit(p);
    }
    v[last] = 0;
  }

  std::size_t n_;
  i64 B_;
  std::vector<Line> lines_;
  std::vector<Equation> eqs_;
};

/// Number of counted points of each exact height 0..B.
[[nodiscard]] inline std::vector<long long> brute_height_histogram(const SurfaceRecord &s, i64 B,
                                                                   std::vector<Line> lines,
                                                                   unsigned threads = 1,
                                                                   ScanLimits limits = {}) {
  BruteScanner scanner(s, B, std::move(lines), limits);
  using Hist = std::vector<long long>;
  return parallel_reduce(
      scanner.items(), threads, Hist(static_cast<std::size_t>(B) + 1, 0),
      [&](std::size_t i, Hist &h) { scanner.scan_item(i, [&](const ProjectivePoint &p) { ++h[static_cast<std::size_t>(height(p))]; }); },
      [](Hist a, const Hist &b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
        return a;
      });
}

/// N(b) for every b in 0..B from a single scan at B.
[[nodiscard]] inline std::vector<long long> brute_count_profile(const SurfaceRecord &s, i64 B,
                                                                std::vector<Line> lines,
                                                                unsigned threads = 1,
                                                                ScanLimits limits = {}) {
  auto h = brute_height_histogram(s, B, std::move(lines), threads, limits);
  for (std::size_t k = 1; k < h.size(); ++k) h[k] += h[k - 1];
  return h;
}

[[nodiscard]] inline CountResult count_brute(const SurfaceRecord &s, i64 B, std::vector<Line> lines,
                                             unsigned threads = 1, ScanLimits limits = {}) {
  auto [n, ms] = detail::timed([&] { return brute_count_profile(s, B, std::move(lines), threads, limits).back(); });
  return {B, n, CountMethod::brute, s.id, ms};
}

/// The counted points themselves, sorted.
[[nodiscard]] inline std::vector<ProjectivePoint> brute_points(const SurfaceRecord &s, i64 B,
                                                               std::vector<Line> lines,
                                                               ScanLimits limits = {}) {
  BruteScanner scanner(s, B, std::move(lines), limits);
  std::vector<ProjectivePoint> out;
  for (std::size_t i = 0; i < scanner.items(); ++i)
    scanner.scan_item(i, [&](const ProjectivePoint &p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Type v surface, working model x0*x1 - x2^2 = x2^2 - x1*x2 + x3*x4 = 0

/// Counts primitive x with 0 < x0, x1 <= B and 0 < |x3|, |x4| <= B on the
/// working model. Throws std::logic_error if some counted point has |x2|
/// larger than max(x0, x1, |x3|, |x4|).
[[nodiscard]] inline CountResult count_s3_sign_restricted(i64 B, unsigned threads = 1) {
  if (B < 1) throw std::invalid_argument("B must be at least 1");
  auto [n, ms] = detail::timed([&] {
    return parallel_count(static_cast<std::size_t>(B), threads, [&](std::size_t i) {
      const i64 x0 = static_cast<i64>(i) + 1;
      long long local = 0;
      for (i64 x1 = 1; x1 <= B; ++x1) {
        i64 s{};
        if (!is_square(x0 * x1, &s)) continue;
        for (i64 x2 : {s, -s}) {
          const i64 m = x1 * x2 - x2 * x2;
          if (m == 0) continue;
          for (i64 x3 = -B; x3 <= B; ++x3) {
            if (x3 == 0 || m % x3 != 0) continue;
            const i64 x4 = m / x3;
            if (abs_value(x4) > B) continue;
            if (gcd(gcd(gcd(x0, x1), gcd(x2, x3)), x4) != 1) continue;
            const i64 reduced = std::max({x0, x1, abs_value(x3), abs_value(x4)});
            if (std::max(reduced, abs_value(x2)) != reduced)
              throw std::logic_error("reduced height differs from the max-norm");
            ++local;
          }
        }
      }
      return local;
    });
  });
  return {B, n, CountMethod::brute, std::string("q-v-work"), ms};
}

/// Same count as above, enumerating (x0, x1) with x0*x1 a square and then
/// splitting x3*x4 = x1*x2 - x2^2 over divisor pairs.
[[nodiscard]] inline CountResult count_divisor_oracle_s3(i64 B, unsigned threads = 1) {
  if (B < 1) throw std::invalid_argument("B must be at least 1");
  if (B > (i64{1} << 30)) throw arithmetic_overflow("B too large for the divisor oracle");
  auto [n, ms] = detail::timed([&] {
    return parallel_count(static_cast<std::size_t>(B), threads, [&](std::size_t i) {
      const i64 x0 = static_cast<i64>(i) + 1;
      long long local = 0;
      for (i64 x1 = 1; x1 <= B; ++x1) {
        i64 s{};
        if (!is_square(x0 * x1, &s)) continue;
        for (i64 x2 : {s, -s}) {
          const i64 m = x2 * (x1 - x2);
          if (m == 0) continue;
          const i64 am = abs_value(m);
          const i64 g012 = gcd(gcd(x0, x1), x2);
          for (i64 d = 1; d * d <= am; ++d) {
            if (am % d != 0) continue;
            const i64 e = am / d;
            if (e > B) continue;
            for (int swap = 0; swap < (d == e ? 1 : 2); ++swap) {
              const i64 a3 = swap ? e : d;
              for (i64 x3 : {a3, -a3}) {
                const i64 x4 = m / x3;
                if (gcd(g012, gcd(x3, x4)) == 1) ++local;
              }
            }
          }
        }
      }
      return local;
    });
  });
  return {B, n, CountMethod::divisor_oracle, std::string("q-v-work"), ms};
}

} // namespace delpezzo
