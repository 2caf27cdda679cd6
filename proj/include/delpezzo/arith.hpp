#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace delpezzo {

using i64 = std::int64_t;
using i128 = __int128;

/// Thrown whenever an exact computation would leave the representable range.
struct arithmetic_overflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

namespace detail {

[[noreturn]] inline void overflow(const char *what) {
  throw arithmetic_overflow(std::string("integer overflow in ") + what);
}

} // namespace detail

[[nodiscard]] constexpr i64 checked_add(i64 a, i64 b) {
  i64 r{};
  if (__builtin_add_overflow(a, b, &r)) detail::overflow("add");
  return r;
}

[[nodiscard]] constexpr i64 checked_sub(i64 a, i64 b) {
  i64 r{};
  if (__builtin_sub_overflow(a, b, &r)) detail::overflow("sub");
  return r;
}

[[nodiscard]] constexpr i64 checked_mul(i64 a, i64 b) {
  i64 r{};
  if (__builtin_mul_overflow(a, b, &r)) detail::overflow("mul");
  return r;
}

[[nodiscard]] constexpr i128 checked_add(i128 a, i128 b) {
  i128 r{};
  if (__builtin_add_overflow(a, b, &r)) detail::overflow("add128");
  return r;
}

[[nodiscard]] constexpr i128 checked_sub(i128 a, i128 b) {
  i128 r{};
  if (__builtin_sub_overflow(a, b, &r)) detail::overflow("sub128");
  return r;
}

[[nodiscard]] constexpr i128 checked_mul(i128 a, i128 b) {
  i128 r{};
  if (__builtin_mul_overflow(a, b, &r)) detail::overflow("mul128");
  return r;
}

/// Narrow a wide intermediate back to i64, failing loudly.
[[nodiscard]] constexpr i64 narrow(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    detail::overflow("narrow");
  return static_cast<i64>(v);
}

template <typename T> [[nodiscard]] constexpr T abs_value(T x) noexcept {
  return x < 0 ? -x : x;
}

template <typename T> [[nodiscard]] constexpr int sign(T x) noexcept {
  return (x > 0) - (x < 0);
}

[[nodiscard]] constexpr i64 gcd(i64 a, i64 b) noexcept {
  auto x = static_cast<std::uint64_t>(abs_value(a));
  auto y = static_cast<std::uint64_t>(abs_value(b));
  if (x == 0) return static_cast<i64>(y);
  if (y == 0) return static_cast<i64>(x);
  int shift = std::countr_zero(x | y);
  x >>= std::countr_zero(x);
  while (y != 0) {
    y >>= std::countr_zero(y);
    if (x > y) std::swap(x, y);
    y -= x;
  }
  return static_cast<i64>(x << shift);
}

[[nodiscard]] constexpr i128 gcd(i128 a, i128 b) noexcept {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// floor(sqrt(n)) for n >= 0, exact.
[[nodiscard]] constexpr i64 isqrt(i64 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  if (n < 2) return n;
  auto r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

[[nodiscard]] constexpr i128 isqrt(i128 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  if (n < 2) return n;
  auto r = static_cast<i128>(__builtin_sqrtl(static_cast<long double>(n)));
  // r*r can only overflow for n near 2^127, which no caller produces.
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Returns true and the root when n is a perfect square.
[[nodiscard]] constexpr bool is_square(i64 n, i64 *root = nullptr) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

/// Floor division for signed operands.
[[nodiscard]] constexpr i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

[[nodiscard]] constexpr i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

/// Positive divisors of n >= 1 in increasing order, by trial division.
[[nodiscard]] inline std::vector<i64> divisors(i64 n) {
  if (n < 1) throw std::domain_error("divisors of non-positive integer");
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Sorted positive divisors of every integer in [1, limit], stored flat.
class DivisorTable {
public:
  explicit DivisorTable(i64 limit) : limit_(limit < 1 ? 1 : limit) {
    std::vector<std::uint32_t> count(static_cast<std::size_t>(limit_) + 1, 0);
    for (i64 d = 1; d <= limit_; ++d)
      for (i64 m = d; m <= limit_; m += d) ++count[static_cast<std::size_t>(m)];
    offset_.assign(static_cast<std::size_t>(limit_) + 2, 0);
    for (i64 m = 1; m <= limit_; ++m)
      offset_[static_cast<std::size_t>(m) + 1] =
          offset_[static_cast<std::size_t>(m)] + count[static_cast<std::size_t>(m)];
    data_.resize(offset_.back());
    std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
    for (i64 d = 1; d <= limit_; ++d)
      for (i64 m = d; m <= limit_; m += d)
        data_[fill[static_cast<std::size_t>(m)]++] = static_cast<std::uint32_t>(d);
  }

  [[nodiscard]] i64 limit() const noexcept { return limit_; }

  /// Divisors of n in increasing order; n must lie in [1, limit()].
  [[nodiscard]] std::pair<const std::uint32_t *, const std::uint32_t *> of(i64 n) const {
    if (n < 1 || n > limit_) throw std::out_of_range("divisor table lookup out of range");
    const auto *base = data_.data();
    return {base + offset_[static_cast<std::size_t>(n)],
            base + offset_[static_cast<std::size_t>(n) + 1]};
  }

private:
  i64 limit_;
  std::vector<std::size_t> offset_;
  std::vector<std::uint32_t> data_;
};

/// Euler's totient for 0..limit by sieve.
[[nodiscard]] inline std::vector<i64> totients(i64 limit) {
  std::vector<i64> phi(static_cast<std::size_t>(limit) + 1);
  std::iota(phi.begin(), phi.end(), i64{0});
  for (i64 p = 2; p <= limit; ++p) {
    if (phi[static_cast<std::size_t>(p)] != p) continue;
    for (i64 m = p; m <= limit; m += p)
      phi[static_cast<std::size_t>(m)] -= phi[static_cast<std::size_t>(m)] / p;
  }
  return phi;
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  // Avoid negating INT128_MIN by working digit-wise on the signed value.
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

} // namespace delpezzo
