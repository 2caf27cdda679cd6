#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "counting.hpp"

// Asymptotic fits of counting data. Logarithms are natural throughout; the
// base only rescales the constant in c B (log B)^k, never an exponent.

namespace delpezzo {

using Sample = std::pair<i64, long long>; // (B, N)

enum class FitModel { B_pow, B_logpow };

[[nodiscard]] inline const char *to_string(FitModel m) { return m == FitModel::B_pow ? "B_pow" : "B_logpow"; }

/// Result of fitting N ~ c B^e (B_pow) or N ~ c B (ln B)^k (B_logpow).
/// fitted_exponent is e for B_pow and k for B_logpow; when the exponent was
/// held fixed, fixed_log_exponent (or fixed_power) records it. residual_rms is
/// relative: log-space residuals for the log-linear fits, (N - fit)/N for the
/// linear ones.
struct FitReport {
  FitModel model = FitModel::B_pow;
  std::optional<int> fixed_log_exponent;
  std::optional<double> fixed_power;
  double fitted_c = 0;
  double fitted_exponent = 0;
  double residual_rms = 0;
  std::vector<Sample> samples;
  std::string note;
};

namespace detail {

inline void validate_samples(const std::vector<Sample> &samples, std::size_t min_count) {
  if (samples.size() < min_count)
    throw std::invalid_argument("need at least " + std::to_string(min_count) + " samples, got " +
                                std::to_string(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].first < 1) throw std::invalid_argument("sample B must be positive");
    if (samples[i].second <= 0) throw std::invalid_argument("sample counts must be positive");
    if (i > 0 && samples[i].first <= samples[i - 1].first)
      throw std::invalid_argument("samples must be strictly increasing in B");
  }
}

struct Line2 {
  double intercept, slope, rms;
};

/// Ordinary least squares y = a + b x.
inline Line2 ols(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("degenerate fit: all abscissae equal");
  const double b = sxy / sxx, a = my - b * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (a + b * x[i]);
    ss += r * r;
  }
  return {a, b, std::sqrt(ss / n)};
}

/// c minimizing sum (N - c g)^2, with g = shape(B).
template <typename Shape> FitReport fit_scale(const std::vector<Sample> &samples, Shape shape) {
  double num = 0, den = 0;
  for (auto [B, N] : samples) {
    double g = shape(static_cast<double>(B));
    num += static_cast<double>(N) * g;
    den += g * g;
  }
  FitReport r;
  r.fitted_c = num / den;
  double ss = 0;
  for (auto [B, N] : samples) {
    double rel = (static_cast<double>(N) - r.fitted_c * shape(static_cast<double>(B))) / static_cast<double>(N);
    ss += rel * rel;
  }
  r.residual_rms = std::sqrt(ss / static_cast<double>(samples.size()));
  r.samples = samples;
  return r;
}

inline std::vector<Sample> drop_small(const std::vector<Sample> &samples) {
  std::vector<Sample> out;
  for (const auto &s : samples)
    if (s.first >= 3) out.push_back(s);
  return out;
}

} // namespace detail

inline constexpr std::size_t min_fit_samples = 4;

/// Least squares for ln N = ln c + e ln B.
[[nodiscard]] inline FitReport fit_exponent(const std::vector<Sample> &samples) {
  detail::validate_samples(samples, min_fit_samples);
  std::vector<double> x, y;
  for (auto [B, N] : samples) {
    x.push_back(std::log(static_cast<double>(B)));
    y.push_back(std::log(static_cast<double>(N)));
  }
  auto l = detail::ols(x, y);
  FitReport r;
  r.model = FitModel::B_pow;
  r.fitted_c = std::exp(l.intercept);
  r.fitted_exponent = l.slope;
  r.residual_rms = l.rms;
  r.samples = samples;
  return r;
}

/// Least-squares c in N ~ c B (ln B)^(rho - 1), using samples with B >= 3.
[[nodiscard]] inline FitReport fit_leading_constant(const std::vector<Sample> &samples, int rho) {
  if (rho < 1) throw std::invalid_argument("rho must be at least 1");
  detail::validate_samples(samples, min_fit_samples);
  auto used = detail::drop_small(samples);
  if (used.empty()) throw std::invalid_argument("no samples with B >= 3");
  const int k = rho - 1;
  auto r = detail::fit_scale(used, [k](double B) { return B * std::pow(std::log(B), k); });
  r.model = FitModel::B_logpow;
  r.fixed_log_exponent = k;
  r.fitted_exponent = k;
  r.note = "natural log";
  return r;
}

/// Least-squares c in N ~ c B^e for a fixed e.
[[nodiscard]] inline FitReport fit_power_constant(const std::vector<Sample> &samples, double e) {
  detail::validate_samples(samples, 1);
  auto r = detail::fit_scale(samples, [e](double B) { return std::pow(B, e); });
  r.model = FitModel::B_pow;
  r.fixed_power = e;
  r.fitted_exponent = e;
  return r;
}

/// Estimates k in N ~ c B (ln B)^k from ln(N/B) = ln c + k ln ln B.
/// Such fits converge very slowly; the result is flagged as indicative.
[[nodiscard]] inline FitReport fit_log_exponent(const std::vector<Sample> &samples) {
  detail::validate_samples(samples, min_fit_samples);
  auto used = detail::drop_small(samples);
  if (used.size() < 2) throw std::invalid_argument("need at least two samples with B >= 3");
  std::vector<double> x, y;
  for (auto [B, N] : used) {
    double b = static_cast<double>(B);
    x.push_back(std::log(std::log(b)));
    y.push_back(std::log(static_cast<double>(N) / b));
  }
  auto l = detail::ols(x, y);
  FitReport r;
  r.model = FitModel::B_logpow;
  r.fitted_c = std::exp(l.intercept);
  r.fitted_exponent = l.slope;
  r.residual_rms = l.rms;
  r.samples = used;
  r.note = "slow-converging; indicative only";
  return r;
}

/// N / (B (ln B)^k) for each sample with B >= 3.
[[nodiscard]] inline std::vector<double> log_power_ratios(const std::vector<Sample> &samples, int k) {
  std::vector<double> out;
  for (auto [B, N] : detail::drop_small(samples)) {
    double b = static_cast<double>(B);
    out.push_back(static_cast<double>(N) / (b * std::pow(std::log(b), k)));
  }
  return out;
}

/// |a - b| / max(a, b).
[[nodiscard]] inline double relative_variation(double a, double b) {
  double m = std::max(std::abs(a), std::abs(b));
  return m == 0 ? 0 : std::abs(a - b) / m;
}

// ---------------------------------------------------------------------------
// I/O

[[nodiscard]] inline nlohmann::json to_json(const FitReport &r) {
  nlohmann::json j;
  j["model"] = to_string(r.model);
  j["fixed_log_exponent"] = r.fixed_log_exponent ? nlohmann::json(*r.fixed_log_exponent) : nlohmann::json();
  if (r.fixed_power) j["fixed_power"] = *r.fixed_power;
  j["fitted_c"] = r.fitted_c;
  j["fitted_exponent"] = r.fitted_exponent;
  j["residual_rms"] = r.residual_rms;
  j["log_base"] = "e";
  auto &s = j["samples"] = nlohmann::json::array();
  for (auto [B, N] : r.samples) s.push_back({{"B", B}, {"N", N}});
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

[[nodiscard]] inline CountMethod parse_count_method(const std::string &s) {
  for (auto m : {CountMethod::brute, CountMethod::divisor_oracle, CountMethod::torsor, CountMethod::projective_line})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown count method '" + s + "'");
}

/// Reads rows written by write_csv_header / write_csv_row.
[[nodiscard]] inline std::vector<CountResult> read_count_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty count CSV");
  if (line.rfind("surface_id,method,B,N", 0) != 0) throw std::runtime_error("unexpected count CSV header: " + line);
  std::vector<CountResult> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() < 4) throw std::runtime_error("count CSV line " + std::to_string(lineno) + " has too few fields");
    CountResult r;
    if (!f[0].empty()) r.surface_id = f[0];
    r.method = parse_count_method(f[1]);
    try {
      r.B = std::stoll(f[2]);
      r.N = std::stoll(f[3]);
      if (f.size() > 4 && !f[4].empty()) r.elapsed = std::chrono::duration<double, std::milli>(std::stod(f[4]));
    } catch (const std::logic_error &) {
      throw std::runtime_error("count CSV line " + std::to_string(lineno) + " has a malformed number");
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// (B, N) pairs sorted by B.
[[nodiscard]] inline std::vector<Sample> to_samples(const std::vector<CountResult> &rows) {
  std::vector<Sample> s;
  for (const auto &r : rows) s.emplace_back(r.B, r.N);
  std::sort(s.begin(), s.end());
  return s;
}

} // namespace delpezzo
