#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <delpezzo/arith.hpp>

namespace delpezzo::cli {

enum class Command { list, verify, lines, count, torsor_count, dyadic, ternary, fit };
enum class Method { brute, divisor, torsor, projective_line };
enum class Format { csv, json, text };
enum class FitKind { power, fixed_power, log_power, log_exponent };

struct RunConfig {
  Command command = Command::list;
  std::string surface_id;
  std::vector<i64> B;
  Method method = Method::brute;
  i64 coord_bound = 2;
  unsigned threads = 1;
  std::string output_path; // empty: stdout
  Format format = Format::csv;
  bool include_elapsed = true;
  std::string catalog_path;  // empty: built-in catalog
  std::string freeze_path;   // write expected output here
  std::string check_path;    // compare output against this file
  std::string input_path;    // fit: count CSV
  FitKind fit_kind = FitKind::power;
  std::optional<int> rho;    // fit: defaults to the catalog value
  double power = 2;          // fit: fixed exponent
  i64 max_product = 1 << 10; // ternary grid
  bool small_grid = false;   // dyadic: endpoints in {1, 2, 4} instead of the complete grid
  std::optional<i64> scan_limit;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int unknown_surface = 2;
inline constexpr int infeasible = 3;
inline constexpr int io_error = 4;
inline constexpr int verification_failed = 5;
inline constexpr int overflow = 6;
} // namespace exit_code

/// Executes one command. Diagnostics go to err; results go to the output
/// file, or to out when no path is set.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Throws std::invalid_argument on inconsistent settings.
void validate(const RunConfig &config);

} // namespace delpezzo::cli
