#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <delpezzo/parallel.hpp>

#include "cli.hpp"

using namespace delpezzo::cli;

int main(int argc, char **argv) {
  CLI::App app{"Rational point counts on singular del Pezzo surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = delpezzo::default_threads();

  const std::map<std::string, Method> methods{{"brute", Method::brute},
                                              {"divisor", Method::divisor},
                                              {"torsor", Method::torsor},
                                              {"projective-line", Method::projective_line}};
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}, {"text", Format::text}};
  const std::map<std::string, FitKind> fits{{"power", FitKind::power},
                                            {"fixed-power", FitKind::fixed_power},
                                            {"log-power", FitKind::log_power},
                                            {"log-exponent", FitKind::log_exponent}};

  auto common = [&](CLI::App *sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (default: DELPEZZO_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output,-o", cfg.output_path, "write results to this file instead of stdout");
    sub->add_option("--format", cfg.format, "csv, json or text")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--catalog", cfg.catalog_path, "catalog file (default: built-in catalog)");
    sub->add_option("--freeze", cfg.freeze_path, "also write the output to this expected-value file");
    sub->add_option("--check", cfg.check_path, "compare the output with this expected-value file");
    sub->add_flag("!--no-elapsed", cfg.include_elapsed, "leave the elapsed_ms column empty");
  };

  auto *list = app.add_subcommand("list", "list catalog records");
  common(list);

  auto *verify = app.add_subcommand("verify", "catalog checks, round trips and oracle comparisons");
  common(verify);
  verify->add_option("--B", cfg.B, "bound for the round-trip and brute-force suites (default 30)");

  auto *lines = app.add_subcommand("lines", "search for rational lines");
  common(lines);
  lines->add_option("--surface", cfg.surface_id)->required();
  lines->add_option("--coord-bound", cfg.coord_bound, "largest |coordinate| of the sampled points")
      ->capture_default_str();

  auto *count = app.add_subcommand("count", "count points of bounded height off the known lines");
  common(count);
  count->add_option("--surface", cfg.surface_id);
  count->add_option("--B", cfg.B, "height bounds, strictly increasing")->required();
  count->add_option("--method", cfg.method, "brute, divisor, torsor or projective-line")
      ->transform(CLI::CheckedTransformer(methods));
  count->add_option("--scan-limit", cfg.scan_limit, "override the full-scan feasibility bound");

  auto *torsor = app.add_subcommand("torsor-count", "count via the universal torsor of the 3A1 quartic");
  common(torsor);
  torsor->add_option("--surface", cfg.surface_id, "q-v-work (default) or q-v");
  torsor->add_option("--B", cfg.B, "height bounds, strictly increasing")->required();

  auto *dyadic = app.add_subcommand("dyadic", "per-box torsor counts over a dyadic grid");
  common(dyadic);
  dyadic->add_option("--B", cfg.B, "height bounds (default 100)");
  dyadic->add_flag("--small-grid", cfg.small_grid, "use all boxes with endpoints in {1,2,4}");

  auto *ternary = app.add_subcommand("ternary", "ternary-equation counts over a power-of-two grid");
  common(ternary);
  ternary->add_option("--max-product", cfg.max_product, "largest K1...K7")->capture_default_str();

  auto *fit = app.add_subcommand("fit", "fit asymptotic models to a count CSV");
  common(fit);
  fit->add_option("--input", cfg.input_path, "CSV written by count or torsor-count")->required();
  fit->add_option("--surface", cfg.surface_id, "use only rows for this surface");
  fit->add_option("--model", cfg.fit_kind, "power, fixed-power, log-power or log-exponent")
      ->transform(CLI::CheckedTransformer(fits));
  fit->add_option("--rho", cfg.rho, "Picard rank for log-power (default: from the catalog)");
  fit->add_option("--power", cfg.power, "exponent for fixed-power")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_code::usage;
  }

  const std::map<CLI::App *, Command> commands{{list, Command::list},       {verify, Command::verify},
                                               {lines, Command::lines},     {count, Command::count},
                                               {torsor, Command::torsor_count}, {dyadic, Command::dyadic},
                                               {ternary, Command::ternary}, {fit, Command::fit}};
  for (const auto &[sub, cmd] : commands)
    if (sub->parsed()) cfg.command = cmd;
  return run(cfg, std::cout, std::cerr);
}
