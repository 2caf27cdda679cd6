#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ios>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include <delpezzo.hpp>

namespace delpezzo::cli {
namespace {

using nlohmann::json;

struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  const RunConfig &cfg;
  std::vector<SurfaceRecord> records;
  bool include_elapsed;

  const SurfaceRecord &surface() const {
    if (cfg.surface_id.empty()) throw std::invalid_argument("--surface is required for this command");
    for (const auto &r : records)
      if (r.id == cfg.surface_id) return r;
    throw unknown_surface("unknown surface id '" + cfg.surface_id + "'");
  }
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_line(const Line &l) {
  std::string s;
  for (const auto &row : l.basis()) {
    if (!s.empty()) s += ';';
    s += '[';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(row[i]);
    }
    s += ']';
  }
  return s;
}

json result_json(const CountResult &r, bool include_elapsed) {
  json j{{"surface_id", r.surface_id ? json(*r.surface_id) : json()},
         {"method", to_string(r.method)},
         {"B", r.B},
         {"N", r.N}};
  if (include_elapsed) j["elapsed_ms"] = static_cast<long long>(r.elapsed.count() + 0.5);
  return j;
}

void emit_results(const Context &ctx, const std::vector<CountResult> &rows, std::ostream &out) {
  if (ctx.cfg.format == Format::json) {
    json a = json::array();
    for (const auto &r : rows) a.push_back(result_json(r, ctx.include_elapsed));
    out << a.dump(2) << '\n';
    return;
  }
  write_csv_header(out);
  for (const auto &r : rows) write_csv_row(out, r, ctx.include_elapsed);
}

std::vector<i64> bounds_or(const RunConfig &cfg, std::vector<i64> fallback) {
  return cfg.B.empty() ? fallback : cfg.B;
}

bool is_s3(const std::string &id) { return id == "q-v" || id == "q-v-work"; }

// -- list --------------------------------------------------------------------

int cmd_list(const Context &ctx, std::ostream &out) {
  if (ctx.cfg.format == Format::text) {
    write_catalog(out, ctx.records);
    return exit_code::ok;
  }
  if (ctx.cfg.format == Format::json) {
    json a = json::array();
    for (const auto &r : ctx.records)
      a.push_back({{"id", r.id},
                   {"dim", r.ambient_dim},
                   {"degree", r.surface_degree()},
                   {"singularity", r.singularity_type},
                   {"lines", r.geometric_line_count},
                   {"rho", r.picard_rank ? json(*r.picard_rank) : json()},
                   {"known_lines", r.known_lines.size()},
                   {"known_singular_points", r.known_singular_points.size()}});
    out << a.dump(2) << '\n';
    return exit_code::ok;
  }
  out << "id,dim,degree,singularity,lines,rho,known_lines,known_singular_points\n";
  for (const auto &r : ctx.records)
    out << r.id << ',' << r.ambient_dim << ',' << r.surface_degree() << ',' << r.singularity_type << ','
        << r.geometric_line_count << ',' << (r.picard_rank ? std::to_string(*r.picard_rank) : "?") << ','
        << r.known_lines.size() << ',' << r.known_singular_points.size() << '\n';
  return exit_code::ok;
}

// -- verify ------------------------------------------------------------------

int cmd_verify(const Context &ctx, std::ostream &out) {
  const unsigned threads = ctx.cfg.threads;
  bool all = true;
  auto report = [&](const std::string &name, bool ok, const std::string &detail = {}) {
    all = all && ok;
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << " (" << detail << ')';
    out << '\n';
  };

  for (const auto &c : verify_catalog(ctx.records)) {
    std::string why;
    for (const auto &r : c.reasons) why += (why.empty() ? "" : "; ") + r;
    report("catalog " + c.id, c.passed, why);
  }

  const i64 B = bounds_or(ctx.cfg, {30}).back();
  const auto &work = catalog_get("q-v-work");

  // Every point off the lines lifts and maps back; every torsor vector maps to such a point.
  {
    auto pts = brute_points(work, B, work.known_lines);
    bool ok = true;
    for (const auto &p : pts) ok = ok && s3::torsor_to_point(s3::lift_to_torsor(p)) == p;
    auto ys = s3::torsor_vectors(B);
    for (const auto &y : ys) ok = ok && s3::lift_to_torsor(s3::torsor_to_point(y)) == y && s3::psi(y) <= B;
    ok = ok && ys.size() == pts.size();
    report("round-trip B<=" + std::to_string(B), ok, std::to_string(pts.size()) + " points");
  }
  {
    auto profile = brute_count_profile(work, B, work.known_lines, threads);
    bool ok = true;
    for (i64 b = 1; b <= B; ++b) ok = ok && s3::count_torsor(b, threads).N == profile[static_cast<std::size_t>(b)];
    report("torsor=brute for B<=" + std::to_string(B), ok);
  }
  for (i64 b : {i64{100}, i64{200}}) {
    auto t = s3::count_torsor(b, threads).N, d = count_divisor_oracle_s3(b, threads).N;
    report("torsor=divisor at B=" + std::to_string(b), t == d, std::to_string(t) + " vs " + std::to_string(d));
  }
  {
    auto g = complete_dyadic_grid(100);
    long long sum = 0;
    for (const auto &box : g) sum += count_dyadic_box(box, 100, 1);
    report("dyadic partition at B=100", sum == s3::count_torsor(100, threads).N);
  }
  return all ? exit_code::ok : exit_code::verification_failed;
}

// -- lines -------------------------------------------------------------------

int cmd_lines(const Context &ctx, std::ostream &out) {
  const auto &s = ctx.surface();
  auto lines = find_rational_lines(s, ctx.cfg.coord_bound, ctx.cfg.threads);
  if (ctx.cfg.format == Format::json) {
    json a = json::array();
    for (const auto &l : lines) a.push_back(l.basis());
    out << json{{"surface_id", s.id}, {"coord_bound", ctx.cfg.coord_bound}, {"count", lines.size()}, {"lines", a}}.dump(2)
        << '\n';
  } else if (ctx.cfg.format == Format::text) {
    for (const auto &l : lines) out << format_line(l) << '\n';
  } else {
    out << "surface_id,line\n";
    for (const auto &l : lines) out << s.id << ',' << format_line(l) << '\n';
  }
  return exit_code::ok;
}

// -- count -------------------------------------------------------------------

CountResult count_one(const Context &ctx, Method m, i64 B) {
  switch (m) {
  case Method::projective_line: return count_projective_line(B);
  case Method::brute: {
    const auto &s = ctx.surface();
    ScanLimits lim;
    if (ctx.cfg.scan_limit) lim.max_bound_p3 = lim.max_bound_p4 = *ctx.cfg.scan_limit;
    return count_brute(s, B, s.known_lines, ctx.cfg.threads, lim);
  }
  case Method::divisor:
  case Method::torsor: {
    // The two models of the type v surface differ by x0 -> -x0, x2 -> -x2,
    // which preserves heights and lines, so their counts agree.
    const auto &s = ctx.cfg.surface_id.empty() ? catalog_get("q-v-work") : ctx.surface();
    if (!is_s3(s.id)) throw std::invalid_argument("method only available for q-v and q-v-work");
    auto r = m == Method::divisor ? count_divisor_oracle_s3(B, ctx.cfg.threads) : s3::count_torsor(B, ctx.cfg.threads);
    r.surface_id = s.id;
    return r;
  }
  }
  throw std::logic_error("unhandled method");
}

int cmd_count(const Context &ctx, Method m, std::ostream &out) {
  if (ctx.cfg.B.empty()) throw std::invalid_argument("--B is required");
  std::vector<CountResult> rows;
  for (auto B : ctx.cfg.B) rows.push_back(count_one(ctx, m, B));
  emit_results(ctx, rows, out);
  return exit_code::ok;
}

// -- dyadic / ternary --------------------------------------------------------

std::vector<DyadicBox> small_grid() {
  std::vector<DyadicBox> out;
  for (int code = 0; code < 19683; ++code) { // 3^9
    DyadicBox b;
    int c = code;
    for (std::size_t k = 0; k < 9; ++k, c /= 3) b.Y[k] = i64{1} << (c % 3);
    out.push_back(b);
  }
  return out;
}

int cmd_dyadic(const Context &ctx, std::ostream &out, std::ostream &err) {
  json summaries = json::array();
  for (auto B : bounds_or(ctx.cfg, {100})) {
    auto boxes = ctx.cfg.small_grid ? small_grid() : complete_dyadic_grid(B);
    auto rep = check_box_bound(boxes, B, ctx.cfg.threads);
    json s{{"B", B},
           {"grid", ctx.cfg.small_grid ? "small" : "complete"},
           {"boxes", boxes.size()},
           {"total", rep.total},
           {"max_ratio", rep.max_ratio},
           {"argmax", rep.argmax.label()}};
    if (!ctx.cfg.small_grid) s["torsor_count"] = s3::count_torsor(B, ctx.cfg.threads).N;
    err << s.dump() << '\n';
    if (ctx.cfg.format == Format::json)
      summaries.push_back(s);
    else
      write_box_report_csv(out, rep);
  }
  if (ctx.cfg.format == Format::json) out << summaries.dump(2) << '\n';
  return exit_code::ok;
}

std::string ternary_label(const TernaryBox &b) {
  std::string s;
  for (std::size_t k = 0; k < 7; ++k) s += (k ? ":" : "") + std::to_string(b.K[k]);
  return s;
}

int cmd_ternary(const Context &ctx, std::ostream &out) {
  DyadicLimits lim;
  lim.max_ternary_product = std::max(lim.max_ternary_product, ctx.cfg.max_product);
  auto boxes = ternary_grid(ctx.cfg.max_product);
  std::vector<long long> M;
  auto rep = check_ternary_bound(boxes, ctx.cfg.threads, lim, &M);
  if (ctx.cfg.format == Format::json) {
    out << json{{"max_product", ctx.cfg.max_product},
                {"boxes", rep.boxes},
                {"max_ratio", rep.max_ratio},
                {"argmax", ternary_label(rep.argmax)}}
               .dump(2)
        << '\n';
    return exit_code::ok;
  }
  out << "box,count,bound_denominator,ratio\n";
  for (std::size_t i = 0; i < boxes.size(); ++i)
    out << ternary_label(boxes[i]) << ',' << M[i] << ',' << boxes[i].scale() << ','
        << format_double(static_cast<double>(M[i]) / static_cast<double>(boxes[i].scale())) << '\n';
  return exit_code::ok;
}

// -- fit ---------------------------------------------------------------------

int cmd_fit(const Context &ctx, std::ostream &out) {
  if (ctx.cfg.input_path.empty()) throw std::invalid_argument("--input is required for fit");
  std::ifstream in(ctx.cfg.input_path);
  if (!in) throw io_failure("cannot open " + ctx.cfg.input_path);
  auto rows = read_count_csv(in);
  if (!ctx.cfg.surface_id.empty())
    std::erase_if(rows, [&](const CountResult &r) { return r.surface_id.value_or("") != ctx.cfg.surface_id; });
  auto samples = to_samples(rows);
  FitReport rep;
  switch (ctx.cfg.fit_kind) {
  case FitKind::power: rep = fit_exponent(samples); break;
  case FitKind::fixed_power: rep = fit_power_constant(samples, ctx.cfg.power); break;
  case FitKind::log_exponent: rep = fit_log_exponent(samples); break;
  case FitKind::log_power: {
    std::optional<int> rho = ctx.cfg.rho;
    if (!rho) {
      const auto &s = ctx.surface();
      if (!s.picard_rank) throw std::invalid_argument("no Picard rank recorded for " + s.id + "; pass --rho");
      rho = *s.picard_rank;
    }
    rep = fit_leading_constant(samples, *rho);
    break;
  }
  }
  out << to_json(rep).dump(2) << '\n';
  return exit_code::ok;
}

int dispatch(const Context &ctx, std::ostream &out, std::ostream &err) {
  switch (ctx.cfg.command) {
  case Command::list: return cmd_list(ctx, out);
  case Command::verify: return cmd_verify(ctx, out);
  case Command::lines: return cmd_lines(ctx, out);
  case Command::count: return cmd_count(ctx, ctx.cfg.method, out);
  case Command::torsor_count: return cmd_count(ctx, Method::torsor, out);
  case Command::dyadic: return cmd_dyadic(ctx, out, err);
  case Command::ternary: return cmd_ternary(ctx, out);
  case Command::fit: return cmd_fit(ctx, out);
  }
  return exit_code::usage;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_failure("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content) || !f.flush()) throw io_failure("cannot write " + path);
}

} // namespace

void validate(const RunConfig &cfg) {
  if (cfg.threads < 1) throw std::invalid_argument("--threads must be at least 1");
  for (std::size_t i = 0; i < cfg.B.size(); ++i) {
    if (cfg.B[i] < 1) throw std::invalid_argument("B values must be positive");
    if (i > 0 && cfg.B[i] <= cfg.B[i - 1]) throw std::invalid_argument("B values must be strictly increasing");
  }
  if (cfg.coord_bound < 1) throw std::invalid_argument("--coord-bound must be positive");
  if (cfg.max_product < 1) throw std::invalid_argument("--max-product must be positive");
}

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    validate(cfg);
    Context ctx{cfg, {}, cfg.include_elapsed && cfg.freeze_path.empty() && cfg.check_path.empty()};
    ctx.records = cfg.catalog_path.empty() ? catalog_list() : read_catalog_file(cfg.catalog_path);

    std::ostringstream buf;
    int status = dispatch(ctx, buf, err);
    const std::string text = buf.str();

    if (!cfg.freeze_path.empty()) write_file(cfg.freeze_path, text);
    if (cfg.output_path.empty())
      out << text;
    else
      write_file(cfg.output_path, text);
    if (!cfg.check_path.empty() && read_file(cfg.check_path) != text) {
      err << "output differs from " << cfg.check_path << '\n';
      return exit_code::verification_failed;
    }
    return status;
  } catch (const unknown_surface &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::unknown_surface;
  } catch (const infeasible_bound &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::infeasible;
  } catch (const budget_exceeded &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::infeasible;
  } catch (const arithmetic_overflow &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::overflow;
  } catch (const io_failure &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::io_error;
  } catch (const std::ios_base::failure &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::io_error;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

} // namespace delpezzo::cli
