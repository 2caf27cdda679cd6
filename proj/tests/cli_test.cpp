#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include <delpezzo/catalog.hpp>

#include "cli.hpp"

using namespace delpezzo;
using namespace delpezzo::cli;

namespace {

struct Output {
  int status;
  std::string out, err;
};

Output invoke(RunConfig cfg) {
  std::ostringstream out, err;
  int status = run(cfg, out, err);
  return {status, out.str(), err.str()};
}

RunConfig counting(std::string surface, std::vector<i64> B, Method m) {
  RunConfig c;
  c.command = Command::count;
  c.surface_id = std::move(surface);
  c.B = std::move(B);
  c.method = m;
  c.include_elapsed = false;
  return c;
}

std::filesystem::path temp_file(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("delpezzo_cli_test_" + name);
}

} // namespace

TEST(Cli, BruteCountRow) {
  auto r = invoke(counting("q-v-work", {40}, Method::brute));
  EXPECT_EQ(r.status, exit_code::ok) << r.err;
  EXPECT_EQ(r.out, "surface_id,method,B,N,elapsed_ms\nq-v-work,brute,40,796,\n");
}

TEST(Cli, TorsorAndDivisorAgree) {
  RunConfig t;
  t.command = Command::torsor_count;
  t.B = {100};
  t.include_elapsed = false;
  auto a = invoke(t);
  auto b = invoke(counting("q-v-work", {100}, Method::divisor));
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(a.out, "surface_id,method,B,N,elapsed_ms\nq-v-work,torsor,100,3992,\n");
  EXPECT_EQ(b.out, "surface_id,method,B,N,elapsed_ms\nq-v-work,divisor_oracle,100,3992,\n");
}

TEST(Cli, CayleyLines) {
  RunConfig c;
  c.command = Command::lines;
  c.surface_id = "c-cayley";
  c.format = Format::json;
  auto r = invoke(c);
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["count"], 9);
  EXPECT_EQ(j["lines"].size(), 9u);
}

TEST(Cli, ListTextMatchesCatalogFile) {
  RunConfig c;
  c.command = Command::list;
  c.format = Format::text;
  auto r = invoke(c);
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, catalog_text(catalog_list()));
  c.format = Format::csv;
  auto csv = invoke(c);
  EXPECT_NE(csv.out.find("q-v,4,4,3A1,6,6,6,3\n"), std::string::npos) << csv.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke(counting("q-nope", {10}, Method::brute)).status, exit_code::unknown_surface);
  EXPECT_EQ(invoke(counting("q-v-work", {61}, Method::brute)).status, exit_code::infeasible);
  EXPECT_EQ(invoke(counting("q-v-work", {20, 10}, Method::brute)).status, exit_code::usage);
  EXPECT_EQ(invoke(counting("c-e6", {10}, Method::torsor)).status, exit_code::usage);
  auto io = counting("q-v-work", {10}, Method::brute);
  io.output_path = "/nonexistent-dir/out.csv";
  EXPECT_EQ(invoke(io).status, exit_code::io_error);
  RunConfig fit;
  fit.command = Command::fit;
  fit.input_path = "/nonexistent-dir/in.csv";
  EXPECT_EQ(invoke(fit).status, exit_code::io_error);
  RunConfig cat;
  cat.command = Command::list;
  cat.catalog_path = "/nonexistent-dir/catalog.txt";
  EXPECT_EQ(invoke(cat).status, exit_code::io_error);
  RunConfig grid;
  grid.command = Command::dyadic;
  grid.B = {20000};
  EXPECT_EQ(invoke(grid).status, exit_code::infeasible);
}

TEST(Cli, FreezeThenCheck) {
  auto path = temp_file("freeze.csv");
  auto c = counting("q-v-work", {10, 20}, Method::torsor);
  c.include_elapsed = true; // freezing drops the elapsed column regardless
  c.freeze_path = path.string();
  ASSERT_EQ(invoke(c).status, 0);
  c.freeze_path.clear();
  c.check_path = path.string();
  c.threads = 4;
  EXPECT_EQ(invoke(c).status, 0);
  {
    std::ofstream f(path);
    f << "surface_id,method,B,N,elapsed_ms\nq-v-work,torsor,10,105,\n";
  }
  EXPECT_EQ(invoke(c).status, exit_code::verification_failed);
  std::filesystem::remove(path);
}

TEST(Cli, OutputIndependentOfThreads) {
  for (unsigned t : {1u, 4u, 8u}) {
    auto c = counting("q-v", {5, 30}, Method::brute);
    c.threads = t;
    EXPECT_EQ(invoke(c).out, "surface_id,method,B,N,elapsed_ms\nq-v,brute,5,22,\nq-v,brute,30,584,\n") << t;
  }
}

TEST(Cli, FitFromCountCsv) {
  auto path = temp_file("counts.csv");
  auto c = counting("", {100, 1000, 10000, 100000}, Method::projective_line);
  c.output_path = path.string();
  ASSERT_EQ(invoke(c).status, 0);
  RunConfig fit;
  fit.command = Command::fit;
  fit.input_path = path.string();
  auto r = invoke(fit);
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["fitted_exponent"].get<double>(), 2.0, 0.01);
  fit.fit_kind = FitKind::log_power;
  EXPECT_EQ(invoke(fit).status, exit_code::usage); // no surface, no rho
  fit.rho = 1;
  EXPECT_EQ(invoke(fit).status, 0);
  std::filesystem::remove(path);
}

TEST(Cli, DyadicAndTernarySummaries) {
  RunConfig d;
  d.command = Command::dyadic;
  d.B = {100};
  d.format = Format::json;
  auto r = invoke(d);
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[0]["total"], j[0]["torsor_count"]);
  RunConfig t;
  t.command = Command::ternary;
  t.max_product = 64;
  auto csv = invoke(t);
  ASSERT_EQ(csv.status, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "box,count,bound_denominator,ratio");
}

TEST(Cli, Verify) {
  RunConfig v;
  v.command = Command::verify;
  v.B = {20};
  auto r = invoke(v);
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS catalog q-v\n"), std::string::npos);
}
