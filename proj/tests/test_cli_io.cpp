#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "test_support.hpp"
#include "vlasov/config.hpp"
#include "vlasov/drivers.hpp"
#include "vlasov/errors.hpp"
#include "vlasov/snapshot.hpp"

using namespace vlasov;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("vlasov_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

int run_tool(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(VLASOV_SPLIT_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("config defaults mirror the weak Landau experiment") {
  const RunConfig cfg = default_run_config();
  CHECK(cfg.grid.L() == doctest::Approx(4.0 * std::numbers::pi));
  CHECK(cfg.grid.vmax() == 6.0);
  CHECK(cfg.grid.nx() == 80);
  CHECK(cfg.grid.nv() == 80);
  CHECK(cfg.alpha == 0.01);
  CHECK(cfg.scheme.method() == SplittingMethod::strang);
  CHECK(cfg.scheme.midpoint() == MidpointPredictor::free_stream);
  CHECK(cfg.scheme.interpolation() == InterpolationScheme::cubic_spline);
  CHECK(cfg.scheme.steps() == 16);
  CHECK(cfg.snapshot_every == 0);

  const RunConfig round = parse_run_config(to_json(cfg));
  CHECK(to_json(round) == to_json(cfg));
}

TEST_CASE("config rejections") {
  using nlohmann::json;
  CHECK_THROWS_AS(parse_run_config(json{{"scheme.tau", 0.3}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"grid.nx", -4}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"alpha", 1.5}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"grid.Nx", 40}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"scheme.method", 3}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json::array()), ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("snapshot round trip and format errors") {
  TempDir dir("snap");
  const GridSpec g = vlasov::testing::landau_grid(16, 12);
  std::mt19937_64 rng(1);
  const DistributionField f(g, vlasov::testing::random_vector(rng, g.nx() * g.nv()));
  const fs::path p = dir.path / "a.snap";
  save_snapshot(p, f, 0.75);
  CHECK(fs::file_size(p) == 8 + 4 + 16 + 24 + 8 * 16 * 12);

  const Snapshot s = load_snapshot(p);
  CHECK(s.field == f);
  CHECK(s.header.time == 0.75);
  CHECK(s.header.version == 1);
  CHECK(read_snapshot_header(p).nx == 16);

  // Little-endian layout: version 1 follows the magic.
  const std::string bytes = slurp(p);
  CHECK(bytes.substr(0, 8) == "VLSVSNAP");
  CHECK(bytes[8] == 1);
  CHECK(bytes[9] == 0);

  CHECK_THROWS_AS(load_snapshot(p, vlasov::testing::landau_grid(16, 14)), DimensionError);

  std::string corrupt = bytes;
  corrupt[0] = 'X';
  write_text(dir.path / "bad_magic.snap", corrupt);
  CHECK_THROWS_AS(load_snapshot(dir.path / "bad_magic.snap"), FormatError);

  std::string version = bytes;
  version[8] = 2;
  write_text(dir.path / "bad_version.snap", version);
  CHECK_THROWS_AS(load_snapshot(dir.path / "bad_version.snap"), FormatError);

  write_text(dir.path / "short.snap", bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS_AS(load_snapshot(dir.path / "short.snap"), FormatError);
  write_text(dir.path / "header.snap", bytes.substr(0, 20));
  CHECK_THROWS_AS(read_snapshot_header(dir.path / "header.snap"), FormatError);
  CHECK_THROWS_AS(load_snapshot(dir.path / "missing.snap"), FormatError);
}

TEST_CASE("run writes diagnostics and snapshots") {
  TempDir dir("run");
  RunConfig cfg = default_run_config();
  cfg.output_dir = dir.path / "weak";
  cfg.snapshot_every = 4;
  std::ostringstream log;
  const RunSummary summary = run_simulation(cfg, log);
  const std::string csv = slurp(summary.diagnostics_csv);
  CHECK(count_lines(csv) == 17);
  CHECK(csv.rfind("step,t,mass,l1_norm,electric_energy,boundary_mass\n", 0) == 0);
  CHECK(fs::exists(summary.final_snapshot));
  CHECK(summary.snapshots.size() == 3);
  CHECK(load_snapshot(summary.final_snapshot).header.time == 1.0);

  // Byte-identical on rerun.
  cfg.output_dir = dir.path / "again";
  run_simulation(cfg, log);
  CHECK(slurp(cfg.output_dir / "diagnostics.csv") == csv);
  CHECK(slurp(cfg.output_dir / "final.snap") == slurp(summary.final_snapshot));
}

TEST_CASE("equilibrium run returns the initial state") {
  TempDir dir("equilibrium");
  RunConfig cfg = parse_run_config({{"alpha", 0.0}});
  cfg.output_dir = dir.path;
  std::ostringstream log;
  const RunSummary summary = run_simulation(cfg, log);
  const DistributionField initial = landau_initial_condition(cfg.grid, 0.0);
  CHECK(l1_distance(load_snapshot(summary.final_snapshot).field, initial) <= 1e-12);
}

TEST_CASE("reference step count") {
  CHECK(reference_step_count(1.0, 1.0 / 256.0) == 256);
  CHECK(reference_step_count(1.0, 3.9e-3) == 257);
  CHECK(reference_step_count(2.0, 0.5) == 4);
  CHECK_THROWS_AS(reference_step_count(1.0, 0.0), ConfigError);
}

TEST_CASE("convergence driver on a coarse grid") {
  TempDir dir("convergence");
  RunConfig cfg = parse_run_config({{"grid.nx", 32}, {"grid.nv", 48}, {"alpha", 0.05}});
  std::ostringstream log;
  const std::vector<double> taus = {0.25, 0.125, 0.0625};
  const auto report =
      run_convergence(cfg, SplittingMethod::strang, taus, 0.01, dir.path, log);
  CHECK(report.reference_steps == 100);
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    CHECK(row.error > 0.0);
    CHECK(std::isfinite(row.error));
  }
  CHECK(report.fit.slope > 1.5);

  const fs::path cached = dir.path / ("reference_" +
                                      config_hash(with_scheme(cfg, SplittingMethod::strang, 0.01)) +
                                      ".snap");
  CHECK(fs::exists(cached));
  std::ostringstream second_log;
  const auto again = run_convergence(cfg, SplittingMethod::strang, taus, 0.01, dir.path, second_log);
  CHECK(second_log.str().find("using cached reference") != std::string::npos);
  CHECK(again.rows[2].error == report.rows[2].error);

  write_convergence_csv(dir.path / "c.csv", report);
  const std::string csv = slurp(dir.path / "c.csv");
  CHECK(csv.rfind("tau,error,pairwise_order\n", 0) == 0);
  CHECK(count_lines(csv) == 4);

  CHECK_THROWS_AS(run_convergence(cfg, SplittingMethod::strang, taus, 0.05, std::nullopt, log),
                  ConfigError);
  CHECK_THROWS_AS(run_convergence(cfg, SplittingMethod::strang, {0.3, 0.1}, 0.01, std::nullopt, log),
                  ConfigError);
}

TEST_CASE("config hash ignores output settings") {
  RunConfig a = default_run_config();
  RunConfig b = a;
  b.output_dir = "elsewhere";
  b.snapshot_every = 3;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(with_scheme(a, SplittingMethod::lie, a.scheme.tau())));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("command line exit codes") {
  TempDir dir("cli");
  const fs::path log = dir.path / "log.txt";

  write_text(dir.path / "weak.json", R"({"alpha": 0.01, "scheme.tau": 0.0625})");
  CHECK(run_tool("run --config " + (dir.path / "weak.json").string() + " --out " +
                     (dir.path / "out").string(),
                 log) == 0);
  CHECK(count_lines(slurp(dir.path / "out" / "diagnostics.csv")) == 17);

  CHECK(run_tool("snapshot-info " + (dir.path / "out" / "final.snap").string(), log) == 0);
  CHECK(slurp(log).find("nx 80") != std::string::npos);

  write_text(dir.path / "bad.json", R"({"scheme.tau": 0.3})");
  CHECK(run_tool("run --config " + (dir.path / "bad.json").string(), log) == 2);
  CHECK(run_tool("run", log) == 2);
  write_text(dir.path / "broken.json", "{not json");
  CHECK(run_tool("run --config " + (dir.path / "broken.json").string(), log) == 2);

  write_text(dir.path / "coarse.json",
             R"({"grid.nx": 16, "grid.nv": 32, "alpha": 0.05})");
  CHECK(run_tool("convergence --config " + (dir.path / "coarse.json").string() +
                     " --taus 0.25,0.125 --tau-ref 0.02 --method both --out " +
                     (dir.path / "conv").string(),
                 log) == 0);
  CHECK(fs::exists(dir.path / "conv" / "convergence_strang.csv"));
  CHECK(fs::exists(dir.path / "conv" / "convergence_lie.csv"));
  CHECK(count_lines(slurp(dir.path / "conv" / "convergence_summary.csv")) == 3);
  CHECK(run_tool("convergence --config " + (dir.path / "coarse.json").string() +
                     " --taus 0.25,abc --out " + (dir.path / "conv").string(),
                 log) == 2);

  CHECK(run_tool("verify --phi-tol 1e-20", log) == 1);
  CHECK(slurp(log).find("phi: recurrence") != std::string::npos);
  CHECK(run_tool("verify", log) == 0);
}
