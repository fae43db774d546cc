#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "loggas/commands.hpp"
#include "loggas/config.hpp"
#include "loggas/manifest.hpp"
#include "loggas/sample_io.hpp"
#include "loggas/svg_plot.hpp"

using namespace loggas;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("loggas_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& name = "") const { return (path / name).string(); }
};

ExperimentConfig small_config(const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.n = 24;
  cfg.beta = 2.0;
  cfg.interaction_amplitudes = {0.1};
  cfg.interaction_widths = {1.0};
  cfg.grid_cells = 256;
  cfg.sc_tol = 1e-4;
  cfg.n_samples = 150;
  cfg.seed = 3;
  cfg.out_dir = out_dir;
  return cfg;
}

}  // namespace

TEST_CASE("config round trip and defaults") {
  ExperimentConfig cfg;
  CHECK(parse_config(serialize_config(cfg)) == cfg);

  cfg.n = 77;
  cfg.beta = 3.5;
  cfg.field_kind = FieldKind::gaussian_plus_bump;
  cfg.field_coeffs = {1.0, 0.25, 2.0};
  cfg.interaction_amplitudes = {0.1, -0.05};
  cfg.interaction_widths = {1.0, 2.5};
  cfg.grid_left = -5.5;
  cfg.grid_right = 5.5;
  cfg.corr_k = {1, 2, 3};
  cfg.algorithm = "mala";
  cfg.kde_bandwidth = 0.07;
  cfg.out_dir = "elsewhere";
  CHECK(parse_config(serialize_config(cfg)) == cfg);
}

TEST_CASE("config diagnostics carry line and field") {
  try {
    parse_config("ensemble.n = 10\nbogus.key = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
    CHECK(e.field == "bogus.key");
  }
  try {
    parse_config("ensemble.beta = banana\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 1);
    CHECK(e.field == "ensemble.beta");
  }
  CHECK_THROWS_AS(parse_config("stats.xi = 0.9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sampler.target = nonsense\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sampler.algorithm = tridiagonal\n"), ConfigError);  // needs gaussian target
  // comments and blanks are fine
  CHECK_NOTHROW(parse_config("# comment\n\nensemble.n = 5  # trailing\n"));
}

TEST_CASE("sample file round trip") {
  TempDir dir("io");
  SampleMeta meta;
  meta.n = 3;
  meta.beta = 2.5;
  meta.field = "gaussian;coeffs=1;bound=6";
  meta.interaction = "0.1:1";
  meta.sampler = "metropolis";
  meta.target = "modified";
  meta.seed = 99;
  meta.n_steps = 300;
  meta.burn_in = 100;
  meta.thin = 3;
  SampleSet samples{{-1.0, 0.0, 1.0}, {-0.5, 0.25, 2.0}};
  const std::string path = dir.str("samples.csv");
  write_samples_csv(path, meta, samples);
  auto [meta2, samples2] = read_samples_csv(path);
  CHECK(meta2.n == meta.n);
  CHECK(meta2.beta == meta.beta);
  CHECK(meta2.field == meta.field);
  CHECK(meta2.interaction == meta.interaction);
  CHECK(meta2.seed == meta.seed);
  CHECK(meta2.thin == meta.thin);
  REQUIRE(samples2.size() == samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s)
    for (std::size_t j = 0; j < samples[s].size(); ++j) CHECK(samples2[s][j] == samples[s][j]);

  // unsorted rows are sorted on ingestion
  std::ofstream(path, std::ios::app) << "2,1,0\n";
  auto [meta3, samples3] = read_samples_csv(path);
  CHECK(std::is_sorted(samples3.back().begin(), samples3.back().end()));
}

TEST_CASE("manifest hashes pin outputs") {
  TempDir dir("manifest");
  const std::string file = dir.str("artifact.csv");
  std::ofstream(file) << "a,b\n1,2\n";
  Manifest manifest("test", "config text");
  manifest.set_result("answer", 42.0);
  manifest.add_output(file);
  const std::string mpath = dir.str("manifest.json");
  manifest.write(mpath);

  auto doc = Manifest::read(mpath);
  CHECK(doc["command"] == "test");
  CHECK(doc["results"]["answer"] == 42.0);
  const std::string recorded = doc["outputs"][0]["fnv1a64"];
  CHECK(recorded == hash_string(fnv1a64_file(file)));
  std::ofstream(file, std::ios::app) << "3,4\n";
  CHECK(recorded != hash_string(fnv1a64_file(file)));
}

TEST_CASE("svg plot writes well-formed markup") {
  TempDir dir("svg");
  SvgPlot plot("demo", "x", "y");
  plot.add_line({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}, "series");
  plot.add_bars({0.0, 0.5, 1.0}, {0.2, 0.7}, "hist");
  const std::string path = dir.str("plot.svg");
  plot.write(path);
  std::ifstream is(path);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("polyline") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
}

TEST_CASE("eqsolve writes certified artifacts") {
  TempDir dir("eqsolve");
  auto cfg = small_config(dir.str("run"));
  CHECK(cmd_eqsolve(cfg) == exit_code::ok);
  auto [mu, potential] = read_equilibrium_csv(dir.str("run/equilibrium.csv"));
  CHECK(mu.is_normalized(1e-9));
  auto [lo, hi] = mu.support_interval();
  CHECK(std::abs(lo + std::sqrt(2.0)) < 0.1);
  CHECK(std::abs(hi - std::sqrt(2.0)) < 0.1);
  auto doc = Manifest::read(dir.str("run/equilibrium_manifest.json"));
  CHECK(double(doc["results"]["el_residual"]) <= 1e-6);
  CHECK(double(doc["results"]["self_consistency_l1"]) <= cfg.sc_tol);

  // h = 0 self-consistent request equals the plain solve output byte for byte
  auto cfg0 = cfg;
  cfg0.interaction_amplitudes.clear();
  cfg0.interaction_widths.clear();
  cfg0.out_dir = dir.str("plain_a");
  CHECK(cmd_eqsolve(cfg0) == exit_code::ok);
  auto cfg1 = cfg0;
  cfg1.out_dir = dir.str("plain_b");
  CHECK(cmd_eqsolve(cfg1) == exit_code::ok);
  CHECK(fnv1a64_file(dir.str("plain_a/equilibrium.csv")) == fnv1a64_file(dir.str("plain_b/equilibrium.csv")));
}

TEST_CASE("sample determinism and resume equality through the harness") {
  TempDir dir("sample");
  auto cfg = small_config(dir.str("a"));
  CHECK(cmd_sample(cfg) == exit_code::ok);
  auto cfg_b = cfg;
  cfg_b.out_dir = dir.str("b");
  CHECK(cmd_sample(cfg_b) == exit_code::ok);
  CHECK(fnv1a64_file(dir.str("a/samples.csv")) == fnv1a64_file(dir.str("b/samples.csv")));

  // interrupt after 60 retained samples, then resume to completion
  auto cfg_c = cfg;
  cfg_c.out_dir = dir.str("c");
  cfg_c.checkpoint_every = 25;
  SampleOptions interrupt;
  interrupt.interrupt_after = 60;
  CHECK(cmd_sample(cfg_c, interrupt) == exit_code::ok);
  auto partial = read_samples_csv(dir.str("c/samples.csv"));
  CHECK(partial.second.size() < cfg.n_samples);
  CHECK(cmd_sample(cfg_c) == exit_code::ok);  // resumes from chain_state.txt
  CHECK(fnv1a64_file(dir.str("a/samples.csv")) == fnv1a64_file(dir.str("c/samples.csv")));

  // tridiagonal path reports the moment summary in the manifest
  ExperimentConfig gauss;
  gauss.n = 100;
  gauss.beta = 2.0;
  gauss.target = "gaussian";
  gauss.algorithm = "tridiagonal";
  gauss.n_samples = 400;
  gauss.seed = 8;
  gauss.out_dir = dir.str("g");
  CHECK(cmd_sample(gauss) == exit_code::ok);
  auto doc = Manifest::read(dir.str("g/samples_manifest.json"));
  CHECK(std::abs(double(doc["results"]["second_moment"]) - 0.5) < 0.02);
}

TEST_CASE("comparison sampling requires the equilibrium artifact") {
  TempDir dir("missing");
  auto cfg = small_config(dir.str("run"));
  cfg.target = "comparison";
  CHECK_THROWS_AS(cmd_sample(cfg), MissingArtifactError);
  CHECK(cmd_eqsolve(cfg) == exit_code::ok);
  CHECK(cmd_sample(cfg) == exit_code::ok);
}

TEST_CASE("stats command produces densities, spacings and correlations") {
  TempDir dir("stats");
  auto cfg = small_config(dir.str("run"));
  cfg.n = 40;
  cfg.n_samples = 400;
  CHECK(cmd_eqsolve(cfg) == exit_code::ok);
  CHECK(cmd_sample(cfg) == exit_code::ok);
  CHECK(cmd_stats(cfg) == exit_code::ok);
  for (const char* name : {"density.csv", "correlations.csv", "spacing.csv", "density_overlay.svg",
                           "spacing_hist.svg", "stats_manifest.json"})
    CHECK(fs::exists(dir.str(std::string("run/") + name)));
  auto doc = Manifest::read(dir.str("run/stats_manifest.json"));
  CHECK(double(doc["results"]["density_l1"]) < 0.25);
  CHECK(double(doc["results"]["mean_gap"]) > 0.8);
  CHECK(double(doc["results"]["mean_gap"]) < 1.2);
}

TEST_CASE("compare: identical laws pass, mismatched beta guarded by exit 4 semantics") {
  TempDir dir("compare");
  // two gaussian tridiagonal runs with different seeds, same law
  ExperimentConfig gauss;
  gauss.n = 80;
  gauss.beta = 2.0;
  gauss.target = "gaussian";
  gauss.algorithm = "tridiagonal";
  gauss.n_samples = 500;
  gauss.seed = 21;
  gauss.out_dir = dir.str("a");
  CHECK(cmd_sample(gauss) == exit_code::ok);
  gauss.seed = 22;
  gauss.out_dir = dir.str("b");
  CHECK(cmd_sample(gauss) == exit_code::ok);

  ExperimentConfig cmp;
  cmp.n = 80;
  cmp.beta = 2.0;
  cmp.grid_cells = 512;
  cmp.n_samples = 500;
  cmp.corr_k = {1};
  cmp.out_dir = dir.str("cmp");
  CHECK(cmd_compare(cmp, dir.str("a/samples.csv"), dir.str("b/samples.csv")) == exit_code::ok);
  CHECK(fs::exists(dir.str("cmp/compare_report.txt")));

  // deliberately mismatched beta: refused without --force, FAIL verdict with it
  ExperimentConfig g4 = gauss;
  g4.beta = 4.0;
  g4.seed = 23;
  g4.out_dir = dir.str("b4");
  CHECK(cmd_sample(g4) == exit_code::ok);
  CHECK_THROWS_AS(cmd_compare(cmp, dir.str("a/samples.csv"), dir.str("b4/samples.csv")),
                  IncompatibleInputsError);
  CHECK(cmd_compare(cmp, dir.str("a/samples.csv"), dir.str("b4/samples.csv"), true) ==
        exit_code::checks_failed);
}
