// Copyright 2026 The qecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qecho/config.hpp"
#include "qecho/experiments.hpp"

using namespace qecho;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

// A sweep configuration small enough for the unit suite: two strengths, a
// handful of random preparations and a short benchmarking ladder.
ExperimentConfig tiny_sweep(const std::string& out_dir, std::uint64_t seed) {
  ExperimentConfig cfg = parse_config_text(
      "experiment = cnot_average\n"
      "seed = " + std::to_string(seed) + "\n"
      "eta_t = 0.02\n"
      "xi_t = 0.004\n"
      "theta = 0.01\n"
      "phi_grid = 0.0, 0.02\n"
      "n_max = 2\n"
      "num_preparations = 4\n"
      "rb_k_max = 3\n"
      "rb_samples = 3\n"
      "out_dir = " + out_dir + "\n",
      "tiny_sweep");
  return cfg;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(name) { fs::remove_all(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("the sweep experiment writes plot-ready outputs") {
  TempDir dir("exp_sweep_out");
  run_experiment(tiny_sweep(dir.path.string(), 2024));

  REQUIRE(fs::exists(dir.path / "cnot_average.csv"));
  REQUIRE(fs::exists(dir.path / "manifest.json"));

  const std::string csv = slurp(dir.path / "cnot_average.csv");
  // Header plus one row per sweep point.
  CHECK(line_count(csv) == 3);
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header.find("phi") == 0);
  CHECK(header.find("estimate_n1") != std::string::npos);
  CHECK(header.find("estimate_n2") != std::string::npos);
  CHECK(header.find("single_shot_std_n2") != std::string::npos);
  CHECK(header.find("oracle_incoherent") != std::string::npos);
  CHECK(header.find("oracle_total") != std::string::npos);
  CHECK(header.find("irb_r") != std::string::npos);

  const std::string manifest = slurp(dir.path / "manifest.json");
  CHECK(manifest.find("\"experiment\": \"cnot_average\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 2024") != std::string::npos);
  CHECK(manifest.find("library_version") != std::string::npos);
  CHECK(manifest.find("seed = 2024") != std::string::npos);  // config echo
}

TEST_CASE("identical configs produce byte-identical outputs") {
  TempDir a("exp_repro_a");
  TempDir b("exp_repro_b");
  TempDir c("exp_repro_c");
  run_experiment(tiny_sweep(a.path.string(), 77));
  run_experiment(tiny_sweep(b.path.string(), 77));
  run_experiment(tiny_sweep(c.path.string(), 78));

  CHECK(slurp(a.path / "cnot_average.csv") == slurp(b.path / "cnot_average.csv"));
  // The manifests echo the out_dir, so compare them after masking that line.
  auto masked = [](std::string s, const std::string& dir_line) {
    size_t pos;
    while ((pos = s.find(dir_line)) != std::string::npos) s.erase(pos, dir_line.size());
    return s;
  };
  CHECK(masked(slurp(a.path / "manifest.json"), a.path.string()) ==
        masked(slurp(b.path / "manifest.json"), b.path.string()));
  // A different seed changes the sampled sequences and hence the numbers.
  CHECK(slurp(a.path / "cnot_average.csv") != slurp(c.path / "cnot_average.csv"));
}

TEST_CASE("the benchmarking experiment writes decay curves and fits") {
  TempDir dir("exp_irb_out");
  ExperimentConfig cfg = parse_config_text(
      "experiment = irb\n"
      "seed = 5\n"
      "xi_t = 0.008\n"
      "rb_k_max = 3\n"
      "rb_samples = 3\n"
      "use_spam = false\n"
      "out_dir = " + dir.path.string() + "\n",
      "tiny_irb");
  run_experiment(cfg);

  REQUIRE(fs::exists(dir.path / "irb_decay.csv"));
  const std::string csv = slurp(dir.path / "irb_decay.csv");
  CHECK(line_count(csv) == 5);  // header + lengths 3, 18, 33, 48
  CHECK(csv.find("length,reference_mean,reference_fit,interleaved_mean,interleaved_fit") == 0);
  const std::string manifest = slurp(dir.path / "manifest.json");
  CHECK(manifest.find("\"reference_fit\"") != std::string::npos);
  CHECK(manifest.find("\"interleaved_fit\"") != std::string::npos);
  CHECK(manifest.find("\"r\"") != std::string::npos);
}

TEST_CASE("an unwritable output directory is a configuration error") {
  // Point out_dir at a path whose parent is a regular file.
  const std::string blocker = "exp_blocker_file";
  {
    std::ofstream out(blocker);
    out << "x";
  }
  ExperimentConfig cfg = tiny_sweep(blocker + "/sub", 1);
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  fs::remove(blocker);
}
