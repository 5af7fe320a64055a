// Copyright 2026 The qecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qecho/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qecho/bounds.hpp"
#include "qecho/estimator.hpp"
#include "qecho/irb.hpp"
#include "qecho/kernels.hpp"

#ifndef QECHO_VERSION_STRING
#define QECHO_VERSION_STRING "unknown"
#endif

namespace qecho {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::filesystem::path prepare_out_dir(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir))
    throw ConfigError(cfg.out_dir + ": cannot create output directory (" +
                      ec.message() + ")");
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

/// Run manifest: config echo, seed, versions and an experiment-specific
/// summary.  Deliberately excludes wall time and timestamps so identical
/// configs produce identical bytes; timing is printed to stdout instead.
void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                    const json& summary) {
  json manifest;
  manifest["schema_version"] = cfg.schema_version;
  manifest["library_version"] = QECHO_VERSION_STRING;
  manifest["experiment"] = to_string(cfg.experiment);
  manifest["seed"] = cfg.seed;
  {
    std::vector<std::string> lines;
    std::stringstream ss(serialize_config(cfg));
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    manifest["config"] = lines;
  }
  manifest["summary"] = summary;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

/// The shared lazy singleton table (building it enumerates all 11,520
/// elements; a run needs it only for the Clifford-sampled experiments).
const CliffordTable& shared_table() {
  static const CliffordTable table = CliffordTable::build();
  return table;
}

}  // namespace

void run_ghz(const ExperimentConfig& cfg) {
  Timer timer;
  const auto dir = prepare_out_dir(cfg);
  const ErrorParams params = config_error_params(cfg);
  const NoisyCircuit circuit = ghz_circuit(params);
  const DensityVec rho0 = basis_density(circuit.num_qubits, 0);

  std::printf("[ghz] realizing ideal and noise-only propagators...\n");
  std::fflush(stdout);
  const double oracle = exact_incoherent_infidelity(circuit, rho0);
  std::printf("[ghz] realizing the echo cycle...\n");
  std::fflush(stdout);
  const Superop cycle = realize(echo_cycle(circuit), EvolutionMode::Full);
  const std::vector<double> r_exact =
      survival_probabilities(cycle, cfg.n_max, rho0);

  Rng master(cfg.seed);
  std::string csv = "n,estimate,oracle_incoherent,relative_error\n";
  json rows = json::array();
  for (int n = 1; n <= cfg.n_max; ++n) {
    Rng shot_rng = master.child(static_cast<std::uint64_t>(n));
    const std::vector<double> prefix(r_exact.begin(), r_exact.begin() + n + 1);
    const EstimationReport rep =
        estimate_from_survivals(prefix, n, ShotSpec{cfg.shots}, shot_rng);
    const double rel =
        oracle != 0.0 ? std::abs(rep.estimate - oracle) / oracle : 0.0;
    csv += std::to_string(n) + "," + fmt(rep.estimate) + "," + fmt(oracle) + "," +
           fmt(rel) + "\n";
    rows.push_back({{"n", n},
                    {"estimate", rep.estimate},
                    {"sigma", rep.sigma},
                    {"variance", rep.variance},
                    {"relative_error", rel}});
  }
  write_file(dir / "ghz_convergence.csv", csv);
  write_manifest(dir, cfg,
                 json{{"oracle_incoherent", oracle}, {"orders", rows}});
  std::printf("[ghz] oracle incoherent infidelity: %.6g\n", oracle);
  std::printf("[ghz] done in %.1f s, outputs in %s\n", timer.seconds(),
              dir.string().c_str());
}

void run_cnot_average(const ExperimentConfig& cfg) {
  Timer timer;
  const auto dir = prepare_out_dir(cfg);
  const CliffordTable& table = shared_table();
  Rng master(cfg.seed);

  std::string csv = "phi";
  for (int n = 1; n <= cfg.n_max; ++n) csv += ",estimate_n" + std::to_string(n);
  for (int n = 1; n <= cfg.n_max; ++n)
    csv += ",single_shot_std_n" + std::to_string(n);
  csv += ",oracle_incoherent,oracle_total,irb_r,irb_r_err,irb_r_ave\n";
  json rows = json::array();

  for (size_t i = 0; i < cfg.phi_grid.size(); ++i) {
    const double phi = cfg.phi_grid[i];
    const ErrorParams params = config_error_params_with_eta_t(cfg, phi);
    const NoisyCircuit target = cnot_circuit(0, 1, 2, params);

    AveragedEstimateConfig acfg;
    acfg.num_preparations = cfg.num_preparations;
    acfg.max_order = cfg.n_max;
    acfg.shots = ShotSpec{cfg.shots};
    acfg.errors = params;
    acfg.fiducial = config_fiducial(cfg);
    acfg.povm = config_povm(cfg);
    acfg.use_spam = cfg.use_spam;
    Rng est_rng = master.child(3 * static_cast<std::uint64_t>(i));
    const AveragedEstimate est =
        clifford_averaged_estimate(table, target, acfg, est_rng);

    // Benchmarking baseline at the same parameters.  Survival probabilities
    // are exact per sequence (sequence-sampling variance only).
    RbConfig rbc;
    rbc.lengths = default_rb_lengths(cfg.rb_k_max);
    rbc.samples_per_length = cfg.rb_samples;
    rbc.errors = params;
    rbc.use_spam = cfg.use_spam;
    rbc.fiducial = config_fiducial(cfg);
    rbc.povm = config_povm(cfg);
    Rng ref_rng = master.child(3 * static_cast<std::uint64_t>(i) + 1);
    Rng int_rng = master.child(3 * static_cast<std::uint64_t>(i) + 2);
    const DecayFit ref_fit = fit_decay(decay_curve(table, rbc, nullptr, ref_rng));
    const DecayFit int_fit = fit_decay(decay_curve(table, rbc, &target, int_rng));
    const InterleavedResult irb = interleaved_estimate(ref_fit, int_fit, 2);

    csv += fmt(phi);
    for (int n = 1; n <= cfg.n_max; ++n)
      csv += "," + fmt(est.mean_estimate[static_cast<size_t>(n - 1)]);
    for (int n = 1; n <= cfg.n_max; ++n)
      csv += "," + fmt(est.single_shot_std[static_cast<size_t>(n - 1)]);
    csv += "," + fmt(est.oracle_incoherent_mean) + "," + fmt(est.oracle_total_mean) +
           "," + fmt(irb.r) + "," + fmt(irb.r_err) + "," + fmt(irb.r_ave) + "\n";

    rows.push_back({{"phi", phi},
                    {"mean_estimate", est.mean_estimate},
                    {"single_shot_std", est.single_shot_std},
                    {"oracle_incoherent", est.oracle_incoherent_mean},
                    {"oracle_total", est.oracle_total_mean},
                    {"irb_r", irb.r},
                    {"irb_r_err", irb.r_err},
                    {"irb_r_ave", irb.r_ave},
                    {"reference_alpha", ref_fit.alpha},
                    {"interleaved_alpha", int_fit.alpha}});
    std::printf("[cnot-average] phi=%.4g: estimate_n%d=%.6g oracle=%.6g irb_r=%.6g\n",
                phi, cfg.n_max,
                est.mean_estimate[static_cast<size_t>(cfg.n_max - 1)],
                est.oracle_incoherent_mean, irb.r);
    std::fflush(stdout);
  }
  write_file(dir / "cnot_average.csv", csv);
  write_manifest(dir, cfg, json{{"points", rows}});
  std::printf("[cnot-average] done in %.1f s, outputs in %s\n", timer.seconds(),
              dir.string().c_str());
}

void run_irb(const ExperimentConfig& cfg) {
  Timer timer;
  const auto dir = prepare_out_dir(cfg);
  const CliffordTable& table = shared_table();
  const ErrorParams params = config_error_params(cfg);
  const NoisyCircuit target = cnot_circuit(0, 1, 2, params);

  RbConfig rbc;
  rbc.lengths = default_rb_lengths(cfg.rb_k_max);
  rbc.samples_per_length = cfg.rb_samples;
  rbc.shots = ShotSpec{cfg.shots};
  rbc.errors = params;
  rbc.use_spam = cfg.use_spam;
  rbc.fiducial = config_fiducial(cfg);
  rbc.povm = config_povm(cfg);

  Rng master(cfg.seed);
  Rng ref_rng = master.child(0);
  Rng int_rng = master.child(1);
  const auto ref_curve = decay_curve(table, rbc, nullptr, ref_rng);
  const auto int_curve = decay_curve(table, rbc, &target, int_rng);
  const DecayFit ref_fit = fit_decay(ref_curve);
  const DecayFit int_fit = fit_decay(int_curve);
  const InterleavedResult result = interleaved_estimate(ref_fit, int_fit, 2);

  std::string csv =
      "length,reference_mean,reference_fit,interleaved_mean,interleaved_fit\n";
  for (size_t i = 0; i < ref_curve.size(); ++i) {
    const int l = ref_curve[i].length;
    csv += std::to_string(l) + "," + fmt(ref_curve[i].mean_survival) + "," +
           fmt(ref_fit.a * std::pow(ref_fit.alpha, l) + ref_fit.b) + "," +
           fmt(int_curve[i].mean_survival) + "," +
           fmt(int_fit.a * std::pow(int_fit.alpha, l) + int_fit.b) + "\n";
  }
  write_file(dir / "irb_decay.csv", csv);

  const auto fit_json = [](const DecayFit& f) {
    return json{{"a", f.a},           {"b", f.b},
                {"alpha", f.alpha},   {"alpha_err", f.alpha_err},
                {"rms", f.rms},       {"degenerate", f.degenerate},
                {"iterations", f.iterations}};
  };
  write_manifest(dir, cfg,
                 json{{"reference_fit", fit_json(ref_fit)},
                      {"interleaved_fit", fit_json(int_fit)},
                      {"r", result.r},
                      {"r_err", result.r_err},
                      {"r_ave", result.r_ave}});
  std::printf("[irb] reference alpha=%.6g+-%.2g interleaved alpha=%.6g+-%.2g\n",
              ref_fit.alpha, ref_fit.alpha_err, int_fit.alpha, int_fit.alpha_err);
  std::printf("[irb] r=%.6g +- %.2g (r_ave=%.6g)\n", result.r, result.r_err,
              result.r_ave);
  std::printf("[irb] done in %.1f s, outputs in %s\n", timer.seconds(),
              dir.string().c_str());
}

void run_bounds(const ExperimentConfig& cfg) {
  Timer timer;
  const auto dir = prepare_out_dir(cfg);
  const ErrorParams params = config_error_params(cfg);
  const NoisyCircuit circuit = ghz_circuit(params);
  const DensityVec rho0 = basis_density(circuit.num_qubits, 0);

  std::printf("[bounds] computing norm integrals...\n");
  std::fflush(stdout);
  const BoundReport report = compute_bounds(circuit);
  std::printf("[bounds] verifying both inequalities exactly...\n");
  std::fflush(stdout);
  const BoundVerification v = verify_bounds(circuit, rho0);

  json out;
  out["noise_integral"] = report.noise_integral;
  out["total_integral"] = report.total_integral;
  out["linearization_bound"] = report.linearization_bound;
  out["cycle_bound"] = report.cycle_bound;
  out["verification"] = {{"lhs_state", v.lhs_state},
                         {"rhs_state", v.rhs_state},
                         {"state_holds", v.state_holds},
                         {"lhs_generator", v.lhs_generator},
                         {"rhs_generator", v.rhs_generator},
                         {"generator_holds", v.generator_holds}};
  write_file(dir / "bounds.json", out.dump(2) + "\n");
  write_manifest(dir, cfg, out);

  std::printf("  %-22s %13s %13s %6s\n", "inequality", "lhs", "rhs", "holds");
  std::printf("  %-22s %13.6g %13.6g %6s\n", "state linearization", v.lhs_state,
              v.rhs_state, v.state_holds ? "yes" : "NO");
  std::printf("  %-22s %13.6g %13.6g %6s\n", "cycle generator", v.lhs_generator,
              v.rhs_generator, v.generator_holds ? "yes" : "NO");
  if (!v.state_holds || !v.generator_holds)
    throw std::runtime_error("bounds: an inequality failed to verify");
  std::printf("[bounds] done in %.1f s, outputs in %s\n", timer.seconds(),
              dir.string().c_str());
}

void run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::GhzInfidelity: run_ghz(cfg); return;
    case ExperimentKind::CnotAverage: run_cnot_average(cfg); return;
    case ExperimentKind::Irb: run_irb(cfg); return;
    case ExperimentKind::Bounds: run_bounds(cfg); return;
  }
  throw ConfigError("unknown experiment kind");
}

}  // namespace qecho
