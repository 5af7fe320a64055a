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

#ifndef QECHO_CONFIG_HPP
#define QECHO_CONFIG_HPP

/// Experiment configuration: a small key = value format (or the same keys as
/// a JSON object), parsed with line-precise error messages and serialized
/// canonically so that identical configs produce byte-identical echoes.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecho/circuits.hpp"
#include "qecho/spam.hpp"

namespace qecho {

/// Configuration problems (unknown keys, bad values, missing mandatory
/// fields).  The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { GhzInfidelity, CnotAverage, Irb, Bounds };

const char* to_string(ExperimentKind kind);

struct ExperimentConfig {
  int schema_version = 1;
  ExperimentKind experiment = ExperimentKind::GhzInfidelity;
  std::uint64_t seed = 0;  // mandatory in files; no entropy default

  // Error strengths as dimensionless products with the segment duration T.
  double eta_t = 0.0;   // two-qubit coherent error strength x T
  double xi_t = 0.0;    // dissipative strength x T
  double theta = 0.0;   // quarter-turn rotation Z-error angle
  double dephasing_weight = 1.0;  // default depends on experiment; see parser
  double damping_weight = 0.1;

  // Sweep of eta_t values for the averaged two-qubit experiment.
  std::vector<double> phi_grid;

  int n_max = 5;             // highest estimator order reported
  int num_preparations = 300;  // M
  std::int64_t shots = 0;    // 0 = exact probabilities

  int rb_k_max = 20;   // sequence lengths 3 + 15k, k = 0..rb_k_max
  int rb_samples = 60;

  bool use_spam = true;
  double povm_pi0 = 0.501;
  double povm_pi1 = 0.0;
  double povm_pi2 = 0.0;
  double povm_pi3 = 0.495;
  double fiducial_alpha_x = 0.0;
  double fiducial_alpha_y = 0.0;

  std::string out_dir = ".";
};

/// Parses a config from text.  The format is detected from the first
/// non-whitespace character: '{' selects JSON, anything else the key = value
/// format ('#' starts a comment, blank lines are skipped).  `origin` names
/// the source in error messages ("file.cfg:12: ...").  Throws ConfigError.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// Reads and parses a config file.  Throws ConfigError (also for I/O).
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical key = value serialization: every field, fixed order, doubles
/// printed with 17 significant digits.  parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& c);

/// Field-wise equality (used by the round-trip property).
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Derived views of the raw strengths.
ErrorParams config_error_params(const ExperimentConfig& c);
ErrorParams config_error_params_with_eta_t(const ExperimentConfig& c, double eta_t);
PovmSpec config_povm(const ExperimentConfig& c);
FiducialSpec config_fiducial(const ExperimentConfig& c);

}  // namespace qecho

#endif  // QECHO_CONFIG_HPP
