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

#ifndef QECHO_EXPERIMENTS_HPP
#define QECHO_EXPERIMENTS_HPP

/// End-to-end experiment runners.  Each writes plot-ready CSV files plus a
/// JSON run manifest into the config's output directory and prints a short
/// summary (including wall time) to stdout.  All file content is a pure
/// function of the config — wall time goes to stdout only — so identical
/// configs produce byte-identical outputs.

#include <string>

#include "qecho/config.hpp"

namespace qecho {

/// Dispatches on cfg.experiment.  Throws ConfigError for configuration
/// problems and std::runtime_error for numerical failures.
void run_experiment(const ExperimentConfig& cfg);

/// Convergence of the estimate with the order n on the entangling-chain
/// circuit: writes ghz_convergence.csv (n, estimate, oracle, relative error).
void run_ghz(const ExperimentConfig& cfg);

/// Clifford-averaged estimates for the two-qubit gate over the phi sweep,
/// with the benchmarking baseline: writes cnot_average.csv.
void run_cnot_average(const ExperimentConfig& cfg);

/// Reference + interleaved decay curves and fits: writes irb_decay.csv.
void run_irb(const ExperimentConfig& cfg);

/// Norm-integral bounds and their exact verification on the entangling-chain
/// circuit: writes bounds.json.
void run_bounds(const ExperimentConfig& cfg);

}  // namespace qecho

#endif  // QECHO_EXPERIMENTS_HPP
