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

#ifndef QECHO_ESTIMATOR_HPP
#define QECHO_ESTIMATOR_HPP

/// Incoherent-infidelity estimation from echo-cycle survival probabilities.
///
/// The protocol runs a circuit followed by its pulse inverse (one "cycle") k
/// times, records the survival probabilities R_0..R_n of the initial state,
/// and combines them with fixed coefficients a_0..a_n chosen so that the
/// weighted sum sigma_n cancels coherent-error contributions up to order n.
/// The estimate of the noise-only infidelity is -sigma_n / 2.

#include <cstdint>
#include <vector>

#include "qecho/circuits.hpp"
#include "qecho/liouville.hpp"
#include "qecho/propagation.hpp"
#include "qecho/rng.hpp"
#include "qecho/spam.hpp"

namespace qecho {

/// Weights a_0..a_n applied to the survival probabilities R_0..R_n.  Stored in
/// extended precision because the identities sum(a_k) = 0 and
/// sum(k * a_k) = 1 must survive evaluation for orders up to 20, where the
/// entries reach ~2e4 and double rounding alone would eat the 1e-12 budget.
struct CoefficientSet {
  int order = 0;                // n
  std::vector<long double> a;   // length order + 1

  std::vector<double> as_double() const;
};

/// Production coefficients: closed form a_0 = -(1 + 1/2 + ... + 1/n),
/// a_k = (-1)^(k+1) * C(n,k) / k, evaluated in extended precision.  These are
/// the exact solution of the moment conditions sum_k k^j a_k = [j == 1] for
/// j = 0..n.  Requires 1 <= n <= 20.
CoefficientSet coefficients(int order);

/// The same coefficients obtained by actually solving the (n+1)x(n+1) moment
/// (Vandermonde) system with a partial-pivoted LU in extended precision.
/// Numerically trustworthy for n <= 10 (the system's conditioning grows
/// factorially; by n = 15 the solve loses most digits), so this route serves
/// as an independent cross-check of `coefficients`, not as production.
CoefficientSet vandermonde_coefficients(int order);

/// Real part of <<rho0| cycle^k |rho0>>; rho0 must be a pure state so the
/// overlap is the fidelity.  Powers are applied to the vector, never formed
/// as matrix powers.
double survival_probability(const Superop& cycle, int k, const DensityVec& rho0);

/// R_0..R_max_k in one sweep of matrix-vector products.
std::vector<double> survival_probabilities(const Superop& cycle, int max_k,
                                           const DensityVec& rho0);

/// SPAM-wrapped survivals R'_0..R'_max_k:
///   R'_k = <<functional| k_meas cycle^k k_prep |fiducial>>.
/// Implemented with one preparation pass and a single left vector
/// adjoint(k_meas)|functional>>, so each extra k costs one matrix-vector
/// product.
std::vector<double> spam_survival_probabilities(const Superop& k_prep,
                                                const Superop& k_meas,
                                                const Superop& cycle, int max_k,
                                                const DensityVec& fiducial,
                                                const DensityVec& functional);

/// sigma_n = sum_k a_k R_k.  r must have length order + 1 (R_0 included:
/// with SPAM wrappers R'_0 is a measured quantity, not 1, and its inclusion
/// is what cancels the SPAM offset).
double sigma_n(const std::vector<double>& r, const CoefficientSet& coeffs);

/// Ground-truth oracle: 1 - fidelity between the ideal output and the output
/// of the noise-only (coherent-error-free) evolution, for pure rho0.
double exact_incoherent_infidelity(const NoisyCircuit& c, const DensityVec& rho0);

/// Same oracle from precomputed propagators (ideal_op must map rho0 to a pure
/// state for the overlap formula to be a fidelity).
double exact_infidelity(const Superop& ideal_op, const Superop& actual_op,
                        const DensityVec& rho0);

/// Shot budget per survival probability; shots == 0 means exact mode.
struct ShotSpec {
  std::int64_t shots = 0;

  bool exact() const { return shots == 0; }
};

/// One run of the estimator.
struct EstimationReport {
  int order = 0;
  std::vector<double> r_values;  // R'_0..R'_n actually used (sampled in shot mode)
  double sigma = 0.0;
  double estimate = 0.0;         // -sigma / 2
  double variance = 0.0;         // shot-noise variance of sigma (0 in exact mode)
  std::int64_t shots = 0;        // 0 = exact
};

/// Applies shot noise (when requested) to exact survival probabilities and
/// assembles the report.  Exact probabilities may leave [0,1] by at most 1e-10
/// numerically; they are clamped before sampling and larger excursions throw.
EstimationReport estimate_from_survivals(const std::vector<double>& r_exact,
                                         int order, const ShotSpec& shots, Rng& rng);

/// End-to-end estimate for a circuit with ideal SPAM: builds the echo cycle
/// realization (full mode), measures survivals from rho0, applies shot noise.
/// The weak-error regime (error integrals well below 1) is the caller's
/// responsibility; nothing is enforced.
EstimationReport estimate(const NoisyCircuit& c, int order, const DensityVec& rho0,
                          const ShotSpec& shots, Rng& rng);

/// Faulty preparation / measurement wrapping for the SPAM-robust estimate.
struct SpamArrangement {
  Superop k_prep;          // applied to the fiducial state before the cycles
  Superop k_meas;          // applied before the measurement functional
  DensityVec fiducial;     // vectorized prepared state
  DensityVec functional;   // vectorized measurement effect
};

EstimationReport estimate_with_spam(const NoisyCircuit& c, int order,
                                    const SpamArrangement& spam,
                                    const ShotSpec& shots, Rng& rng);

/// Configuration of the Clifford-averaged estimate (the two-qubit experiment:
/// random Clifford preparations around a fixed target circuit).
struct AveragedEstimateConfig {
  int num_preparations = 300;   // M
  int max_order = 2;            // estimates reported for n = 1..max_order
  ShotSpec shots;               // applied per (preparation, k) survival
  ErrorParams errors;           // error model for the compiled preparations
  FiducialSpec fiducial;        // SPAM: prepared single-qubit state parameters
  PovmSpec povm;                // SPAM: per-qubit measurement effect
  bool use_spam = true;         // false = ideal fiducial/POVM (compiled preps stay faulty)
};

struct AveragedEstimate {
  // Index n-1 holds the order-n result, n = 1..max_order.
  std::vector<double> mean_sigma;
  std::vector<double> mean_estimate;     // -mean_sigma / 2
  std::vector<double> single_shot_std;   // predicted std of mean_estimate at 1 shot per circuit
  double oracle_incoherent_mean = 0.0;   // average of exact noise-only infidelities
  double oracle_total_mean = 0.0;        // average of exact total infidelities
  std::vector<double> per_prep_estimate; // -sigma_n/2 at n = max_order, one per preparation
};

/// Samples M preparation Cliffords, wraps the target's echo cycle with the
/// compiled (faulty) preparation and its inverted sequence, and averages the
/// per-preparation estimates.  Oracle averages use the ideal preparation
/// unitary on the perfect ground state — SPAM errors never enter the oracle.
/// Deterministic given the rng seed: preparation m uses child stream 2m for
/// sampling the Clifford and child stream 2m+1 for shot noise.
AveragedEstimate clifford_averaged_estimate(const CliffordTable& table,
                                            const NoisyCircuit& target,
                                            const AveragedEstimateConfig& cfg,
                                            Rng& rng);

}  // namespace qecho

#endif  // QECHO_ESTIMATOR_HPP
