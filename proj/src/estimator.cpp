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

#include "qecho/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qecho/kernels.hpp"

namespace qecho {

namespace {

constexpr double kProbabilityExcursion = 1e-10;

void check_order(int order) {
  if (order < 1 || order > 20)
    throw std::invalid_argument("coefficients: order must be in [1, 20]");
}

double clamp_probability(double p, const char* what) {
  if (p < -kProbabilityExcursion || p > 1.0 + kProbabilityExcursion)
    throw std::runtime_error(std::string(what) +
                             ": survival probability outside [0,1] by more than 1e-10: " +
                             std::to_string(p));
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

std::vector<double> CoefficientSet::as_double() const {
  return std::vector<double>(a.begin(), a.end());
}

CoefficientSet coefficients(int order) {
  check_order(order);
  CoefficientSet c;
  c.order = order;
  c.a.assign(static_cast<size_t>(order) + 1, 0.0L);
  long double harmonic = 0.0L;
  long double binom = 1.0L;  // C(order, k), updated multiplicatively
  for (int k = 1; k <= order; ++k) {
    harmonic += 1.0L / k;
    binom = binom * (order - k + 1) / k;  // exact: C(20,k) < 2^63
    c.a[static_cast<size_t>(k)] = ((k % 2 == 1) ? binom : -binom) / k;
  }
  c.a[0] = -harmonic;
  return c;
}

CoefficientSet vandermonde_coefficients(int order) {
  check_order(order);
  const int n = order + 1;
  // Moment matrix V[j][k] = k^j (0^0 = 1), right-hand side picks out j = 1.
  std::vector<long double> m(static_cast<size_t>(n) * n);
  std::vector<long double> b(static_cast<size_t>(n), 0.0L);
  b[1] = 1.0L;
  for (int k = 0; k < n; ++k) {
    long double p = 1.0L;
    for (int j = 0; j < n; ++j) {
      m[static_cast<size_t>(j) * n + k] = p;
      p *= k;
    }
  }
  // Partial-pivoted Gaussian elimination in extended precision.
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[static_cast<size_t>(r) * n + col]) >
          std::abs(m[static_cast<size_t>(pivot) * n + col]))
        pivot = r;
    if (pivot != col) {
      for (int j = 0; j < n; ++j)
        std::swap(m[static_cast<size_t>(col) * n + j],
                  m[static_cast<size_t>(pivot) * n + j]);
      std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(pivot)]);
    }
    const long double d = m[static_cast<size_t>(col) * n + col];
    if (d == 0.0L) throw std::runtime_error("vandermonde_coefficients: singular system");
    for (int r = col + 1; r < n; ++r) {
      const long double f = m[static_cast<size_t>(r) * n + col] / d;
      if (f == 0.0L) continue;
      for (int j = col; j < n; ++j)
        m[static_cast<size_t>(r) * n + j] -= f * m[static_cast<size_t>(col) * n + j];
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
    }
  }
  CoefficientSet c;
  c.order = order;
  c.a.assign(static_cast<size_t>(n), 0.0L);
  for (int r = n - 1; r >= 0; --r) {
    long double s = b[static_cast<size_t>(r)];
    for (int j = r + 1; j < n; ++j)
      s -= m[static_cast<size_t>(r) * n + j] * c.a[static_cast<size_t>(j)];
    c.a[static_cast<size_t>(r)] = s / m[static_cast<size_t>(r) * n + r];
  }
  return c;
}

double survival_probability(const Superop& cycle, int k, const DensityVec& rho0) {
  if (k < 0) throw std::invalid_argument("survival_probability: negative cycle count");
  CVec v = rho0;
  for (int i = 0; i < k; ++i) v = kernels::matvec(cycle, v);
  return inner(rho0, v).real();
}

std::vector<double> survival_probabilities(const Superop& cycle, int max_k,
                                           const DensityVec& rho0) {
  if (max_k < 0) throw std::invalid_argument("survival_probabilities: negative max_k");
  std::vector<double> r;
  r.reserve(static_cast<size_t>(max_k) + 1);
  CVec v = rho0;
  r.push_back(inner(rho0, v).real());
  for (int k = 1; k <= max_k; ++k) {
    v = kernels::matvec(cycle, v);
    r.push_back(inner(rho0, v).real());
  }
  return r;
}

std::vector<double> spam_survival_probabilities(const Superop& k_prep,
                                                const Superop& k_meas,
                                                const Superop& cycle, int max_k,
                                                const DensityVec& fiducial,
                                                const DensityVec& functional) {
  if (max_k < 0) throw std::invalid_argument("spam_survival_probabilities: negative max_k");
  // <<functional| k_meas X = <lvec, X> with lvec = adjoint(k_meas) functional.
  const CVec lvec = kernels::matvec(adjoint(k_meas), functional);
  CVec v = kernels::matvec(k_prep, fiducial);
  std::vector<double> r;
  r.reserve(static_cast<size_t>(max_k) + 1);
  r.push_back(inner(lvec, v).real());
  for (int k = 1; k <= max_k; ++k) {
    v = kernels::matvec(cycle, v);
    r.push_back(inner(lvec, v).real());
  }
  return r;
}

double sigma_n(const std::vector<double>& r, const CoefficientSet& coeffs) {
  if (static_cast<int>(r.size()) != coeffs.order + 1)
    throw std::invalid_argument("sigma_n: need exactly order + 1 survival values");
  long double s = 0.0L;
  for (size_t k = 0; k < r.size(); ++k) s += coeffs.a[k] * static_cast<long double>(r[k]);
  return static_cast<double>(s);
}

double exact_infidelity(const Superop& ideal_op, const Superop& actual_op,
                        const DensityVec& rho0) {
  const CVec ideal = kernels::matvec(ideal_op, rho0);
  const CVec actual = kernels::matvec(actual_op, rho0);
  return 1.0 - inner(ideal, actual).real();
}

double exact_incoherent_infidelity(const NoisyCircuit& c, const DensityVec& rho0) {
  return exact_infidelity(realize(c, EvolutionMode::Ideal),
                          realize(c, EvolutionMode::NoiseOnly), rho0);
}

EstimationReport estimate_from_survivals(const std::vector<double>& r_exact,
                                         int order, const ShotSpec& shots, Rng& rng) {
  check_order(order);
  if (static_cast<int>(r_exact.size()) < order + 1)
    throw std::invalid_argument("estimate_from_survivals: not enough survival values");
  if (shots.shots < 0)
    throw std::invalid_argument("estimate_from_survivals: negative shot count");
  const CoefficientSet coeffs = coefficients(order);
  EstimationReport rep;
  rep.order = order;
  rep.shots = shots.shots;
  rep.r_values.reserve(static_cast<size_t>(order) + 1);
  long double variance = 0.0L;
  for (int k = 0; k <= order; ++k) {
    const double p = clamp_probability(r_exact[static_cast<size_t>(k)], "estimate");
    if (shots.exact()) {
      rep.r_values.push_back(r_exact[static_cast<size_t>(k)]);
    } else {
      const double p_hat =
          static_cast<double>(rng.binomial(shots.shots, p)) /
          static_cast<double>(shots.shots);
      rep.r_values.push_back(p_hat);
      const long double a = coeffs.a[static_cast<size_t>(k)];
      variance += a * a * static_cast<long double>(p_hat * (1.0 - p_hat)) /
                  static_cast<long double>(shots.shots);
    }
  }
  rep.sigma = sigma_n(rep.r_values, coeffs);
  rep.estimate = -rep.sigma / 2.0;
  rep.variance = static_cast<double>(variance);
  return rep;
}

EstimationReport estimate(const NoisyCircuit& c, int order, const DensityVec& rho0,
                          const ShotSpec& shots, Rng& rng) {
  const Superop cycle = realize(echo_cycle(c), EvolutionMode::Full);
  return estimate_from_survivals(survival_probabilities(cycle, order, rho0), order,
                                 shots, rng);
}

EstimationReport estimate_with_spam(const NoisyCircuit& c, int order,
                                    const SpamArrangement& spam,
                                    const ShotSpec& shots, Rng& rng) {
  const Superop cycle = realize(echo_cycle(c), EvolutionMode::Full);
  return estimate_from_survivals(
      spam_survival_probabilities(spam.k_prep, spam.k_meas, cycle, order,
                                  spam.fiducial, spam.functional),
      order, shots, rng);
}

AveragedEstimate clifford_averaged_estimate(const CliffordTable& table,
                                            const NoisyCircuit& target,
                                            const AveragedEstimateConfig& cfg,
                                            Rng& rng) {
  if (cfg.num_preparations < 1)
    throw std::invalid_argument("clifford_averaged_estimate: need M >= 1");
  check_order(cfg.max_order);
  const int n_qubits = target.num_qubits;
  if (n_qubits != 2)
    throw std::invalid_argument("clifford_averaged_estimate: table preparations are two-qubit");

  const Superop cycle = realize(echo_cycle(target), EvolutionMode::Full);
  const Superop ideal_op = realize(target, EvolutionMode::Ideal);
  const Superop noise_op = realize(target, EvolutionMode::NoiseOnly);
  const Superop full_op = realize(target, EvolutionMode::Full);

  const DensityVec fiducial =
      cfg.use_spam ? fiducial_state(cfg.fiducial, n_qubits)
                   : fiducial_state(FiducialSpec{}, n_qubits);
  const PovmSpec ideal_povm{0.5, 0.0, 0.0, 0.5};
  const DensityVec functional =
      measurement_functional(cfg.use_spam ? cfg.povm : ideal_povm, n_qubits);
  const DensityVec ground = basis_density(n_qubits, 0);

  std::vector<CoefficientSet> coeff_table;
  for (int n = 1; n <= cfg.max_order; ++n) coeff_table.push_back(coefficients(n));

  AveragedEstimate out;
  out.mean_sigma.assign(static_cast<size_t>(cfg.max_order), 0.0);
  out.single_shot_std.assign(static_cast<size_t>(cfg.max_order), 0.0);
  out.per_prep_estimate.reserve(static_cast<size_t>(cfg.num_preparations));
  std::vector<long double> sigma_sum(static_cast<size_t>(cfg.max_order), 0.0L);
  std::vector<long double> var_sum(static_cast<size_t>(cfg.max_order), 0.0L);
  long double inc_sum = 0.0L;
  long double tot_sum = 0.0L;

  for (int m = 0; m < cfg.num_preparations; ++m) {
    Rng draw_rng = rng.child(2 * static_cast<std::uint64_t>(m));
    Rng shot_rng = rng.child(2 * static_cast<std::uint64_t>(m) + 1);
    const CliffordElement& prep = table.sample(draw_rng);
    const CliffordElement meas = CliffordTable::inverse_sequence(prep);
    const Superop k_prep =
        realize(compile_sequence(prep.gates, n_qubits, cfg.errors), EvolutionMode::Full);
    const Superop k_meas =
        realize(compile_sequence(meas.gates, n_qubits, cfg.errors), EvolutionMode::Full);

    const std::vector<double> r_exact = spam_survival_probabilities(
        k_prep, k_meas, cycle, cfg.max_order, fiducial, functional);

    // Shot noise (when enabled) is sampled once per k and the outcomes are
    // shared by all orders, matching a run that reuses its measurement record.
    std::vector<double> r_used(r_exact.size());
    for (size_t k = 0; k < r_exact.size(); ++k) {
      const double p = clamp_probability(r_exact[k], "clifford_averaged_estimate");
      r_used[k] = cfg.shots.exact()
                      ? r_exact[k]
                      : static_cast<double>(shot_rng.binomial(cfg.shots.shots, p)) /
                            static_cast<double>(cfg.shots.shots);
    }
    for (int n = 1; n <= cfg.max_order; ++n) {
      const std::vector<double> prefix(r_used.begin(), r_used.begin() + n + 1);
      sigma_sum[static_cast<size_t>(n - 1)] +=
          sigma_n(prefix, coeff_table[static_cast<size_t>(n - 1)]);
      // Predicted single-shot variance of sigma_n for this preparation,
      // from the exact probabilities.
      long double v = 0.0L;
      for (int k = 0; k <= n; ++k) {
        const long double a = coeff_table[static_cast<size_t>(n - 1)].a[static_cast<size_t>(k)];
        const double p = clamp_probability(r_exact[static_cast<size_t>(k)], "variance");
        v += a * a * static_cast<long double>(p * (1.0 - p));
      }
      var_sum[static_cast<size_t>(n - 1)] += v;
    }
    {
      const std::vector<double> prefix(r_used.begin(),
                                       r_used.begin() + cfg.max_order + 1);
      out.per_prep_estimate.push_back(
          -sigma_n(prefix, coeff_table[static_cast<size_t>(cfg.max_order - 1)]) / 2.0);
    }

    // Oracle: ideal preparation unitary acting on the perfect ground state;
    // SPAM plays no part in the reference infidelities.
    const Superop prep_ideal = unitary_superoperator(prep.net_ideal);
    const DensityVec rho_m = kernels::matvec(prep_ideal, ground);
    inc_sum += exact_infidelity(ideal_op, noise_op, rho_m);
    tot_sum += exact_infidelity(ideal_op, full_op, rho_m);
  }

  const long double m_count = static_cast<long double>(cfg.num_preparations);
  out.mean_estimate.resize(static_cast<size_t>(cfg.max_order));
  for (int n = 1; n <= cfg.max_order; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    out.mean_sigma[i] = static_cast<double>(sigma_sum[i] / m_count);
    out.mean_estimate[i] = -out.mean_sigma[i] / 2.0;
    out.single_shot_std[i] =
        static_cast<double>(std::sqrt(static_cast<double>(var_sum[i])) /
                            (2.0 * static_cast<double>(cfg.num_preparations)));
  }
  out.oracle_incoherent_mean = static_cast<double>(inc_sum / m_count);
  out.oracle_total_mean = static_cast<double>(tot_sum / m_count);
  return out;
}

}  // namespace qecho
