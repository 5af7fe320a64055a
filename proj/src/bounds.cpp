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

#include "qecho/bounds.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <unordered_map>
#include <variant>

#include "qecho/eig.hpp"
#include "qecho/estimator.hpp"
#include "qecho/kernels.hpp"
#include "qecho/matrix_exp.hpp"

namespace qecho {

namespace {

// Spectral norms keyed by raw matrix bytes; identical generator content
// (common across segments and their pulse inverses) is computed once.
class NormCache {
 public:
  double norm(const CMat& m) {
    std::string key(reinterpret_cast<const char*>(m.data.data()),
                    m.data.size() * sizeof(cdouble));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double value = spectral_norm(m);
    cache_.emplace(std::move(key), value);
    return value;
  }

 private:
  std::unordered_map<std::string, double> cache_;
};

bool is_zero(const CMat& m) { return norm_max(m) == 0.0; }

// sum of ||L - i dH_L|| * duration over the segments of `c`.
double extended_integral(const NoisyCircuit& c, NormCache& cache) {
  double acc = 0.0;
  for (const CircuitElement& el : c.elements) {
    if (!std::holds_alternative<ContinuousSegment>(el)) continue;
    const auto& seg = std::get<ContinuousSegment>(el);
    CMat g = seg.dissipator;
    if (!is_zero(seg.coherent_error)) {
      const Superop dh = liouville_hamiltonian(seg.coherent_error);
      g = g + cdouble(0.0, -1.0) * dh;
    }
    if (is_zero(g)) continue;
    acc += cache.norm(g) * seg.duration;
  }
  return acc;
}

}  // namespace

double linearization_bound_of(double noise_integral) {
  return std::expm1(noise_integral) - noise_integral;
}

double cycle_bound_of(double total_integral) {
  return 2.0 * (std::expm1(total_integral) - total_integral);
}

BoundReport compute_bounds(const NoisyCircuit& c) {
  validate(c);
  NormCache cache;
  BoundReport report;
  for (const CircuitElement& el : c.elements) {
    if (!std::holds_alternative<ContinuousSegment>(el)) continue;
    const auto& seg = std::get<ContinuousSegment>(el);
    if (is_zero(seg.dissipator)) continue;
    report.noise_integral += cache.norm(seg.dissipator) * seg.duration;
  }
  report.total_integral = extended_integral(echo_cycle(c), cache);
  report.linearization_bound = linearization_bound_of(report.noise_integral);
  report.cycle_bound = cycle_bound_of(report.total_integral);
  return report;
}

BoundVerification verify_bounds_with(const NoisyCircuit& c, const DensityVec& rho0,
                                     const Superop& ideal_fwd, const Superop& noise_fwd,
                                     const Superop& cycle_full) {
  const BoundReport report = compute_bounds(c);
  BoundVerification v;
  v.rhs_state = report.linearization_bound;
  v.rhs_generator = report.cycle_bound;

  const double eps_inc = exact_infidelity(ideal_fwd, noise_fwd, rho0);
  const Superop omega1 = first_magnus_term(c);
  const double mean_omega =
      inner(rho0, kernels::matvec(omega1, rho0)).real();
  v.lhs_state = std::abs(eps_inc + mean_omega);

  const Superop chi = cycle_magnus_generator(c);
  v.lhs_generator = spectral_norm(cycle_full - matrix_exp(chi));

  const auto holds = [](double lhs, double rhs) {
    return lhs <= rhs * (1.0 + 1e-9) + 1e-12;
  };
  v.state_holds = holds(v.lhs_state, v.rhs_state);
  v.generator_holds = holds(v.lhs_generator, v.rhs_generator);
  return v;
}

BoundVerification verify_bounds(const NoisyCircuit& c, const DensityVec& rho0) {
  return verify_bounds_with(c, rho0, realize(c, EvolutionMode::Ideal),
                            realize(c, EvolutionMode::NoiseOnly),
                            realize(echo_cycle(c), EvolutionMode::Full));
}

}  // namespace qecho
