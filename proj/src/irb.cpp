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

#include "qecho/irb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qecho/kernels.hpp"

namespace qecho {

namespace {

void check_rb_config(const RbConfig& cfg) {
  if (cfg.lengths.empty()) throw std::invalid_argument("rb: no sequence lengths");
  int prev = 0;
  for (int l : cfg.lengths) {
    if (l < 1) throw std::invalid_argument("rb: sequence lengths must be >= 1");
    if (l <= prev) throw std::invalid_argument("rb: lengths must be strictly increasing");
    prev = l;
  }
  if (cfg.samples_per_length < 1)
    throw std::invalid_argument("rb: samples_per_length must be >= 1");
  if (cfg.shots.shots < 0) throw std::invalid_argument("rb: negative shot count");
}

// Solves the symmetric 3x3 system a x = b in place (plain Gaussian elimination
// with partial pivoting; the systems here are tiny and well scaled after LM
// damping).  Returns false when singular.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
            std::array<double, 3>& x) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int j = col; j < 3; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < 3; ++j) s -= a[r][j] * x[j];
    x[r] = s / a[r][r];
  }
  return true;
}

double model(double a, double b, double alpha, int l) {
  return a * std::pow(alpha, l) + b;
}

double cost_of(const std::vector<DecayPoint>& pts, double a, double b, double alpha) {
  double c = 0.0;
  for (const auto& p : pts) {
    const double r = model(a, b, alpha, p.length) - p.mean_survival;
    c += r * r;
  }
  return c;
}

// Numeric Jacobian of the residual vector by central differences.
void jacobian(const std::vector<DecayPoint>& pts, double a, double b, double alpha,
              std::vector<std::array<double, 3>>& jac) {
  jac.resize(pts.size());
  const double prm[3] = {a, b, alpha};
  for (int j = 0; j < 3; ++j) {
    const double h = 1e-7 * std::max(1.0, std::abs(prm[j]));
    double lo[3] = {a, b, alpha};
    double hi[3] = {a, b, alpha};
    lo[j] -= h;
    hi[j] += h;
    for (size_t i = 0; i < pts.size(); ++i) {
      const int l = pts[i].length;
      jac[i][j] = (model(hi[0], hi[1], hi[2], l) - model(lo[0], lo[1], lo[2], l)) /
                  (2.0 * h);
    }
  }
}

}  // namespace

std::vector<int> default_rb_lengths(int k_max) {
  if (k_max < 0) throw std::invalid_argument("default_rb_lengths: negative k_max");
  std::vector<int> lengths;
  lengths.reserve(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) lengths.push_back(3 + 15 * k);
  return lengths;
}

Superop depolarizing_superop(int num_qubits, double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("depolarizing_superop: rate must be in [0, 1]");
  const int d = 1 << num_qubits;
  const int sdim = d * d;
  Superop out(sdim, sdim);
  const CVec id_vec = vectorize(CMat::identity(d));
  for (int i = 0; i < sdim; ++i) {
    out(i, i) = 1.0 - p;
    for (int j = 0; j < sdim; ++j)
      out(i, j) += (p / d) * id_vec[static_cast<size_t>(i)] *
                   std::conj(id_vec[static_cast<size_t>(j)]);
  }
  return out;
}

RbSequence rb_sequence(const CliffordTable& table, int length,
                       const HilbertOp* interleave_ideal, Rng& rng) {
  if (length < 1) throw std::invalid_argument("rb_sequence: length must be >= 1");
  RbSequence seq;
  seq.clifford_indices.reserve(static_cast<size_t>(length));
  HilbertOp net = CMat::identity(4);
  for (int i = 0; i < length; ++i) {
    const int idx = table.sample_index(rng);
    seq.clifford_indices.push_back(idx);
    net = kernels::matmul(table.element(idx).net_ideal, net);
    if (interleave_ideal != nullptr) net = kernels::matmul(*interleave_ideal, net);
  }
  seq.closer = table.find_index(adjoint(net));
  return seq;
}

NoisyCircuit rb_sequence_circuit(const CliffordTable& table, const RbSequence& seq,
                                 const NoisyCircuit* interleave,
                                 const ErrorParams& errors) {
  NoisyCircuit out;
  out.num_qubits = 2;
  for (int idx : seq.clifford_indices) {
    NoisyCircuit part = compile_sequence(table.element(idx).gates, 2, errors);
    out.elements.insert(out.elements.end(), part.elements.begin(), part.elements.end());
    if (interleave != nullptr) {
      if (interleave->num_qubits != 2)
        throw std::invalid_argument("rb_sequence_circuit: interleave must be two-qubit");
      out.elements.insert(out.elements.end(), interleave->elements.begin(),
                          interleave->elements.end());
    }
  }
  NoisyCircuit part = compile_sequence(table.element(seq.closer).gates, 2, errors);
  out.elements.insert(out.elements.end(), part.elements.begin(), part.elements.end());
  return out;
}

std::vector<DecayPoint> decay_curve(const CliffordTable& table, const RbConfig& cfg,
                                    const NoisyCircuit* interleave, Rng& rng) {
  check_rb_config(cfg);
  const int n_qubits = 2;
  const int sdim = 16;

  // Realized (faulty) superoperator per table index, filled on first use.
  std::vector<Superop> cache(static_cast<size_t>(table.size()));
  std::vector<char> cached(static_cast<size_t>(table.size()), 0);
  const bool depolarize = cfg.synthetic.enabled;
  const Superop clifford_depol =
      depolarize ? depolarizing_superop(n_qubits, cfg.synthetic.p_clifford)
                 : CMat::identity(sdim);
  auto op_for = [&](int idx) -> const Superop& {
    const size_t i = static_cast<size_t>(idx);
    if (!cached[i]) {
      Superop op = realize(compile_sequence(table.element(idx).gates, n_qubits, cfg.errors),
                           EvolutionMode::Full);
      if (depolarize && cfg.synthetic.p_clifford > 0.0)
        op = kernels::matmul(clifford_depol, op);
      cache[i] = std::move(op);
      cached[i] = 1;
    }
    return cache[i];
  };

  Superop target_op;
  HilbertOp target_ideal;
  if (interleave != nullptr) {
    if (interleave->num_qubits != n_qubits)
      throw std::invalid_argument("decay_curve: interleave must be two-qubit");
    target_op = realize(*interleave, EvolutionMode::Full);
    if (depolarize && cfg.synthetic.p_target > 0.0)
      target_op = kernels::matmul(depolarizing_superop(n_qubits, cfg.synthetic.p_target),
                                  target_op);
    target_ideal = ideal_hilbert_unitary(*interleave);
  }

  const DensityVec start = cfg.use_spam ? fiducial_state(cfg.fiducial, n_qubits)
                                        : basis_density(n_qubits, 0);
  const DensityVec functional = cfg.use_spam
                                    ? measurement_functional(cfg.povm, n_qubits)
                                    : basis_density(n_qubits, 0);

  std::vector<DecayPoint> curve;
  curve.reserve(cfg.lengths.size());
  for (size_t li = 0; li < cfg.lengths.size(); ++li) {
    const int length = cfg.lengths[li];
    long double acc = 0.0L;
    for (int s = 0; s < cfg.samples_per_length; ++s) {
      const std::uint64_t stream =
          2 * (static_cast<std::uint64_t>(li) * cfg.samples_per_length + s);
      Rng draw_rng = rng.child(stream);
      const RbSequence seq = rb_sequence(
          table, length, interleave != nullptr ? &target_ideal : nullptr, draw_rng);
      CVec v = start;
      for (int idx : seq.clifford_indices) {
        v = kernels::matvec(op_for(idx), v);
        if (interleave != nullptr) v = kernels::matvec(target_op, v);
      }
      v = kernels::matvec(op_for(seq.closer), v);
      double f = inner(functional, v).real();
      if (f < -1e-10 || f > 1.0 + 1e-10)
        throw std::runtime_error("decay_curve: survival outside [0,1]: " +
                                 std::to_string(f));
      if (!cfg.shots.exact()) {
        Rng shot_rng = rng.child(stream + 1);
        const double p = std::min(1.0, std::max(0.0, f));
        f = static_cast<double>(shot_rng.binomial(cfg.shots.shots, p)) /
            static_cast<double>(cfg.shots.shots);
      }
      acc += f;
    }
    curve.push_back({length, static_cast<double>(acc / cfg.samples_per_length)});
  }
  return curve;
}

DecayFit fit_decay(const std::vector<DecayPoint>& points) {
  if (points.size() < 4) throw std::invalid_argument("fit_decay: need at least 4 points");
  double fmin = points[0].mean_survival;
  double fmax = fmin;
  for (const auto& p : points) {
    if (p.mean_survival < -1e-9 || p.mean_survival > 1.05)
      throw std::invalid_argument("fit_decay: survival outside [0, 1.05]");
    fmin = std::min(fmin, p.mean_survival);
    fmax = std::max(fmax, p.mean_survival);
  }

  DecayFit fit;
  if (fmax - fmin < 1e-9) {
    // Flat data: any (A, alpha) with A ~ 0 fits; alpha carries no information.
    fit.degenerate = true;
    fit.a = 0.0;
    fit.b = points[0].mean_survival;
    fit.alpha = 1.0;
    fit.alpha_err = 0.0;
    fit.rms = std::sqrt(cost_of(points, fit.a, fit.b, fit.alpha) /
                        static_cast<double>(points.size()));
    return fit;
  }

  // Starting point: baseline at the smallest survival, amplitude from the
  // first point, rate from a log-linear regression of the excess above the
  // baseline (shifted slightly below fmin so every log argument is positive).
  double b0 = fmin - 1e-3 * (fmax - fmin);
  double a0 = points.front().mean_survival - b0;
  double alpha0 = 0.95;
  {
    double sl = 0.0, sy = 0.0, sll = 0.0, sly = 0.0;
    int count = 0;
    for (const auto& p : points) {
      const double excess = p.mean_survival - b0;
      if (excess <= 0.0) continue;
      const double y = std::log(excess);
      sl += p.length;
      sy += y;
      sll += static_cast<double>(p.length) * p.length;
      sly += p.length * y;
      ++count;
    }
    if (count >= 2) {
      const double denom = count * sll - sl * sl;
      if (std::abs(denom) > 1e-12) {
        const double slope = (count * sly - sl * sy) / denom;
        const double intercept = (sy - slope * sl) / count;
        alpha0 = std::min(1.0, std::max(1e-3, std::exp(slope)));
        a0 = std::exp(intercept);
      }
    }
  }

  double a = a0, b = b0, alpha = alpha0;
  double cost = cost_of(points, a, b, alpha);
  double lambda = 1e-3;
  std::vector<std::array<double, 3>> jac;
  bool converged = false;
  int iter = 0;
  for (; iter < 500; ++iter) {
    jacobian(points, a, b, alpha, jac);
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (size_t i = 0; i < points.size(); ++i) {
      const double r =
          model(a, b, alpha, points[i].length) - points[i].mean_survival;
      for (int p = 0; p < 3; ++p) {
        jtr[p] += jac[i][p] * r;
        for (int q = 0; q < 3; ++q) jtj[p][q] += jac[i][p] * jac[i][q];
      }
    }
    const double gradient_norm =
        std::sqrt(jtr[0] * jtr[0] + jtr[1] * jtr[1] + jtr[2] * jtr[2]);
    if (gradient_norm < 1e-14) {
      converged = true;
      break;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 50; ++attempt) {
      auto damped = jtj;
      for (int p = 0; p < 3; ++p) damped[p][p] += lambda * std::max(jtj[p][p], 1e-12);
      std::array<double, 3> delta{};
      std::array<double, 3> rhs = {-jtr[0], -jtr[1], -jtr[2]};
      if (!solve3(damped, rhs, delta)) {
        lambda *= 10.0;
        continue;
      }
      const double na = a + delta[0];
      const double nb = b + delta[1];
      const double nalpha = std::min(1.5, std::max(1e-6, alpha + delta[2]));
      const double ncost = cost_of(points, na, nb, nalpha);
      if (ncost <= cost) {
        const double step = std::sqrt(delta[0] * delta[0] + delta[1] * delta[1] +
                                      delta[2] * delta[2]);
        const double improvement = cost - ncost;
        a = na;
        b = nb;
        alpha = nalpha;
        cost = ncost;
        lambda = std::max(lambda * 0.1, 1e-12);
        stepped = true;
        if (step < 1e-13 * (1.0 + std::abs(a) + std::abs(b) + std::abs(alpha)) ||
            improvement < 1e-18 * (1.0 + cost))
          converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (converged) break;
    if (!stepped) {
      // Damping saturated without an accepted step: we are at a (possibly
      // flat) local minimum to working precision.
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error(
        "fit_decay: no convergence after 500 iterations (cost " +
        std::to_string(cost) + ", lambda " + std::to_string(lambda) + ")");

  fit.a = a;
  fit.b = b;
  fit.alpha = alpha;
  fit.iterations = iter;
  fit.rms = std::sqrt(cost / static_cast<double>(points.size()));

  // 1-sigma alpha uncertainty from the linearized problem at the optimum:
  // covariance = variance * (J^T J)^-1 with variance = SSR / (N - 3).
  jacobian(points, a, b, alpha, jac);
  std::array<std::array<double, 3>, 3> jtj{};
  for (size_t i = 0; i < points.size(); ++i)
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) jtj[p][q] += jac[i][p] * jac[i][q];
  // Invert via three solves against the identity columns.
  std::array<double, 3> col{};
  bool ok = true;
  double inv22 = 0.0;
  {
    std::array<double, 3> e2 = {0.0, 0.0, 1.0};
    ok = solve3(jtj, e2, col);
    inv22 = col[2];
  }
  if (!ok || inv22 < 0.0) {
    fit.degenerate = true;
    fit.alpha_err = 0.0;
  } else {
    const int dof = static_cast<int>(points.size()) - 3;
    const double variance = dof > 0 ? cost / dof : 0.0;
    fit.alpha_err = std::sqrt(variance * inv22);
  }
  return fit;
}

InterleavedResult interleaved_estimate(const DecayFit& reference,
                                       const DecayFit& interleaved, int num_qubits) {
  if (reference.alpha <= 0.0)
    throw std::invalid_argument("interleaved_estimate: reference alpha must be positive");
  if (num_qubits < 1) throw std::invalid_argument("interleaved_estimate: bad qubit count");
  const double d = static_cast<double>(1 << num_qubits);
  const double scale = (d - 1.0) / d;
  InterleavedResult out;
  out.r = scale * (1.0 - interleaved.alpha / reference.alpha);
  out.r_ave = scale * (1.0 - reference.alpha);
  const double ai = interleaved.alpha, ar = reference.alpha;
  const double dai = interleaved.alpha_err, dar = reference.alpha_err;
  out.r_err = scale * std::sqrt(ai * ai * dar * dar + ar * ar * dai * dai) / (ar * ar);
  return out;
}

}  // namespace qecho
