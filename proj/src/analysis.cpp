// Copyright 2026 The bqasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bqa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bqa/errors.hpp"
#include "bqa/hamiltonians.hpp"
#include "bqa/nested.hpp"
#include "bqa/parallel.hpp"

namespace bqa {

namespace {

// Basis index of the +-1 configuration sigma: m_i = sigma_i for qutrits,
// sigma_i for qubits.
Eigen::Index config_index(const SiteBasis& basis, const std::vector<int>& config) {
  std::vector<int> digits(config.size());
  for (std::size_t k = 0; k < config.size(); ++k) {
    if (basis.kind == LocalKind::Qutrit)
      digits[k] = config[k] == 1 ? 0 : 2;
    else
      digits[k] = config[k] == 1 ? 0 : 1;
  }
  return basis.encode(digits);
}

}  // namespace

Eigen::VectorXd basis_probabilities(const StateVector& psi) {
  return psi.amplitudes.cwiseAbs2();
}

SuccessReport success_probability(const EvolutionResult& result,
                                  const GroundStateSolution& oracle) {
  const StateVector& psi = result.final_state;
  if (oracle.configurations.empty())
    throw std::invalid_argument("success_probability: empty oracle");
  if (static_cast<int>(oracle.configurations[0].size()) != psi.basis.sites)
    throw std::invalid_argument("success_probability: oracle size != basis sites");

  const Eigen::VectorXd probs = basis_probabilities(psi);
  SuccessReport report;
  for (const std::vector<int>& config : oracle.configurations) {
    const double p = probs(config_index(psi.basis, config));
    report.per_configuration.push_back({config, p});
    report.success_probability += p;
  }
  if (psi.basis.kind == LocalKind::Qutrit) {
    for (Eigen::Index idx = 0; idx < probs.size(); ++idx) {
      const std::vector<int> digits = psi.basis.decode(idx);
      if (std::find(digits.begin(), digits.end(), 1) != digits.end())
        report.zero_leakage += probs(idx);
    }
  }
  return report;
}

SamplingDistribution sampling_distribution(const EvolutionResult& result,
                                           const GroundStateSolution& oracle) {
  if (oracle.degeneracy() < 2)
    throw std::invalid_argument("sampling_distribution: oracle degeneracy must be >= 2");
  const SuccessReport report = success_probability(result, oracle);

  SamplingDistribution dist;
  dist.per_state = report.per_configuration;

  std::vector<bool> used(dist.per_state.size(), false);
  for (std::size_t a = 0; a < dist.per_state.size(); ++a) {
    if (used[a]) continue;
    used[a] = true;
    std::vector<int> flipped = dist.per_state[a].first;
    for (int& s : flipped) s = -s;
    double total = dist.per_state[a].second;
    std::vector<int> key = std::min(dist.per_state[a].first, flipped);
    for (std::size_t b = a + 1; b < dist.per_state.size(); ++b) {
      if (!used[b] && dist.per_state[b].first == flipped) {
        used[b] = true;
        total += dist.per_state[b].second;
        break;
      }
    }
    dist.flip_reduced.push_back({std::move(key), total});
  }
  return dist;
}

Histogram histogram_from_values(const std::vector<double>& values, double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0))
    throw std::invalid_argument("histogram: bin width must be in (0, 1]");
  Histogram h;
  h.bin_width = bin_width;
  const int bins = static_cast<int>(std::ceil(1.0 / bin_width - 1e-12));
  h.counts.assign(bins, 0);
  for (double v : values) {
    int b = static_cast<int>(std::floor(v / bin_width));
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[b];
    ++h.sample_count;
  }
  return h;
}

std::string method_name(Method method) {
  return method == Method::Bqa ? "BQA" : "QA";
}

BenchmarkResult benchmark(const std::vector<SeededInstance>& instances,
                          const std::variant<BqaSchedule, QaSchedule>& schedule,
                          double tol) {
  const Method method =
      std::holds_alternative<BqaSchedule>(schedule) ? Method::Bqa : Method::Qa;

  BenchmarkResult result;
  result.records.resize(instances.size());

  parallel_for(instances.size(), [&](std::size_t k) {
    const SeededInstance& item = instances[k];
    BenchmarkRecord rec;
    rec.seed = item.seed;
    rec.method = method;

    const GroundStateSolution oracle = brute_force_ground_states(item.instance);
    rec.energy = oracle.energy;
    try {
      rec.nontrivial = is_nontrivial(item.instance);
    } catch (const std::invalid_argument&) {
      rec.nontrivial = false;  // degenerate or zero-field: indeterminate
    }

    try {
      TimeDependentHamiltonian h;
      double t_f = 0.0;
      if (method == Method::Bqa) {
        const BqaSchedule& s = std::get<BqaSchedule>(schedule);
        h = bqa_hamiltonian(item.instance, s);
        t_f = s.t_f;
      } else {
        const QaSchedule& s = std::get<QaSchedule>(schedule);
        h = qa_hamiltonian(item.instance, s);
        t_f = s.t_f;
      }
      const StateVector psi0 = adiabatic_initial_state(h);
      const EvolutionResult evolution = evolve(h, psi0, t_f, 2, tol);
      const SuccessReport report = success_probability(evolution, oracle);
      rec.success = report.success_probability;
      rec.zero_leakage = report.zero_leakage;
    } catch (const IntegrationError&) {
      rec.failed = true;
    }
    result.records[k] = std::move(rec);
  });

  std::vector<double> successes;
  for (const BenchmarkRecord& rec : result.records) {
    if (rec.failed)
      ++result.failure_count;
    else
      successes.push_back(rec.success);
  }
  result.histogram = histogram_from_values(successes, 0.05);
  return result;
}

}  // namespace bqa
