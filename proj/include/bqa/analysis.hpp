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

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bqa/evolve.hpp"
#include "bqa/instances.hpp"
#include "bqa/schedules.hpp"

namespace bqa {

// Squared moduli per basis configuration.
Eigen::VectorXd basis_probabilities(const StateVector& psi);

struct SuccessReport {
  double success_probability = 0.0;
  // One entry per oracle ground configuration, same order as the oracle.
  std::vector<std::pair<std::vector<int>, double>> per_configuration;
  // Total probability on basis states with at least one m = 0 site
  // (qutrit bases only; incomplete-bifurcation diagnostic).
  double zero_leakage = 0.0;
};

// Probability of the final state being any oracle ground configuration.
// Degenerate oracles are summed over.
SuccessReport success_probability(const EvolutionResult& result,
                                  const GroundStateSolution& oracle);

struct SamplingDistribution {
  // Probability per degenerate ground configuration, oracle order.
  std::vector<std::pair<std::vector<int>, double>> per_state;
  // Pairs related by a global spin flip summed; keyed by the lexicographically
  // smaller partner.
  std::vector<std::pair<std::vector<int>, double>> flip_reduced;
};

// Requires oracle degeneracy >= 2.
SamplingDistribution sampling_distribution(const EvolutionResult& result,
                                           const GroundStateSolution& oracle);

struct Histogram {
  double bin_width = 0.05;
  std::vector<long> counts;  // bins over [0, 1]; 1.0 lands in the last bin
  long sample_count = 0;
};

Histogram histogram_from_values(const std::vector<double>& values, double bin_width);

enum class Method { Bqa, Qa };

std::string method_name(Method method);

struct SeededInstance {
  std::uint64_t seed = 0;
  ProblemInstance instance;
};

struct BenchmarkRecord {
  std::uint64_t seed = 0;
  Method method = Method::Bqa;
  double success = 0.0;
  double zero_leakage = 0.0;
  double energy = 0.0;     // oracle ground energy
  bool nontrivial = false;
  bool failed = false;     // integration failure; excluded from the histogram
};

struct BenchmarkResult {
  Histogram histogram;
  std::vector<BenchmarkRecord> records;  // instance order, one per input
  int failure_count = 0;
};

// Evolve every instance under the given schedule and score against the
// brute-force oracle. Instances are fanned out across workers; records and
// the histogram are accumulated in input order regardless of completion
// order. Integration failures are recorded, not fatal.
BenchmarkResult benchmark(const std::vector<SeededInstance>& instances,
                          const std::variant<BqaSchedule, QaSchedule>& schedule,
                          double tol = kDefaultTolerance);

}  // namespace bqa
