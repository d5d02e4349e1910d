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
#include <filesystem>
#include <span>
#include <vector>

namespace bqa {

struct Bond {
  int i = 0;
  int j = 0;       // i < j
  double coupling = 0.0;
};

// Ising instance: E(sigma) = -sum_{(i,j)} J_ij sigma_i sigma_j - sum_i h_i sigma_i
// with sigma_i = +-1.
struct ProblemInstance {
  int n = 0;
  std::vector<Bond> bonds;
  std::vector<double> fields;  // size n; all zeros if absent in the file

  // Throws std::invalid_argument on bad indices, duplicate pairs,
  // non-finite coefficients, or a fields/n mismatch.
  void validate() const;
};

struct GroundStateSolution {
  double energy = 0.0;
  // All configurations within 1e-9 of the minimum, each entry +-1,
  // sorted lexicographically (with -1 < +1) for determinism.
  std::vector<std::vector<int>> configurations;

  int degeneracy() const { return static_cast<int>(configurations.size()); }
};

// Grouping tolerance for the degenerate ground manifold (coefficients are
// order 1, so absolute is fine).
inline constexpr double kGroundStateTolerance = 1e-9;

double classical_energy(const ProblemInstance& instance, std::span<const int> config);

// Exhaustive enumeration over all 2^n configurations; n <= 24.
GroundStateSolution brute_force_ground_states(const ProblemInstance& instance);

// Fully-connected instance with J_ij = r_ij / n, r_ij and h_i drawn uniformly
// from [-J, J] by SplitMix64. Draw order: r_ij for i < j lexicographic, then
// h_0..h_{n-1}; the sequence is frozen by a golden test.
ProblemInstance random_fully_connected(int n, double coupling_scale, std::uint64_t seed);

// Ferromagnetic ring with periodic boundary and uniform field.
ProblemInstance ring_instance(int n, double coupling, double field);

// True iff the unique ground-state configuration differs from
// (sign(h_0), ..., sign(h_{n-1})). Requires a nondegenerate ground state and
// all h_i != 0; otherwise throws std::invalid_argument (indeterminate).
bool is_nontrivial(const ProblemInstance& instance);

// JSON schema: {"n": int, "bonds": [[i, j, J_ij], ...], "fields": [h_1, ...]}
// with 0-based indices; "fields" may be omitted (all zero).
ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);

}  // namespace bqa
