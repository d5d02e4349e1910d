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

#include <utility>

#include "bqa/evolve.hpp"
#include "bqa/hamiltonians.hpp"
#include "bqa/instances.hpp"
#include "bqa/schedules.hpp"

namespace bqa {

// Each logical qutrit i is the spin-1 (triplet) sector of physical qubits
// 2i and 2i+1, via S_i = (sigma_{i1} + sigma_{i2}) / 2.
//
// Per-site triplet basis, phases chosen so every overlap with the qubit-pair
// expression is real positive:
//   |+1> = |++>,  |0> = (|+-> + |-+>)/sqrt(2),  |-1> = |-->
struct NestedMapping {
  int logical_count = 0;
  OperatorMatrix triplet_projector;  // idempotent, Hermitian, rank 3^N on 4^N

  std::pair<int, int> physical_qubits(int logical) const {
    return {2 * logical, 2 * logical + 1};
  }
};

NestedMapping nested_mapping(int logical_count);

// The BQA Hamiltonian rewritten on 2N physical qubits:
//   bifurcation term  -B(t) (S_i^z)^2      ->  -(B/2)(sigma^z_{i1} sigma^z_{i2} + 1)
//   driver term       -A(t) S_i^x          ->  -(A/2)(sigma^x_{i1} + sigma^x_{i2})
//   coupling          J_ij                 ->  four qubit-qubit bonds of J_ij/4
//   field             h_i                  ->  two local fields h_i/2
// The constant -B/2 per qutrit is kept, so the triplet-sector restriction
// reproduces the qutrit Hamiltonian entrywise.
TimeDependentHamiltonian nest_hamiltonian(const ProblemInstance& instance,
                                          const BqaSchedule& schedule);

// Tensor product over qutrits of (|+-> + |-+>)/sqrt(2): every logical site in
// the S = 1, m = 0 state.
StateVector nested_initial_state(int logical_count);

struct QutritProjection {
  StateVector state;   // renormalized amplitudes in the 3^N triplet basis
  double leakage;      // 1 - (projected norm)^2, probability outside S = 1
};

// Project a 4^N qubit state onto the per-site triplet basis.
QutritProjection project_to_qutrit(const StateVector& psi);

}  // namespace bqa
