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

#include <functional>
#include <vector>

#include "bqa/instances.hpp"
#include "bqa/schedules.hpp"
#include "bqa/spinops.hpp"

namespace bqa {

// One driver term: a fixed Hermitian matrix times a real coefficient of t.
// Keeping the factored form lets the integrator apply H(t) psi without
// assembling H(t) at every stage.
struct DriverPart {
  OperatorMatrix op;
  std::function<double(double)> coefficient;
};

// H(t) = static_part + sum_k coefficient_k(t) * op_k, valid for t in [0, t_max].
// The problem part is time independent and lives in static_part.
struct TimeDependentHamiltonian {
  SiteBasis basis;
  OperatorMatrix static_part;
  std::vector<DriverPart> drivers;
  double t_max = 0.0;
};

// The problem part: -sum J_ij Z_i Z_j - sum h_i Z_i with Z the local
// z operator of the basis (spin-1 Sz for qutrits, Pauli Z for qubits).
// Diagonal in the computational basis.
OperatorMatrix problem_operator(const ProblemInstance& instance, const SiteBasis& basis);

struct BqaOptions {
  // Optional extra driver -sx2_strength * A(t) * sum_i (S_i^x)^2. It couples
  // |+1> and |-1> directly; off by default, none of the stock experiments
  // use it.
  double sx2_strength = 0.0;
};

// H(t) = sum_i [-A(t) S_i^x - B(t) (S_i^z)^2] + problem part, over qutrits.
TimeDependentHamiltonian bqa_hamiltonian(const ProblemInstance& instance,
                                         const BqaSchedule& schedule,
                                         const BqaOptions& options = {});

// H(t) = (1 - t/t_f)(-Gamma sum_i X_i) + (t/t_f)(problem part), over qubits.
TimeDependentHamiltonian qa_hamiltonian(const ProblemInstance& instance,
                                        const QaSchedule& schedule);

// Single qutrit: H(t) = -A(t) Sx - B(t) Sz^2 - h Sz.
TimeDependentHamiltonian single_qutrit_field_hamiltonian(double field,
                                                         const BqaSchedule& schedule);

// Assemble H(t) densely. Throws std::invalid_argument for t outside [0, t_max].
OperatorMatrix evaluate(const TimeDependentHamiltonian& hamiltonian, double t);

}  // namespace bqa
