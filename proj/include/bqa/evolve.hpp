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

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "bqa/hamiltonians.hpp"
#include "bqa/spinops.hpp"

namespace bqa {

struct StateVector {
  SiteBasis basis;
  Eigen::VectorXcd amplitudes;

  StateVector() = default;
  // Throws std::invalid_argument if dim mismatches or the norm is off by
  // more than 1e-9.
  StateVector(SiteBasis basis, Eigen::VectorXcd amplitudes);

  double norm() const { return amplitudes.norm(); }
};

struct EvolutionResult {
  StateVector final_state;
  std::vector<double> sample_times;
  std::vector<Eigen::VectorXd> sample_probabilities;  // |amplitude|^2 per basis state
  double norm_drift = 0.0;   // max | ||psi|| - 1 | over all accepted steps
  std::int64_t step_count = 0;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::int64_t kDefaultMaxSteps = 80'000'000;

// Integrate i dpsi/dt = H(t) psi from 0 to t_f (hbar = 1) with an adaptive
// embedded Runge-Kutta pair (Dormand-Prince 5(4)). `tol` is the local error
// budget per unit time. The norm is monitored, never renormalized.
// `sample_count` >= 2 probability snapshots are taken at uniform times
// including both endpoints. Throws IntegrationError if the step budget is
// exhausted or the step size underflows.
EvolutionResult evolve(const TimeDependentHamiltonian& hamiltonian,
                       const StateVector& initial_state, double t_f,
                       int sample_count, double tol = kDefaultTolerance,
                       std::int64_t max_steps = kDefaultMaxSteps);

// All eigenvalues of H(t), ascending.
Eigen::VectorXd instantaneous_spectrum(const TimeDependentHamiltonian& hamiltonian,
                                       double t);

// Eigenvalues (ascending) and the corresponding eigenvector columns.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> instantaneous_spectrum_with_vectors(
    const TimeDependentHamiltonian& hamiltonian, double t);

// Ground state of H(0), phase-fixed so the largest-magnitude amplitude is
// real positive. Throws std::invalid_argument if the ground level of H(0) is
// degenerate (gap below 1e-10 * ||H(0)||).
StateVector adiabatic_initial_state(const TimeDependentHamiltonian& hamiltonian);

// Basis state |digits> as a StateVector (used for idealized starts).
StateVector basis_state(const SiteBasis& basis, const std::vector<int>& digits);

}  // namespace bqa
