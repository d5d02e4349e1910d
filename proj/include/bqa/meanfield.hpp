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

#include <span>
#include <vector>

#include "bqa/schedules.hpp"
#include "bqa/spinops.hpp"

namespace bqa {

enum class PhaseOrder { Paramagnetic, SecondOrderSide, FirstOrderSide };

struct MeanFieldPoint {
  double a = 0.0;
  double b = 0.0;
  double jz = 0.0;
  double m_s = 0.0;              // converged magnetization, >= 0 by convention
  PhaseOrder order = PhaseOrder::Paramagnetic;
  double energy_density = 0.0;   // variational energy at the global minimizer
  double fixed_point_residual = 0.0;  // | m_s - <Sz>_GS(m_s) |
  bool converged = true;         // false -> grid-best fallback
};

// Single-site mean-field Hamiltonian: -A Sx - B Sz^2 - Jz m Sz (3x3).
OperatorMatrix effective_hamiltonian(double a, double b, double jz, double m);

// e(m) = eps0(A, B, Jz m) + (Jz/2) m^2, with eps0 the ground energy of the
// effective Hamiltonian. Stationary points of e are exactly the
// self-consistent magnetizations.
double variational_energy(double a, double b, double jz, double m);

// Global minimizer of e(m) over m in [0, 1] (1e-3 grid, golden-section
// refinement, Newton polish of the fixed-point residual). The m < 0 branch is
// degenerate by symmetry and not reported.
MeanFieldPoint solve_selfconsistent(double a, double b, double jz);

struct PhaseBoundaryPoint {
  double a = 0.0;
  double b_critical = 0.0;  // bisected para/ferro crossing along the B axis
  double jump = 0.0;        // m_s just on the ferro side of the crossing
  bool first_order = false; // jump > 1e-3
};

struct PhaseDiagram {
  std::vector<MeanFieldPoint> points;        // a-major, b-minor order
  std::vector<PhaseBoundaryPoint> boundary;  // one entry per A line that crosses
};

PhaseDiagram phase_diagram(std::span<const double> a_grid,
                           std::span<const double> b_grid, double jz);

// (A(t)/Jz, B(t)/Jz) samples of a protocol for overlaying on the diagram.
std::vector<std::pair<double, double>> protocol_overlay(const BqaSchedule& schedule,
                                                        double jz, int samples);

}  // namespace bqa
