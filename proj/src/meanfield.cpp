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

#include "bqa/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bqa/parallel.hpp"

namespace bqa {

namespace {

constexpr double kGridStep = 1e-3;
constexpr double kResidualTarget = 1e-10;
constexpr double kFerroThreshold = 1e-6;   // m_s above this counts as ferromagnetic
constexpr double kJumpThreshold = 1e-3;    // first/second order discriminator

Eigen::Matrix3d effective_matrix(double a, double b, double h_eff) {
  const double r = a / std::sqrt(2.0);
  Eigen::Matrix3d m;
  // basis (+1, 0, -1)
  m << -b - h_eff, -r, 0.0,
       -r, 0.0, -r,
       0.0, -r, -b + h_eff;
  return m;
}

double ground_energy(double a, double b, double h_eff) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
  solver.computeDirect(effective_matrix(a, b, h_eff), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

// Ground energy and <Sz> of the ground state, via the iterative solver
// (computeDirect is fast but not accurate enough for the residual target).
std::pair<double, double> ground_energy_and_sz(double a, double b, double h_eff) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(effective_matrix(a, b, h_eff));
  const Eigen::Vector3d v = solver.eigenvectors().col(0);
  const double sz = v(0) * v(0) - v(2) * v(2);
  return {solver.eigenvalues()(0), sz};
}

double energy_at(double a, double b, double jz, double m) {
  return ground_energy(a, b, jz * m) + 0.5 * jz * m * m;
}

// Golden-section minimum of e(m) on [lo, hi].
double golden_minimize(double a, double b, double jz, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = energy_at(a, b, jz, x1);
  double f2 = energy_at(a, b, jz, x2);
  for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = energy_at(a, b, jz, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = energy_at(a, b, jz, x2);
    }
  }
  return 0.5 * (lo + hi);
}

double fixed_point_residual(double a, double b, double jz, double m) {
  return m - ground_energy_and_sz(a, b, jz * m).second;
}

}  // namespace

OperatorMatrix effective_hamiltonian(double a, double b, double jz, double m) {
  return effective_matrix(a, b, jz * m).cast<std::complex<double>>();
}

double variational_energy(double a, double b, double jz, double m) {
  if (m < -1.0 || m > 1.0)
    throw std::invalid_argument("variational_energy: m outside [-1, 1]");
  return energy_at(a, b, jz, std::abs(m));
}

MeanFieldPoint solve_selfconsistent(double a, double b, double jz) {
  if (!(jz > 0.0)) throw std::invalid_argument("solve_selfconsistent: Jz must be > 0");

  MeanFieldPoint point;
  point.a = a;
  point.b = b;
  point.jz = jz;

  // Coarse scan of the variational energy over m in [0, 1].
  int best = 0;
  double best_e = energy_at(a, b, jz, 0.0);
  const int steps = static_cast<int>(std::round(1.0 / kGridStep));
  for (int k = 1; k <= steps; ++k) {
    const double e = energy_at(a, b, jz, k * kGridStep);
    if (e < best_e) {
      best_e = e;
      best = k;
    }
  }
  const double lo = std::max(0.0, (best - 1) * kGridStep);
  const double hi = std::min(1.0, (best + 1) * kGridStep);
  double m = golden_minimize(a, b, jz, lo, hi);
  if (m < 1e-8) m = 0.0;

  // Polish the fixed point m = <Sz>(m); golden section alone stalls at the
  // rounding noise floor of e(m).
  double residual = std::abs(fixed_point_residual(a, b, jz, m));
  if (m > 0.0 && residual > kResidualTarget) {
    double mk = m;
    for (int iter = 0; iter < 60; ++iter) {
      const double r = fixed_point_residual(a, b, jz, mk);
      if (std::abs(r) < 1e-14) break;
      const double dm = 1e-7;
      const double r_hi = fixed_point_residual(a, b, jz, std::min(1.0, mk + dm));
      const double r_lo = fixed_point_residual(a, b, jz, std::max(0.0, mk - dm));
      const double slope = (r_hi - r_lo) / (2.0 * dm);
      if (slope == 0.0) break;
      double next = mk - r / slope;
      // stay near the refined minimizer; other fixed points are not ours
      next = std::clamp(next, m - 2e-3, m + 2e-3);
      next = std::clamp(next, 0.0, 1.0);
      if (next == mk) break;
      mk = next;
    }
    if (std::abs(fixed_point_residual(a, b, jz, mk)) < std::abs(residual)) {
      m = mk;
      residual = std::abs(fixed_point_residual(a, b, jz, m));
    }
  }

  point.m_s = m;
  point.fixed_point_residual = residual;
  point.converged = residual < kResidualTarget;
  point.energy_density = energy_at(a, b, jz, m);

  if (m <= kFerroThreshold) {
    point.order = PhaseOrder::Paramagnetic;
  } else {
    // Side classification from the stability of m = 0: if the paramagnetic
    // point is still a local minimum the transition was crossed
    // discontinuously.
    const double dm = 1e-4;
    const double curvature =
        2.0 * (energy_at(a, b, jz, dm) - energy_at(a, b, jz, 0.0)) / (dm * dm);
    point.order = curvature > 0.0 ? PhaseOrder::FirstOrderSide
                                  : PhaseOrder::SecondOrderSide;
  }
  return point;
}

PhaseDiagram phase_diagram(std::span<const double> a_grid,
                           std::span<const double> b_grid, double jz) {
  if (a_grid.empty() || b_grid.empty())
    throw std::invalid_argument("phase_diagram: empty grid");

  PhaseDiagram diagram;
  diagram.points.resize(a_grid.size() * b_grid.size());

  parallel_for(a_grid.size() * b_grid.size(), [&](std::size_t idx) {
    const double a = a_grid[idx / b_grid.size()];
    const double b = b_grid[idx % b_grid.size()];
    diagram.points[idx] = solve_selfconsistent(a, b, jz);
  });

  // Para -> ferro crossing along each A line, refined by bisection so the
  // reported jump is the actual discontinuity rather than grid resolution.
  for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
    const MeanFieldPoint* line = &diagram.points[ia * b_grid.size()];
    std::size_t crossing = b_grid.size();
    for (std::size_t ib = 0; ib + 1 < b_grid.size(); ++ib) {
      if (line[ib].m_s <= kFerroThreshold && line[ib + 1].m_s > kFerroThreshold) {
        crossing = ib;
        break;
      }
    }
    if (crossing == b_grid.size()) continue;

    double b_lo = b_grid[crossing], b_hi = b_grid[crossing + 1];
    for (int iter = 0; iter < 40 && b_hi - b_lo > 1e-11; ++iter) {
      const double mid = 0.5 * (b_lo + b_hi);
      if (solve_selfconsistent(a_grid[ia], mid, jz).m_s > kFerroThreshold)
        b_hi = mid;
      else
        b_lo = mid;
    }
    PhaseBoundaryPoint bp;
    bp.a = a_grid[ia];
    bp.b_critical = 0.5 * (b_lo + b_hi);
    bp.jump = solve_selfconsistent(a_grid[ia], b_hi, jz).m_s;
    bp.first_order = bp.jump > kJumpThreshold;
    diagram.boundary.push_back(bp);
  }
  return diagram;
}

std::vector<std::pair<double, double>> protocol_overlay(const BqaSchedule& schedule,
                                                        double jz, int samples) {
  if (samples < 2) throw std::invalid_argument("protocol_overlay: samples must be >= 2");
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = schedule.t_f * k / (samples - 1);
    const BqaCoefficients c = bqa_coefficients(schedule, t);
    out.push_back({c.a / jz, c.b / jz});
  }
  return out;
}

}  // namespace bqa
