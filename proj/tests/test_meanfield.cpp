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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bqa/meanfield.hpp"

using namespace bqa;

TEST_CASE("effective Hamiltonian examples") {
  const OperatorMatrix free_h = effective_hamiltonian(0.0, 2.0, 1.0, 0.0);
  CHECK(free_h(0, 0).real() == doctest::Approx(-2.0));
  CHECK(free_h(1, 1).real() == doctest::Approx(0.0));
  CHECK(free_h(2, 2).real() == doctest::Approx(-2.0));

  // A=0, B=1, Jz m = 0.5: ground state |+1>, energy -1.5
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(
      effective_hamiltonian(0.0, 1.0, 1.0, 0.5));
  CHECK(solver.eigenvalues()(0) == doctest::Approx(-1.5));
  CHECK(std::norm(solver.eigenvectors().col(0)(0)) == doctest::Approx(1.0));

  // m = 0: <Sz> of the ground state vanishes by flip symmetry
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> symmetric(
      effective_hamiltonian(0.7, 0.4, 1.0, 0.0));
  const Eigen::VectorXcd g = symmetric.eigenvectors().col(0);
  CHECK(std::abs(std::norm(g(0)) - std::norm(g(2))) < 1e-12);
}

TEST_CASE("variational energy: ferromagnet wins at A=0, B=1") {
  CHECK(variational_energy(0.0, 1.0, 1.0, 1.0) == doctest::Approx(-1.5));
  CHECK(variational_energy(0.0, 1.0, 1.0, 0.0) == doctest::Approx(-1.0));
  // first-order boundary of the A = 0 axis: e(1) = e(0) = 0 at B = -Jz/2
  CHECK(variational_energy(0.0, -0.5, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(variational_energy(0.0, -0.5, 1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(variational_energy(0.3, 0.2, 1.0, 0.5) ==
        doctest::Approx(variational_energy(0.3, 0.2, 1.0, -0.5)));
  CHECK_THROWS_AS(variational_energy(1.0, 0.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("stationarity of the variational energy at fixed points") {
  for (auto [a, b] : {std::pair{0.4, 0.3}, {0.2, -0.2}, {1.5, 0.5}}) {
    const MeanFieldPoint p = solve_selfconsistent(a, b, 1.0);
    const double dm = 1e-5;
    const double lo = std::max(0.0, p.m_s - dm), hi = std::min(1.0, p.m_s + dm);
    const double derivative =
        (variational_energy(a, b, 1.0, hi) - variational_energy(a, b, 1.0, lo)) /
        (hi - lo);
    // m = 0 is always stationary; interior minima too
    if (p.m_s > dm && p.m_s < 1.0 - dm)
      CHECK(std::abs(derivative) < 1e-8);
    else if (p.m_s == 0.0) {
      const double d0 = (variational_energy(a, b, 1.0, dm) -
                         variational_energy(a, b, 1.0, 0.0)) / dm;
      CHECK(std::abs(d0) < 2e-5);  // one-sided at the symmetric point
    }
  }
}

TEST_CASE("self-consistent solutions") {
  // transverse-dominated: paramagnetic
  const MeanFieldPoint para = solve_selfconsistent(10.0, 0.0, 1.0);
  CHECK(para.m_s == 0.0);
  CHECK(para.order == PhaseOrder::Paramagnetic);
  CHECK(para.fixed_point_residual < 1e-10);

  // classical ferromagnet
  const MeanFieldPoint ferro = solve_selfconsistent(0.0, 1.0, 1.0);
  CHECK(ferro.m_s == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ferro.fixed_point_residual < 1e-10);

  // just above the A = 0 first-order boundary the magnetization jumps to ~1
  const MeanFieldPoint jump = solve_selfconsistent(1e-4, -0.49, 1.0);
  CHECK(jump.m_s > 0.99);
  CHECK(jump.order == PhaseOrder::FirstOrderSide);

  CHECK_THROWS_AS(solve_selfconsistent(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("fixed-point residuals meet the target across the plane") {
  for (double a : {0.0, 0.3, 0.7, 1.1})
    for (double b : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
      const MeanFieldPoint p = solve_selfconsistent(a, b, 1.0);
      CHECK(p.fixed_point_residual < 1e-10);
      CHECK(p.converged);
      CHECK(p.m_s >= 0.0);
      CHECK(p.m_s <= 1.0);
    }
}

TEST_CASE("m_s is non-increasing in A at fixed B > 0") {
  double previous = 2.0;
  for (double a = 0.05; a <= 2.0; a += 0.1) {
    const MeanFieldPoint p = solve_selfconsistent(a, 0.5, 1.0);
    CHECK(p.m_s <= previous + 1e-9);
    previous = p.m_s;
  }
}

TEST_CASE("phase diagram: boundary location and order classification") {
  std::vector<double> b_grid;
  for (double b = -1.0; b <= 1.0 + 1e-12; b += 0.01) b_grid.push_back(b);
  const std::vector<double> a_grid{0.0, 0.05, 1.0, 1.2};
  const PhaseDiagram diagram = phase_diagram(a_grid, b_grid, 1.0);
  REQUIRE(diagram.points.size() == a_grid.size() * b_grid.size());
  REQUIRE(diagram.boundary.size() == a_grid.size());

  // A = 0: first-order boundary at B = -1/2 within the grid resolution
  CHECK(std::abs(diagram.boundary[0].b_critical + 0.5) < 0.01);
  CHECK(diagram.boundary[0].first_order);
  CHECK(diagram.boundary[0].jump > 0.5);

  CHECK(diagram.boundary[1].first_order);

  // larger A: continuous transition, refined jump below the threshold
  CHECK_FALSE(diagram.boundary[2].first_order);
  CHECK(diagram.boundary[2].jump < 1e-3);
  CHECK(std::abs(diagram.boundary[2].b_critical) < 0.02);  // A = Jz crossing at B ~ 0
  CHECK_FALSE(diagram.boundary[3].first_order);

  // points are emitted in a-major, b-minor order with matching coordinates
  const MeanFieldPoint& sample = diagram.points[2 * b_grid.size() + 10];
  CHECK(sample.a == doctest::Approx(1.0));
  CHECK(sample.b == doctest::Approx(b_grid[10]));
}

TEST_CASE("protocol overlay is the (A, B) trajectory in Jz units") {
  const BqaSchedule s{BqaSchedule::Protocol::Gaussian, 2.0, 0.1, 20.0, 100.0};
  const auto overlay = protocol_overlay(s, 2.0, 5);
  REQUIRE(overlay.size() == 5);
  CHECK(overlay.front().second == doctest::Approx(-10.0));
  CHECK(overlay.back().second == doctest::Approx(10.0));
  CHECK(overlay[2].first == doctest::Approx(1.0));  // A0/Jz at the midpoint
  CHECK(overlay[2].second == doctest::Approx(0.0));
}
