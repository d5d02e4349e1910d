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
#include <complex>

#include "bqa/nested.hpp"

using namespace bqa;
using Complex = std::complex<double>;

namespace {

const BqaSchedule kSchedule{BqaSchedule::Protocol::Gaussian, 2.0, 0.1, 20.0, 20.0};

// 4x3 isometry mapping the qutrit basis into the triplet sector of a pair.
OperatorMatrix triplet_isometry() {
  OperatorMatrix t = OperatorMatrix::Zero(4, 3);
  const double r = 1.0 / std::sqrt(2.0);
  t(0, 0) = 1.0;          // |+1> = |++>
  t(1, 1) = r;            // |0>
  t(2, 1) = r;
  t(3, 2) = 1.0;          // |-1> = |-->
  return t;
}

// S_i . S_i on the full 2N-qubit space (uses sigma_y internally).
OperatorMatrix total_spin_squared(int logical, const SiteBasis& basis) {
  OperatorMatrix sy = OperatorMatrix::Zero(2, 2);
  sy(0, 1) = Complex(0.0, -1.0);
  sy(1, 0) = Complex(0.0, 1.0);
  const OperatorMatrix sx = pauli_operator(PauliOp::X);
  const OperatorMatrix sz = pauli_operator(PauliOp::Z);
  OperatorMatrix s2 = OperatorMatrix::Zero(basis.dim(), basis.dim());
  const int q1 = 2 * logical, q2 = 2 * logical + 1;
  for (const OperatorMatrix& sigma : {sx, sy, sz}) {
    const OperatorMatrix s =
        0.5 * (lift(sigma, q1, basis) + lift(sigma, q2, basis));
    s2 += s * s;
  }
  return s2;
}

}  // namespace

TEST_CASE("triplet projector is an idempotent Hermitian of rank 3^N") {
  for (int n : {1, 2}) {
    const NestedMapping map = nested_mapping(n);
    const OperatorMatrix& p = map.triplet_projector;
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(p.trace().real() == doctest::Approx(std::pow(3.0, n)));
  }
}

TEST_CASE("nested initial state is the entangled m = 0 product") {
  const StateVector psi = nested_initial_state(1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(psi.amplitudes(0)) == 0.0);
  CHECK(psi.amplitudes(1).real() == doctest::Approx(r));
  CHECK(psi.amplitudes(2).real() == doctest::Approx(r));
  CHECK(std::abs(psi.amplitudes(3)) == 0.0);
  CHECK(psi.norm() == doctest::Approx(1.0));

  const StateVector psi2 = nested_initial_state(2);
  CHECK(psi2.norm() == doctest::Approx(1.0));
  const NestedMapping map = nested_mapping(2);
  CHECK((map.triplet_projector * psi2.amplitudes - psi2.amplitudes).norm() < 1e-12);
}

TEST_CASE("projection of the initial state gives |0...0> with zero leakage") {
  for (int n : {1, 2, 3}) {
    const QutritProjection proj = project_to_qutrit(nested_initial_state(n));
    CHECK(proj.leakage < 1e-12);
    const SiteBasis qutrit{LocalKind::Qutrit, n};
    CHECK(std::norm(proj.state.amplitudes(
              qutrit.encode(std::vector<int>(n, 1)))) == doctest::Approx(1.0));
  }
}

TEST_CASE("singlet components appear as leakage") {
  // (|T+> + |S>)/sqrt(2) on one pair
  const SiteBasis basis{LocalKind::Qubit, 2};
  Eigen::VectorXcd amp(4);
  const double r = 1.0 / std::sqrt(2.0);
  amp << r, 0.5, -0.5, 0.0;  // |++>/sqrt2 + singlet/sqrt2
  const QutritProjection proj = project_to_qutrit(StateVector(basis, amp));
  CHECK(proj.leakage == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("N=1 nested Hamiltonian restricted to the triplet sector equals the qutrit one") {
  ProblemInstance inst{1, {}, {0.3}};
  const TimeDependentHamiltonian h4 = nest_hamiltonian(inst, kSchedule);
  const TimeDependentHamiltonian h3 = bqa_hamiltonian(inst, kSchedule);
  const OperatorMatrix t = triplet_isometry();
  for (double time : {0.0, 5.0, 10.0, 17.0, 20.0}) {
    const OperatorMatrix restricted = t.adjoint() * evaluate(h4, time) * t;
    // the -B/2 constant per qutrit is kept in the nested form, which makes
    // the restriction exact (offset zero)
    CHECK((restricted - evaluate(h3, time)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("nested Hamiltonian structure: bonds and fields") {
  // one J12 bond: static part = four qubit-qubit bonds of J/4 + four fields h/2
  ProblemInstance inst{2, {{0, 1, 0.8}}, {0.3, -0.2}};
  const TimeDependentHamiltonian h4 = nest_hamiltonian(inst, kSchedule);
  const SiteBasis basis{LocalKind::Qubit, 4};
  const OperatorMatrix z = pauli_operator(PauliOp::Z);

  OperatorMatrix expected = OperatorMatrix::Zero(16, 16);
  for (int pi : {0, 1})
    for (int pj : {2, 3})
      expected -= 0.2 * two_site(z, pi, z, pj, basis);  // 0.8 / 4
  for (int p : {0, 1}) expected -= 0.15 * lift(z, p, basis);
  for (int p : {2, 3}) expected -= -0.1 * lift(z, p, basis);
  CHECK((h4.static_part - expected).cwiseAbs().maxCoeff() < 1e-12);

  // bifurcation driver: one intra-pair ZZ per qutrit (2 terms) plus constants
  OperatorMatrix zz = OperatorMatrix::Zero(16, 16);
  for (int i : {0, 1})
    zz += 0.5 * (two_site(z, 2 * i, z, 2 * i + 1, basis) +
                 OperatorMatrix::Identity(16, 16));
  CHECK((h4.drivers[1].op - zz).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nested Hamiltonian conserves each site's total spin") {
  ProblemInstance inst{2, {{0, 1, 0.8}}, {0.3, -0.2}};
  const TimeDependentHamiltonian h4 = nest_hamiltonian(inst, kSchedule);
  for (int logical : {0, 1}) {
    const OperatorMatrix s2 = total_spin_squared(logical, h4.basis);
    for (double time : {0.0, 7.0, 20.0}) {
      const OperatorMatrix h = evaluate(h4, time);
      CHECK(((h * s2) - (s2 * h)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("nested evolution reproduces the qutrit dynamics for N = 2") {
  const ProblemInstance inst = random_fully_connected(2, 1.0, 17);
  const TimeDependentHamiltonian h3 = bqa_hamiltonian(inst, kSchedule);
  const TimeDependentHamiltonian h4 = nest_hamiltonian(inst, kSchedule);
  const StateVector psi3 = basis_state(h3.basis, {1, 1});
  const StateVector psi4 = nested_initial_state(2);

  for (double t : {5.0, 10.0, 15.0, 20.0}) {
    const StateVector direct = evolve(h3, psi3, t, 2, 1e-10).final_state;
    const StateVector nested = evolve(h4, psi4, t, 2, 1e-10).final_state;
    const QutritProjection proj = project_to_qutrit(nested);
    CHECK(proj.leakage < 1e-9);
    CHECK((proj.state.amplitudes.cwiseAbs2() - direct.amplitudes.cwiseAbs2())
              .cwiseAbs()
              .maxCoeff() < 1e-6);
  }
}
