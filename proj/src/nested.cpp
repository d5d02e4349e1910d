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

#include "bqa/nested.hpp"

#include <cmath>
#include <stdexcept>

namespace bqa {

namespace {

SiteBasis physical_basis(int logical_count) {
  return SiteBasis{LocalKind::Qubit, 2 * logical_count};
}

}  // namespace

NestedMapping nested_mapping(int logical_count) {
  if (logical_count < 1)
    throw std::invalid_argument("nested_mapping: logical_count must be >= 1");
  const SiteBasis basis = physical_basis(logical_count);
  const Eigen::Index dim = basis.dim();

  // P = prod_i (I - |singlet_i><singlet_i|); diagonal-free structure handled
  // densely, the mapping is only used at small N.
  NestedMapping map;
  map.logical_count = logical_count;
  map.triplet_projector = OperatorMatrix::Identity(dim, dim);
  for (int i = 0; i < logical_count; ++i) {
    Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);   // |+->
    singlet(2) = -1.0 / std::sqrt(2.0);  // |-+>
    OperatorMatrix local = OperatorMatrix::Identity(4, 4) - singlet * singlet.adjoint();
    // Embed onto the adjacent qubit pair (2i, 2i+1): I(left) x local x I(right).
    OperatorMatrix lifted = OperatorMatrix::Zero(dim, dim);
    Eigen::Index left = 1, right = 1;
    for (int k = 0; k < 2 * i; ++k) left *= 2;
    for (int k = 2 * i + 2; k < basis.sites; ++k) right *= 2;
    for (Eigen::Index a = 0; a < left; ++a)
      for (Eigen::Index p = 0; p < 4; ++p)
        for (Eigen::Index q = 0; q < 4; ++q)
          for (Eigen::Index c = 0; c < right; ++c)
            lifted((a * 4 + p) * right + c, (a * 4 + q) * right + c) = local(p, q);
    map.triplet_projector = map.triplet_projector * lifted;
  }
  return map;
}

TimeDependentHamiltonian nest_hamiltonian(const ProblemInstance& instance,
                                          const BqaSchedule& schedule) {
  instance.validate();
  schedule.validate();
  const SiteBasis basis = physical_basis(instance.n);
  const Eigen::Index dim = basis.dim();
  const OperatorMatrix z = pauli_operator(PauliOp::Z);
  const OperatorMatrix x = pauli_operator(PauliOp::X);

  TimeDependentHamiltonian h;
  h.basis = basis;
  h.t_max = schedule.t_f;

  // Problem part: J_ij -> four bonds of J_ij/4, h_i -> two fields of h_i/2.
  OperatorMatrix problem = OperatorMatrix::Zero(dim, dim);
  for (const Bond& b : instance.bonds)
    for (int pi : {2 * b.i, 2 * b.i + 1})
      for (int pj : {2 * b.j, 2 * b.j + 1})
        problem -= (b.coupling / 4.0) * two_site(z, pi, z, pj, basis);
  for (int i = 0; i < instance.n; ++i)
    for (int p : {2 * i, 2 * i + 1})
      problem -= (instance.fields[i] / 2.0) * lift(z, p, basis);
  h.static_part = std::move(problem);

  // Driver: -(A/2) sum over all physical qubits of sigma^x.
  OperatorMatrix x_sum = OperatorMatrix::Zero(dim, dim);
  for (int p = 0; p < basis.sites; ++p) x_sum += 0.5 * lift(x, p, basis);
  h.drivers.push_back({std::move(x_sum), [schedule](double t) {
                         return -bqa_coefficients(schedule, t).a;
                       }});

  // Bifurcation: -(B/2) sum_i (sigma^z_{i1} sigma^z_{i2} + 1).
  OperatorMatrix zz_sum = OperatorMatrix::Zero(dim, dim);
  for (int i = 0; i < instance.n; ++i)
    zz_sum += 0.5 * (two_site(z, 2 * i, z, 2 * i + 1, basis) +
                     OperatorMatrix::Identity(dim, dim));
  h.drivers.push_back({std::move(zz_sum), [schedule](double t) {
                         return -bqa_coefficients(schedule, t).b;
                       }});
  return h;
}

StateVector nested_initial_state(int logical_count) {
  if (logical_count < 1)
    throw std::invalid_argument("nested_initial_state: logical_count must be >= 1");
  const SiteBasis basis = physical_basis(logical_count);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  const double w = std::pow(1.0 / std::sqrt(2.0), logical_count);
  // Nonzero amplitudes: every pair in |+-> or |-+>.
  const Eigen::Index combos = Eigen::Index{1} << logical_count;
  for (Eigen::Index mask = 0; mask < combos; ++mask) {
    std::vector<int> digits(basis.sites);
    for (int i = 0; i < logical_count; ++i) {
      const bool flipped = (mask >> i) & 1;
      digits[2 * i] = flipped ? 1 : 0;
      digits[2 * i + 1] = flipped ? 0 : 1;
    }
    amp(basis.encode(digits)) = w;
  }
  return StateVector(basis, std::move(amp));
}

QutritProjection project_to_qutrit(const StateVector& psi) {
  if (psi.basis.kind != LocalKind::Qubit || psi.basis.sites % 2 != 0)
    throw std::invalid_argument("project_to_qutrit: expected a 2N-qubit state");
  const int n = psi.basis.sites / 2;
  const SiteBasis qutrit{LocalKind::Qutrit, n};
  const double r = 1.0 / std::sqrt(2.0);

  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(qutrit.dim());
  for (Eigen::Index idx = 0; idx < qutrit.dim(); ++idx) {
    const std::vector<int> trits = qutrit.decode(idx);
    // Expand each m = 0 site into its two qubit-pair components.
    std::vector<std::pair<std::vector<int>, double>> partial{{{}, 1.0}};
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<std::vector<int>, double>> next;
      for (const auto& [digits, coeff] : partial) {
        auto extend = [&](int d1, int d2, double c) {
          std::vector<int> e = digits;
          e.push_back(d1);
          e.push_back(d2);
          next.push_back({std::move(e), coeff * c});
        };
        switch (trits[i]) {
          case 0: extend(0, 0, 1.0); break;           // |+1> = |++>
          case 1: extend(0, 1, r); extend(1, 0, r); break;  // |0>
          case 2: extend(1, 1, 1.0); break;           // |-1> = |-->
        }
      }
      partial = std::move(next);
    }
    std::complex<double> sum = 0.0;
    for (const auto& [digits, coeff] : partial)
      sum += coeff * psi.amplitudes(psi.basis.encode(digits));
    amp(idx) = sum;
  }

  const double projected_norm = amp.norm();
  QutritProjection out;
  out.leakage = 1.0 - projected_norm * projected_norm;
  if (projected_norm < 1e-12)
    throw std::invalid_argument("project_to_qutrit: state has no triplet component");
  out.state = StateVector(qutrit, amp / projected_norm);
  return out;
}

}  // namespace bqa
