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

#include "bqa/hamiltonians.hpp"

#include <stdexcept>

namespace bqa {

OperatorMatrix problem_operator(const ProblemInstance& instance, const SiteBasis& basis) {
  instance.validate();
  if (basis.sites != instance.n)
    throw std::invalid_argument("problem_operator: basis site count != instance.n");
  const Eigen::Index dim = basis.dim();
  // Diagonal: evaluate the classical energy of each basis configuration,
  // with m = 0 sites contributing nothing.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const std::vector<int> digits = basis.decode(idx);
    double e = 0.0;
    for (const Bond& b : instance.bonds)
      e -= b.coupling * basis.z_eigenvalue(digits[b.i]) * basis.z_eigenvalue(digits[b.j]);
    for (int k = 0; k < instance.n; ++k)
      e -= instance.fields[k] * basis.z_eigenvalue(digits[k]);
    diag(idx) = e;
  }
  OperatorMatrix out = OperatorMatrix::Zero(dim, dim);
  out.diagonal() = diag.cast<std::complex<double>>();
  return out;
}

namespace {

OperatorMatrix site_sum(Spin1Op which, const SiteBasis& basis) {
  const OperatorMatrix local = spin1_operator(which);
  OperatorMatrix sum = OperatorMatrix::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.sites; ++i) sum += lift(local, i, basis);
  return sum;
}

}  // namespace

TimeDependentHamiltonian bqa_hamiltonian(const ProblemInstance& instance,
                                         const BqaSchedule& schedule,
                                         const BqaOptions& options) {
  schedule.validate();
  const SiteBasis basis{LocalKind::Qutrit, instance.n};
  TimeDependentHamiltonian h;
  h.basis = basis;
  h.t_max = schedule.t_f;
  h.static_part = problem_operator(instance, basis);
  h.drivers.push_back({site_sum(Spin1Op::Sx, basis),
                       [schedule](double t) { return -bqa_coefficients(schedule, t).a; }});
  h.drivers.push_back({site_sum(Spin1Op::Sz2, basis),
                       [schedule](double t) { return -bqa_coefficients(schedule, t).b; }});
  if (options.sx2_strength != 0.0) {
    const double k = options.sx2_strength;
    h.drivers.push_back({site_sum(Spin1Op::Sx2, basis), [schedule, k](double t) {
                           return -k * bqa_coefficients(schedule, t).a;
                         }});
  }
  return h;
}

TimeDependentHamiltonian qa_hamiltonian(const ProblemInstance& instance,
                                        const QaSchedule& schedule) {
  schedule.validate();
  const SiteBasis basis{LocalKind::Qubit, instance.n};
  TimeDependentHamiltonian h;
  h.basis = basis;
  h.t_max = schedule.t_f;
  h.static_part = OperatorMatrix::Zero(basis.dim(), basis.dim());

  const OperatorMatrix x = pauli_operator(PauliOp::X);
  OperatorMatrix x_sum = OperatorMatrix::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.sites; ++i) x_sum += lift(x, i, basis);

  const double gamma = schedule.gamma;
  h.drivers.push_back({std::move(x_sum), [schedule, gamma](double t) {
                         return -gamma * qa_weights(schedule, t).driver;
                       }});
  h.drivers.push_back({problem_operator(instance, basis),
                       [schedule](double t) { return qa_weights(schedule, t).problem; }});
  return h;
}

TimeDependentHamiltonian single_qutrit_field_hamiltonian(double field,
                                                         const BqaSchedule& schedule) {
  ProblemInstance inst;
  inst.n = 1;
  inst.fields = {field};
  return bqa_hamiltonian(inst, schedule);
}

OperatorMatrix evaluate(const TimeDependentHamiltonian& hamiltonian, double t) {
  if (t < 0.0 || t > hamiltonian.t_max)
    throw std::invalid_argument("evaluate: t outside [0, t_max]");
  OperatorMatrix out = hamiltonian.static_part;
  for (const DriverPart& part : hamiltonian.drivers)
    out += part.coefficient(t) * part.op;
  return out;
}

}  // namespace bqa
