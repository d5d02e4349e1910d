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

#include "bqa/evolve.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "bqa/errors.hpp"

namespace bqa {

namespace {

using Complex = std::complex<double>;
using SparseCd = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// One term of H(t) in a form cheap to apply. The dense matrices coming from
// the hamiltonians module are mostly diagonal or very sparse (single-site
// drivers), so extracting the structure once makes every RK stage a
// handful of O(nnz) passes instead of dense matvecs.
struct AppliedPart {
  bool is_diagonal = false;
  Eigen::VectorXcd diag;
  SparseCd sparse;
  const std::function<double(double)>* coefficient = nullptr;  // null -> 1
  double max_row_sum = 0.0;  // infinity-norm bound of the matrix
};

AppliedPart compress(const OperatorMatrix& m) {
  AppliedPart part;
  const Eigen::Index dim = m.rows();
  bool diagonal = true;
  for (Eigen::Index i = 0; i < dim && diagonal; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) {
        diagonal = false;
        break;
      }
  part.is_diagonal = diagonal;
  if (diagonal) {
    part.diag = m.diagonal();
    part.max_row_sum = part.diag.cwiseAbs().maxCoeff();
  } else {
    part.sparse = m.sparseView(1.0, 0.0);  // keep exact nonzeros
    part.sparse.makeCompressed();
    for (Eigen::Index i = 0; i < dim; ++i)
      part.max_row_sum = std::max(part.max_row_sum, m.row(i).cwiseAbs().sum());
  }
  return part;
}

class AppliedHamiltonian {
 public:
  explicit AppliedHamiltonian(const TimeDependentHamiltonian& h) : h_(h) {
    // Integrate in the gauge H - c0*I with c0 the mean diagonal of the static
    // part. The trajectory of a shifted Hamiltonian is then bit-identical and
    // the dropped term is restored as the exact phase e^{-i c0 t}.
    const Eigen::Index dim = h.static_part.rows();
    static_mean_ = h.static_part.trace().real() / static_cast<double>(dim);
    parts_.push_back(compress(h.static_part));
    AppliedPart& st = parts_.front();
    if (st.is_diagonal) {
      st.diag.array() -= static_mean_;
      st.max_row_sum = st.diag.cwiseAbs().maxCoeff();
    } else {
      for (Eigen::Index i = 0; i < dim; ++i) st.sparse.coeffRef(i, i) -= static_mean_;
      st.sparse.makeCompressed();
      st.max_row_sum = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        double row = 0.0;
        for (SparseCd::InnerIterator it(st.sparse, i); it; ++it)
          row += std::abs(it.value());
        st.max_row_sum = std::max(st.max_row_sum, row);
      }
    }
    for (const DriverPart& d : h.drivers) {
      parts_.push_back(compress(d.op));
      parts_.back().coefficient = &d.coefficient;
    }
    scratch_.resize(dim);
  }

  double static_mean() const { return static_mean_; }

  // out = -i H(t) x
  void rhs(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& out) {
    out.setZero();
    for (const AppliedPart& p : parts_) {
      if (p.max_row_sum == 0.0) continue;
      const double c = p.coefficient ? (*p.coefficient)(t) : 1.0;
      if (c == 0.0) continue;
      if (p.is_diagonal) {
        out.array() += c * p.diag.array() * x.array();
      } else {
        scratch_.noalias() = p.sparse * x;
        out += c * scratch_;
      }
    }
    out *= Complex(0.0, -1.0);
  }

  // Coarse bound on ||H(t)|| over [0, t_f], for the initial step size.
  double norm_bound(double t_f) const {
    double bound = 0.0;
    for (const AppliedPart& p : parts_) {
      double cmax = 1.0;
      if (p.coefficient) {
        cmax = 0.0;
        for (int k = 0; k <= 64; ++k)
          cmax = std::max(cmax, std::abs((*p.coefficient)(t_f * k / 64.0)));
      }
      bound += cmax * p.max_row_sum;
    }
    return bound;
  }

 private:
  const TimeDependentHamiltonian& h_;
  std::vector<AppliedPart> parts_;
  Eigen::VectorXcd scratch_;
  double static_mean_ = 0.0;
};

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (5th-order weights minus embedded 4th-order weights)
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

StateVector::StateVector(SiteBasis basis_in, Eigen::VectorXcd amplitudes_in)
    : basis(basis_in), amplitudes(std::move(amplitudes_in)) {
  if (amplitudes.size() != basis.dim())
    throw std::invalid_argument("StateVector: amplitude count != basis dimension");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("StateVector: state is not normalized");
}

StateVector basis_state(const SiteBasis& basis, const std::vector<int>& digits) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  amp(basis.encode(digits)) = 1.0;
  return StateVector(basis, std::move(amp));
}

EvolutionResult evolve(const TimeDependentHamiltonian& hamiltonian,
                       const StateVector& initial_state, double t_f,
                       int sample_count, double tol, std::int64_t max_steps) {
  if (!(initial_state.basis == hamiltonian.basis))
    throw std::invalid_argument("evolve: state basis != Hamiltonian basis");
  if (t_f <= 0.0 || t_f > hamiltonian.t_max + 1e-12 * hamiltonian.t_max)
    throw std::invalid_argument("evolve: t_f outside the Hamiltonian's range");
  if (sample_count < 2) throw std::invalid_argument("evolve: sample_count must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("evolve: tol must be > 0");

  AppliedHamiltonian ah(hamiltonian);
  const Eigen::Index dim = initial_state.amplitudes.size();

  EvolutionResult result;
  result.sample_times.reserve(sample_count);
  result.sample_probabilities.reserve(sample_count);

  Eigen::VectorXcd y = initial_state.amplitudes;
  Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  Eigen::VectorXcd ytmp(dim), ynew(dim), yerr(dim);

  double t = 0.0;
  const double hmin = t_f * 1e-15;
  double h = std::min(t_f / 16.0, 0.1 / std::max(ah.norm_bound(t_f), 1e-12));

  auto record_sample = [&](double ts, const Eigen::VectorXcd& state) {
    result.sample_times.push_back(ts);
    result.sample_probabilities.push_back(state.cwiseAbs2());
  };

  int next_sample = 0;
  auto sample_time = [&](int s) { return t_f * s / (sample_count - 1); };
  record_sample(sample_time(next_sample++), y);

  ah.rhs(t, y, k1);  // FSAL seed
  std::int64_t steps = 0;

  while (t < t_f) {
    if (steps >= max_steps)
      throw IntegrationError("evolve: step budget exhausted before t_f", t, h, steps);

    // Never step past the next sample time (samples are exact, no dense output).
    const double t_target = sample_time(next_sample);
    bool hit_target = false;
    if (t + h >= t_target) {
      h = t_target - t;
      hit_target = true;
    }

    const double t2 = t + c2 * h, t3 = t + c3 * h, t4 = t + c4 * h,
                 t5 = t + c5 * h, t6 = std::min(t + h, t_f);

    ytmp = y + h * (a21 * k1);
    ah.rhs(t2, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    ah.rhs(t3, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    ah.rhs(t4, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    ah.rhs(t5, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    ah.rhs(t6, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    ah.rhs(t6, ynew, k7);

    yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err = yerr.norm();
    const double budget = tol * h;  // error per unit time

    if (err <= budget) {
      t = hit_target ? t_target : t + h;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      ++steps;
      result.norm_drift = std::max(result.norm_drift, std::abs(y.norm() - 1.0));
      if (hit_target) {
        record_sample(t_target, y);
        ++next_sample;
        if (next_sample >= sample_count) break;
      }
    }

    // On rejection y and t are unchanged, so k1 = f(t, y) stays valid.
    const double factor =
        err > 0.0 ? 0.9 * std::pow(budget / err, 0.25) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    if (h < hmin)
      throw IntegrationError("evolve: step size underflow", t, h, steps);
  }

  result.step_count = steps;
  result.final_state.basis = hamiltonian.basis;
  y *= std::exp(Complex(0.0, -1.0) * ah.static_mean() * t_f);  // restore the gauge
  result.final_state.amplitudes = std::move(y);
  return result;
}

Eigen::VectorXd instantaneous_spectrum(const TimeDependentHamiltonian& hamiltonian,
                                       double t) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(evaluate(hamiltonian, t),
                                                       Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> instantaneous_spectrum_with_vectors(
    const TimeDependentHamiltonian& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(evaluate(hamiltonian, t));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector adiabatic_initial_state(const TimeDependentHamiltonian& hamiltonian) {
  auto [values, vectors] = instantaneous_spectrum_with_vectors(hamiltonian, 0.0);
  const double scale = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  if (values.size() > 1 && values(1) - values(0) < 1e-10 * std::max(scale, 1.0))
    throw std::invalid_argument(
        "adiabatic_initial_state: ground level of H(0) is degenerate");
  Eigen::VectorXcd ground = vectors.col(0);
  Eigen::Index imax = 0;
  ground.cwiseAbs().maxCoeff(&imax);
  const Complex phase = ground(imax) / std::abs(ground(imax));
  ground /= phase;
  ground.normalize();
  return StateVector(hamiltonian.basis, std::move(ground));
}

}  // namespace bqa
