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

#include <algorithm>
#include <complex>
#include <vector>

#include "bqa/spinops.hpp"

using namespace bqa;
using Complex = std::complex<double>;

namespace {

double hermiticity_defect(const OperatorMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> eigenvalue_set(const OperatorMatrix& m) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  // collapse near-duplicates to the distinct set
  std::sort(values.begin(), values.end());
  std::vector<double> distinct;
  for (double v : values)
    if (distinct.empty() || v - distinct.back() > 1e-9) distinct.push_back(v);
  return distinct;
}

}  // namespace

TEST_CASE("spin-1 matrices match the (+1, 0, -1) convention") {
  const OperatorMatrix sz = spin1_operator(Spin1Op::Sz);
  CHECK(sz(0, 0) == Complex(1.0));
  CHECK(sz(1, 1) == Complex(0.0));
  CHECK(sz(2, 2) == Complex(-1.0));
  CHECK(sz.cwiseAbs().sum() == doctest::Approx(2.0));

  const OperatorMatrix sx2 = spin1_operator(Spin1Op::Sx2);
  OperatorMatrix expected(3, 3);
  expected << 1, 0, 1, 0, 2, 0, 1, 0, 1;
  expected *= 0.5;
  CHECK((sx2 - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // Sz2 is literally the square of Sz
  const OperatorMatrix sz2 = spin1_operator(Spin1Op::Sz2);
  CHECK((sz2 - sz * sz).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  // and Sx2 the square of Sx
  const OperatorMatrix sx = spin1_operator(Spin1Op::Sx);
  CHECK((sx2 - sx * sx).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("pauli matrices") {
  const OperatorMatrix z = pauli_operator(PauliOp::Z);
  const OperatorMatrix x = pauli_operator(PauliOp::X);
  CHECK(z(0, 0) == Complex(1.0));
  CHECK(z(1, 1) == Complex(-1.0));
  CHECK(x(0, 1) == Complex(1.0));
  CHECK(x(1, 0) == Complex(1.0));
  CHECK(((x * x) - OperatorMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("all operators Hermitian to 1e-12") {
  for (auto op : {Spin1Op::Sz, Spin1Op::Sx, Spin1Op::Sz2, Spin1Op::Sx2})
    CHECK(hermiticity_defect(spin1_operator(op)) < 1e-12);
  for (auto op : {PauliOp::X, PauliOp::Z})
    CHECK(hermiticity_defect(pauli_operator(op)) < 1e-12);
  const SiteBasis basis{LocalKind::Qutrit, 3};
  CHECK(hermiticity_defect(lift(spin1_operator(Spin1Op::Sx), 1, basis)) < 1e-12);
  CHECK(hermiticity_defect(two_site(spin1_operator(Spin1Op::Sz), 0,
                                    spin1_operator(Spin1Op::Sz), 2, basis)) < 1e-12);
}

TEST_CASE("basis encode/decode is a bijection") {
  for (const SiteBasis basis :
       {SiteBasis{LocalKind::Qutrit, 3}, SiteBasis{LocalKind::Qubit, 4}}) {
    for (Eigen::Index idx = 0; idx < basis.dim(); ++idx)
      CHECK(basis.encode(basis.decode(idx)) == idx);
  }
}

TEST_CASE("lift acts on one site only") {
  const SiteBasis basis{LocalKind::Qutrit, 2};
  const OperatorMatrix lifted = lift(spin1_operator(Spin1Op::Sz), 0, basis);
  // |m0=+1, m1=0> is digit (0, 1)
  const Eigen::Index idx = basis.encode({0, 1});
  CHECK(lifted(idx, idx) == Complex(1.0));

  const OperatorMatrix id3 = OperatorMatrix::Identity(3, 3);
  CHECK((lift(id3, 1, basis) - OperatorMatrix::Identity(9, 9)).cwiseAbs().maxCoeff() ==
        0.0);

  for (int site = 0; site < 3; ++site) {
    const SiteBasis b3{LocalKind::Qutrit, 3};
    CHECK(std::abs(lift(spin1_operator(Spin1Op::Sz), site, b3).trace()) < 1e-12);
  }
}

TEST_CASE("lift preserves the local spectrum up to multiplicity") {
  const SiteBasis basis{LocalKind::Qutrit, 3};
  for (auto op : {Spin1Op::Sz, Spin1Op::Sx, Spin1Op::Sx2}) {
    const auto local = eigenvalue_set(spin1_operator(op));
    const auto lifted = eigenvalue_set(lift(spin1_operator(op), 1, basis));
    REQUIRE(local.size() == lifted.size());
    for (std::size_t k = 0; k < local.size(); ++k)
      CHECK(lifted[k] == doctest::Approx(local[k]).epsilon(1e-12));
  }
}

TEST_CASE("two_site examples") {
  const SiteBasis q2{LocalKind::Qutrit, 2};
  const OperatorMatrix zz =
      two_site(spin1_operator(Spin1Op::Sz), 0, spin1_operator(Spin1Op::Sz), 1, q2);
  const Eigen::Index idx = q2.encode({0, 2});  // |+1, -1>
  CHECK(zz(idx, idx) == Complex(-1.0));

  const OperatorMatrix swapped =
      two_site(spin1_operator(Spin1Op::Sz), 1, spin1_operator(Spin1Op::Sz), 0, q2);
  CHECK((zz - swapped).cwiseAbs().maxCoeff() == 0.0);

  const SiteBasis p2{LocalKind::Qubit, 2};
  const OperatorMatrix pzz =
      two_site(pauli_operator(PauliOp::Z), 0, pauli_operator(PauliOp::Z), 1, p2);
  CHECK(pzz(0, 0) == Complex(1.0));
  CHECK(pzz(1, 1) == Complex(-1.0));
  CHECK(pzz(2, 2) == Complex(-1.0));
  CHECK(pzz(3, 3) == Complex(1.0));
}

TEST_CASE("lifted operators on distinct sites commute exactly") {
  const SiteBasis basis{LocalKind::Qutrit, 3};
  const OperatorMatrix a = lift(spin1_operator(Spin1Op::Sx), 0, basis);
  const OperatorMatrix b = lift(spin1_operator(Spin1Op::Sz), 2, basis);
  CHECK(((a * b) - (b * a)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spin-1 commutator [Sx, Sy] = i Sz") {
  // Sy is not part of the public surface; build it here.
  OperatorMatrix sy(3, 3);
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  sy.setZero();
  sy(0, 1) = -i * r;
  sy(1, 0) = i * r;
  sy(1, 2) = -i * r;
  sy(2, 1) = i * r;
  const OperatorMatrix sx = spin1_operator(Spin1Op::Sx);
  const OperatorMatrix sz = spin1_operator(Spin1Op::Sz);
  CHECK(((sx * sy - sy * sx) - i * sz).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("errors") {
  const SiteBasis basis{LocalKind::Qutrit, 2};
  CHECK_THROWS_AS(lift(pauli_operator(PauliOp::X), 0, basis), std::invalid_argument);
  CHECK_THROWS_AS(lift(spin1_operator(Spin1Op::Sz), 2, basis), std::invalid_argument);
  CHECK_THROWS_AS(two_site(spin1_operator(Spin1Op::Sz), 1,
                           spin1_operator(Spin1Op::Sz), 1, basis),
                  std::invalid_argument);
}
