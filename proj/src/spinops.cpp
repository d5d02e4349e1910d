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

#include "bqa/spinops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bqa/errors.hpp"

namespace bqa {

namespace {

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::Index SiteBasis::dim() const {
  Eigen::Index d = 1;
  for (int k = 0; k < sites; ++k) {
    d *= local_dim();
    if (d > kMaxDenseDim)
      throw CapacityError("SiteBasis: dimension " + std::to_string(local_dim()) +
                          "^" + std::to_string(sites) + " exceeds dense limit");
  }
  return d;
}

std::vector<int> SiteBasis::decode(Eigen::Index index) const {
  const int d = local_dim();
  std::vector<int> digits(sites);
  for (int k = sites - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(index % d);
    index /= d;
  }
  return digits;
}

Eigen::Index SiteBasis::encode(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != sites)
    throw std::invalid_argument("SiteBasis::encode: wrong digit count");
  const int d = local_dim();
  Eigen::Index index = 0;
  for (int k = 0; k < sites; ++k) {
    if (digits[k] < 0 || digits[k] >= d)
      throw std::invalid_argument("SiteBasis::encode: digit out of range");
    index = index * d + digits[k];
  }
  return index;
}

double SiteBasis::z_eigenvalue(int digit) const {
  return kind == LocalKind::Qutrit ? 1.0 - digit : 1.0 - 2.0 * digit;
}

OperatorMatrix spin1_operator(Spin1Op which) {
  OperatorMatrix m = OperatorMatrix::Zero(3, 3);
  const double r = 1.0 / std::sqrt(2.0);
  switch (which) {
    case Spin1Op::Sz:
      m(0, 0) = 1.0;
      m(2, 2) = -1.0;
      break;
    case Spin1Op::Sx:
      m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
      break;
    case Spin1Op::Sz2:
      m(0, 0) = 1.0;
      m(2, 2) = 1.0;
      break;
    case Spin1Op::Sx2:
      m(0, 0) = m(2, 2) = 0.5;
      m(0, 2) = m(2, 0) = 0.5;
      m(1, 1) = 1.0;
      break;
  }
  return m;
}

OperatorMatrix pauli_operator(PauliOp which) {
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  switch (which) {
    case PauliOp::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case PauliOp::X:
      m(0, 1) = m(1, 0) = 1.0;
      break;
  }
  return m;
}

OperatorMatrix lift(const OperatorMatrix& local, int site, const SiteBasis& basis) {
  if (site < 0 || site >= basis.sites)
    throw std::invalid_argument("lift: site index out of range");
  if (local.rows() != basis.local_dim() || local.cols() != basis.local_dim())
    throw std::invalid_argument("lift: local operator dimension mismatch");
  const Eigen::Index d = basis.local_dim();
  Eigen::Index left = 1, right = 1;
  for (int k = 0; k < site; ++k) left *= d;
  for (int k = site + 1; k < basis.sites; ++k) right *= d;
  (void)basis.dim();  // capacity check
  return kron(kron(OperatorMatrix::Identity(left, left), local),
              OperatorMatrix::Identity(right, right));
}

OperatorMatrix two_site(const OperatorMatrix& local_a, int site_a,
                        const OperatorMatrix& local_b, int site_b,
                        const SiteBasis& basis) {
  if (site_a == site_b)
    throw std::invalid_argument("two_site: sites must be distinct");
  // lift both and multiply; the lifted factors act on disjoint sites so the
  // product is their tensor product.
  return lift(local_a, site_a, basis) * lift(local_b, site_b, basis);
}

}  // namespace bqa
