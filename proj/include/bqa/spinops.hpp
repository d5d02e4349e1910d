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
#include <complex>
#include <cstdint>
#include <vector>

namespace bqa {

using OperatorMatrix = Eigen::MatrixXcd;

enum class LocalKind { Qutrit, Qubit };

// Tensor-product basis over identical sites. Site 0 is the slowest-varying
// index (row-major convention); all modules share this ordering.
//
// Local state order:
//   Qutrit: index 0,1,2  <->  m = +1, 0, -1
//   Qubit:  index 0,1    <->  sigma = +1, -1
struct SiteBasis {
  LocalKind kind = LocalKind::Qutrit;
  int sites = 1;

  int local_dim() const { return kind == LocalKind::Qutrit ? 3 : 2; }
  Eigen::Index dim() const;

  // Basis index <-> per-site local indices (digits), bijective.
  std::vector<int> decode(Eigen::Index index) const;
  Eigen::Index encode(const std::vector<int>& digits) const;

  // Eigenvalue of the local z operator for a local state index
  // (m for qutrits, +-1 for qubits in the sigma-z convention).
  double z_eigenvalue(int digit) const;

  bool operator==(const SiteBasis&) const = default;
};

enum class Spin1Op { Sz, Sx, Sz2, Sx2 };
enum class PauliOp { X, Z };

// Exact 3x3 spin-1 matrices in the (+1, 0, -1) ordering.
OperatorMatrix spin1_operator(Spin1Op which);

// 2x2 Pauli matrices in the (+1/2, -1/2) ordering.
OperatorMatrix pauli_operator(PauliOp which);

// Embed a local operator at `site`, identity elsewhere.
OperatorMatrix lift(const OperatorMatrix& local, int site, const SiteBasis& basis);

// Local operators on two distinct sites, identity elsewhere.
OperatorMatrix two_site(const OperatorMatrix& local_a, int site_a,
                        const OperatorMatrix& local_b, int site_b,
                        const SiteBasis& basis);

// Dense matrices get unwieldy fast; refuse anything past this.
inline constexpr Eigen::Index kMaxDenseDim = 1 << 14;

}  // namespace bqa
