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

namespace bqa {

// Protocols for the driver coefficient A(t). B(t) is always the linear ramp
// B0 * (2t/t_f - 1), which crosses zero exactly at t_f/2. The Gaussian is not
// truncated at t = 0: A(0) = A0 exp(-1/(2 sigma2)) is small but finite, which
// is fine as long as B0 >> A0 (default ratio 20).
struct BqaSchedule {
  enum class Protocol { Gaussian, Constant };

  Protocol protocol = Protocol::Gaussian;
  double a0 = 1.0;
  double sigma2 = 0.1;
  double b0 = 20.0;
  double t_f = 100.0;

  void validate() const;  // throws std::invalid_argument
};

struct BqaCoefficients {
  double a;
  double b;
};

// Coefficients at time t in [0, t_f].
BqaCoefficients bqa_coefficients(const BqaSchedule& schedule, double t);

// Standard transverse-field annealing: (1 - t/t_f) on the driver,
// t/t_f on the problem part.
struct QaSchedule {
  double gamma = 1.0;
  double t_f = 100.0;

  void validate() const;
};

struct QaWeights {
  double driver;
  double problem;
};

QaWeights qa_weights(const QaSchedule& schedule, double t);

}  // namespace bqa
