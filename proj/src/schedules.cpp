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

#include "bqa/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace bqa {

void BqaSchedule::validate() const {
  if (!(a0 > 0.0)) throw std::invalid_argument("schedule: A0 must be > 0");
  if (!(b0 > 0.0)) throw std::invalid_argument("schedule: B0 must be > 0");
  if (!(t_f > 0.0)) throw std::invalid_argument("schedule: t_f must be > 0");
  if (protocol == Protocol::Gaussian && !(sigma2 > 0.0))
    throw std::invalid_argument("schedule: sigma2 must be > 0");
}

BqaCoefficients bqa_coefficients(const BqaSchedule& s, double t) {
  if (t < 0.0 || t > s.t_f)
    throw std::invalid_argument("bqa_coefficients: t outside [0, t_f]");
  const double u = 2.0 * t / s.t_f - 1.0;  // -1 .. +1
  BqaCoefficients c;
  c.b = s.b0 * u;
  c.a = s.protocol == BqaSchedule::Protocol::Gaussian
            ? s.a0 * std::exp(-u * u / (2.0 * s.sigma2))
            : s.a0;
  return c;
}

void QaSchedule::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("schedule: Gamma must be > 0");
  if (!(t_f > 0.0)) throw std::invalid_argument("schedule: t_f must be > 0");
}

QaWeights qa_weights(const QaSchedule& s, double t) {
  if (t < 0.0 || t > s.t_f)
    throw std::invalid_argument("qa_weights: t outside [0, t_f]");
  return {1.0 - t / s.t_f, t / s.t_f};
}

}  // namespace bqa
