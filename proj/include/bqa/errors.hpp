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

#include <stdexcept>
#include <string>

namespace bqa {

// A requested dimension or enumeration is beyond what dense matrices /
// exhaustive search can handle. Maps to CLI exit code 3.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive integration could not meet the tolerance within the step budget.
// Maps to CLI exit code 2.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t_reached, double last_step,
                   long long steps_taken)
      : std::runtime_error(what),
        t_reached(t_reached),
        last_step(last_step),
        steps_taken(steps_taken) {}

  double t_reached;
  double last_step;
  long long steps_taken;
};

// Malformed instance/config file. Message carries file and field context.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bqa
