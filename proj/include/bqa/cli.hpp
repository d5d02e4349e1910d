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

#include <string>
#include <vector>

namespace bqa {

inline constexpr const char* kVersion = "0.1.0";

// Experiment runner. `args` excludes the program name. Exit codes:
//   0 success, 1 invalid config, 2 integration failure, 3 capacity exceeded.
// Every output file starts with a '#'-prefixed JSON header embedding the
// version, the argv, and the resolved parameters; `replay <file>` re-executes
// a run from that header. Fixed seeds and configs give byte-identical output.
int run_cli(const std::vector<std::string>& args);

}  // namespace bqa
