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

#include "bqa/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bqa/errors.hpp"
#include "bqa/rng.hpp"

namespace bqa {

namespace {

std::vector<int> config_from_bits(std::uint64_t bits, int n) {
  // bit k = 0 -> sigma_k = +1; enumeration order makes the output list
  // naturally sorted with -1 < +1 when configs are compared lexicographically.
  std::vector<int> config(n);
  for (int k = 0; k < n; ++k)
    config[k] = (bits >> (n - 1 - k)) & 1 ? 1 : -1;
  return config;
}

double energy_of_bits(const ProblemInstance& inst, std::uint64_t bits) {
  double e = 0.0;
  const int n = inst.n;
  for (const Bond& b : inst.bonds) {
    const int si = (bits >> (n - 1 - b.i)) & 1 ? 1 : -1;
    const int sj = (bits >> (n - 1 - b.j)) & 1 ? 1 : -1;
    e -= b.coupling * si * sj;
  }
  for (int k = 0; k < n; ++k) {
    const int s = (bits >> (n - 1 - k)) & 1 ? 1 : -1;
    e -= inst.fields[k] * s;
  }
  return e;
}

}  // namespace

void ProblemInstance::validate() const {
  if (n < 1) throw std::invalid_argument("instance: n must be positive");
  if (static_cast<int>(fields.size()) != n)
    throw std::invalid_argument("instance: fields size != n");
  std::set<std::pair<int, int>> seen;
  for (const Bond& b : bonds) {
    if (b.i < 0 || b.i >= b.j || b.j >= n)
      throw std::invalid_argument("instance: bond (" + std::to_string(b.i) + "," +
                                  std::to_string(b.j) + ") violates 0 <= i < j < n");
    if (!seen.insert({b.i, b.j}).second)
      throw std::invalid_argument("instance: duplicate bond (" + std::to_string(b.i) +
                                  "," + std::to_string(b.j) + ")");
    if (!std::isfinite(b.coupling))
      throw std::invalid_argument("instance: non-finite coupling");
  }
  for (double h : fields)
    if (!std::isfinite(h)) throw std::invalid_argument("instance: non-finite field");
}

double classical_energy(const ProblemInstance& instance, std::span<const int> config) {
  if (static_cast<int>(config.size()) != instance.n)
    throw std::invalid_argument("classical_energy: config length != n");
  for (int s : config)
    if (s != 1 && s != -1)
      throw std::invalid_argument("classical_energy: config entries must be +-1");
  double e = 0.0;
  for (const Bond& b : instance.bonds)
    e -= b.coupling * config[b.i] * config[b.j];
  for (int k = 0; k < instance.n; ++k)
    e -= instance.fields[k] * config[k];
  return e;
}

GroundStateSolution brute_force_ground_states(const ProblemInstance& instance) {
  instance.validate();
  if (instance.n > 24)
    throw CapacityError("brute_force_ground_states: n > 24 (2^n enumeration bound)");
  const std::uint64_t total = std::uint64_t{1} << instance.n;

  double best = energy_of_bits(instance, 0);
  for (std::uint64_t bits = 1; bits < total; ++bits)
    best = std::min(best, energy_of_bits(instance, bits));

  GroundStateSolution sol;
  sol.energy = best;
  for (std::uint64_t bits = 0; bits < total; ++bits)
    if (energy_of_bits(instance, bits) <= best + kGroundStateTolerance)
      sol.configurations.push_back(config_from_bits(bits, instance.n));
  std::sort(sol.configurations.begin(), sol.configurations.end());
  return sol;
}

ProblemInstance random_fully_connected(int n, double coupling_scale, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_fully_connected: n must be >= 2");
  SplitMix64 rng(seed);
  ProblemInstance inst;
  inst.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      inst.bonds.push_back({i, j, rng.uniform(-coupling_scale, coupling_scale) / n});
  inst.fields.resize(n);
  for (int i = 0; i < n; ++i)
    inst.fields[i] = rng.uniform(-coupling_scale, coupling_scale);
  return inst;
}

ProblemInstance ring_instance(int n, double coupling, double field) {
  if (n < 3) throw std::invalid_argument("ring_instance: n must be >= 3");
  ProblemInstance inst;
  inst.n = n;
  for (int i = 0; i + 1 < n; ++i)
    inst.bonds.push_back({i, i + 1, coupling});
  inst.bonds.push_back({0, n - 1, coupling});
  inst.fields.assign(n, field);
  std::sort(inst.bonds.begin(), inst.bonds.end(),
            [](const Bond& a, const Bond& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  return inst;
}

bool is_nontrivial(const ProblemInstance& instance) {
  for (double h : instance.fields)
    if (h == 0.0)
      throw std::invalid_argument("is_nontrivial: requires all h_i != 0");
  GroundStateSolution sol = brute_force_ground_states(instance);
  if (sol.degeneracy() != 1)
    throw std::invalid_argument("is_nontrivial: degenerate ground state, indeterminate");
  for (int k = 0; k < instance.n; ++k) {
    const int sign_h = instance.fields[k] > 0 ? 1 : -1;
    if (sol.configurations[0][k] != sign_h) return true;
  }
  return false;
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  ProblemInstance inst;
  try {
    if (!doc.contains("n")) throw ParseError(path.string() + ": missing field \"n\"");
    inst.n = doc.at("n").get<int>();
    if (doc.contains("bonds")) {
      const auto& bonds = doc.at("bonds");
      for (std::size_t k = 0; k < bonds.size(); ++k) {
        const auto& b = bonds.at(k);
        if (!b.is_array() || b.size() != 3)
          throw ParseError(path.string() + ": bonds[" + std::to_string(k) +
                           "] must be [i, j, J_ij]");
        inst.bonds.push_back({b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<double>()});
      }
    }
    if (doc.contains("fields"))
      inst.fields = doc.at("fields").get<std::vector<double>>();
    else
      inst.fields.assign(std::max(inst.n, 0), 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return inst;
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  instance.validate();
  nlohmann::json doc;
  doc["n"] = instance.n;
  auto bonds = nlohmann::json::array();
  for (const Bond& b : instance.bonds)
    bonds.push_back({b.i, b.j, b.coupling});
  doc["bonds"] = bonds;
  doc["fields"] = instance.fields;
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << doc.dump(2) << "\n";
}

}  // namespace bqa
