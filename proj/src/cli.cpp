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

#include "bqa/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "bqa/analysis.hpp"
#include "bqa/errors.hpp"
#include "bqa/evolve.hpp"
#include "bqa/hamiltonians.hpp"
#include "bqa/instances.hpp"
#include "bqa/meanfield.hpp"
#include "bqa/nested.hpp"
#include "bqa/parallel.hpp"
#include "bqa/rng.hpp"
#include "bqa/schedules.hpp"

namespace bqa {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// "lo:hi:n" -> n values, linear or log spaced.
std::vector<double> parse_range(const std::string& text, bool log_spaced) {
  double lo = 0, hi = 0;
  int n = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
    throw std::invalid_argument("range must be lo:hi:n, got '" + text + "'");
  if (log_spaced && !(lo > 0.0 && hi > 0.0))
    throw std::invalid_argument("log range requires positive bounds: '" + text + "'");
  std::vector<double> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double f = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
    out.push_back(log_spaced ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
  }
  return out;
}

// "a..b" inclusive.
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  unsigned long long a = 0, b = 0;
  if (std::sscanf(text.c_str(), "%llu..%llu", &a, &b) != 2 || b < a)
    throw std::invalid_argument("seed range must be a..b, got '" + text + "'");
  return {a, b};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") {
      os_ = &std::cout;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

void write_header(std::ostream& os, const std::string& command, const json& params,
                  const std::vector<std::string>& argv) {
  json header;
  header["version"] = kVersion;
  header["command"] = command;
  header["argv"] = argv;
  header["params"] = params;
  os << "# " << header.dump() << "\n";
}

struct CommonFlags {
  std::string out = "-";
  double tol = kDefaultTolerance;
};

// ---------------------------------------------------------------------------
// levels: instantaneous spectrum of the single-qutrit Hamiltonian vs t/t_f,
// energies in units of A0 (Fig. 2 conditions).

struct LevelsConfig {
  CommonFlags common;
  double b0_ratio = 20.0;
  double sigma2 = 0.1;
  std::string protocol = "gauss";
  int points = 201;
};

BqaSchedule::Protocol protocol_from_name(const std::string& name) {
  if (name == "gauss") return BqaSchedule::Protocol::Gaussian;
  if (name == "const") return BqaSchedule::Protocol::Constant;
  throw std::invalid_argument("protocol must be gauss or const");
}

void cmd_levels(const LevelsConfig& cfg, const std::vector<std::string>& argv) {
  // The spectrum depends on t only through t/t_f, so t_f = 1 and A0 = 1.
  BqaSchedule schedule{protocol_from_name(cfg.protocol), 1.0, cfg.sigma2,
                       cfg.b0_ratio, 1.0};
  const TimeDependentHamiltonian h = single_qutrit_field_hamiltonian(0.0, schedule);

  Output output(cfg.common.out);
  write_header(output.stream(), "levels",
               {{"b0_ratio", cfg.b0_ratio},
                {"sigma2", cfg.sigma2},
                {"protocol", cfg.protocol},
                {"points", cfg.points}},
               argv);
  output.stream() << "t_over_tf,e0,e1,e2\n";
  for (int k = 0; k < cfg.points; ++k) {
    const double u = static_cast<double>(k) / (cfg.points - 1);
    const Eigen::VectorXd ev = instantaneous_spectrum(h, u);
    output.stream() << fmt(u) << "," << fmt(ev(0)) << "," << fmt(ev(1)) << ","
                    << fmt(ev(2)) << "\n";
  }
}

// ---------------------------------------------------------------------------
// single: single-qutrit bifurcation dynamics (Figs. 3 and 4). Trajectory mode
// emits P(m) vs t for one annealing time; sweep mode emits final P(m) vs
// A0 t_f. Times in 1/A0, fields in A0.

struct SingleConfig {
  CommonFlags common;
  double a0tf = 100.0;
  double b0_ratio = 20.0;
  double sigma2 = 0.1;
  double field = 0.0;
  std::string protocol = "gauss";
  std::string sweep;  // "lo:hi:n" of A0 t_f, log spaced; empty -> trajectory
  int points = 201;
  std::string start = "adiabatic";  // or "zero"
};

StateVector single_start(const TimeDependentHamiltonian& h, const std::string& start) {
  if (start == "zero") return basis_state(h.basis, std::vector<int>(h.basis.sites, 1));
  if (start == "adiabatic") return adiabatic_initial_state(h);
  throw std::invalid_argument("start must be adiabatic or zero");
}

void cmd_single(const SingleConfig& cfg, const std::vector<std::string>& argv) {
  const auto run_one = [&](double a0tf, int samples) {
    BqaSchedule schedule{protocol_from_name(cfg.protocol), 1.0, cfg.sigma2,
                         cfg.b0_ratio, a0tf};
    const TimeDependentHamiltonian h =
        single_qutrit_field_hamiltonian(cfg.field, schedule);
    return evolve(h, single_start(h, cfg.start), a0tf, samples, cfg.common.tol);
  };

  Output output(cfg.common.out);
  json params = {{"a0tf", cfg.a0tf},        {"b0_ratio", cfg.b0_ratio},
                 {"sigma2", cfg.sigma2},    {"protocol", cfg.protocol},
                 {"field", cfg.field},      {"sweep", cfg.sweep},
                 {"points", cfg.points},    {"start", cfg.start},
                 {"tol", cfg.common.tol}};
  write_header(output.stream(), "single", params, argv);

  if (cfg.sweep.empty()) {
    const EvolutionResult result = run_one(cfg.a0tf, cfg.points);
    output.stream() << "t_over_tf,p_plus,p_zero,p_minus\n";
    for (std::size_t k = 0; k < result.sample_times.size(); ++k) {
      const Eigen::VectorXd& p = result.sample_probabilities[k];
      output.stream() << fmt(result.sample_times[k] / cfg.a0tf) << "," << fmt(p(0))
                      << "," << fmt(p(1)) << "," << fmt(p(2)) << "\n";
    }
  } else {
    const std::vector<double> tf_values = parse_range(cfg.sweep, /*log=*/true);
    std::vector<Eigen::VectorXd> finals(tf_values.size());
    parallel_for(tf_values.size(), [&](std::size_t k) {
      finals[k] = run_one(tf_values[k], 2).sample_probabilities.back();
    });
    output.stream() << "a0_tf,p_plus,p_zero,p_minus\n";
    for (std::size_t k = 0; k < tf_values.size(); ++k)
      output.stream() << fmt(tf_values[k]) << "," << fmt(finals[k](0)) << ","
                      << fmt(finals[k](1)) << "," << fmt(finals[k](2)) << "\n";
  }
}

// ---------------------------------------------------------------------------
// field-sweep: final P(m) vs magnetic field h (Fig. 5 conditions).

struct FieldSweepConfig {
  CommonFlags common;
  double a0tf = 200.0;
  double b0_ratio = 20.0;
  double sigma2 = 0.1;
  std::string protocol = "gauss";
  std::string fields = "-1:1:41";  // h in units of A0, linear
  std::string start = "adiabatic";
};

void cmd_field_sweep(const FieldSweepConfig& cfg, const std::vector<std::string>& argv) {
  const std::vector<double> fields = parse_range(cfg.fields, /*log=*/false);
  std::vector<Eigen::VectorXd> finals(fields.size());
  parallel_for(fields.size(), [&](std::size_t k) {
    BqaSchedule schedule{protocol_from_name(cfg.protocol), 1.0, cfg.sigma2,
                         cfg.b0_ratio, cfg.a0tf};
    const TimeDependentHamiltonian h =
        single_qutrit_field_hamiltonian(fields[k], schedule);
    finals[k] =
        evolve(h, single_start(h, cfg.start), cfg.a0tf, 2, cfg.common.tol)
            .sample_probabilities.back();
  });

  Output output(cfg.common.out);
  write_header(output.stream(), "field-sweep",
               {{"a0tf", cfg.a0tf},
                {"b0_ratio", cfg.b0_ratio},
                {"sigma2", cfg.sigma2},
                {"protocol", cfg.protocol},
                {"fields", cfg.fields},
                {"start", cfg.start},
                {"tol", cfg.common.tol}},
               argv);
  output.stream() << "h_over_a0,p_plus,p_zero,p_minus\n";
  for (std::size_t k = 0; k < fields.size(); ++k)
    output.stream() << fmt(fields[k]) << "," << fmt(finals[k](0)) << ","
                    << fmt(finals[k](1)) << "," << fmt(finals[k](2)) << "\n";
}

// ---------------------------------------------------------------------------
// ferro: ground-state probability for the ferromagnetic ring, BQA vs QA
// (Fig. 6 conditions). Energies in units of J, times in 1/J.

struct FerroConfig {
  CommonFlags common;
  int n = 4;
  double h_ratio = 0.1;  // h_i / J
  double tf = 200.0;     // J t_f
  double a0 = 2.0;       // A0 / J
  double b0 = 20.0;      // B0 / J
  double sigma2 = 0.1;
  double gamma = 1.0;    // Gamma / J
  std::string protocol = "gauss";
  std::string method = "both";  // bqa | qa | both
  std::string sweep;            // "lo:hi:n" of J t_f, log spaced
  int points = 201;
};

double run_success(const TimeDependentHamiltonian& h, double t_f, double tol,
                   const GroundStateSolution& oracle, int samples,
                   std::vector<std::pair<double, double>>* trajectory) {
  const EvolutionResult result =
      evolve(h, adiabatic_initial_state(h), t_f, samples, tol);
  if (trajectory) {
    trajectory->clear();
    for (std::size_t k = 0; k < result.sample_times.size(); ++k) {
      double p = 0.0;
      for (const auto& config : oracle.configurations) {
        std::vector<int> digits(config.size());
        for (std::size_t s = 0; s < config.size(); ++s)
          digits[s] = h.basis.kind == LocalKind::Qutrit ? (config[s] == 1 ? 0 : 2)
                                                        : (config[s] == 1 ? 0 : 1);
        p += result.sample_probabilities[k](h.basis.encode(digits));
      }
      trajectory->push_back({result.sample_times[k], p});
    }
  }
  return success_probability(result, oracle).success_probability;
}

void cmd_ferro(const FerroConfig& cfg, const std::vector<std::string>& argv) {
  const ProblemInstance instance = ring_instance(cfg.n, 1.0, cfg.h_ratio);
  const GroundStateSolution oracle = brute_force_ground_states(instance);
  const bool do_bqa = cfg.method == "both" || cfg.method == "bqa";
  const bool do_qa = cfg.method == "both" || cfg.method == "qa";
  if (!do_bqa && !do_qa) throw std::invalid_argument("method must be bqa, qa or both");

  const auto bqa_at = [&](double tf) {
    return bqa_hamiltonian(instance, BqaSchedule{protocol_from_name(cfg.protocol),
                                                 cfg.a0, cfg.sigma2, cfg.b0, tf});
  };
  const auto qa_at = [&](double tf) {
    return qa_hamiltonian(instance, QaSchedule{cfg.gamma, tf});
  };

  Output output(cfg.common.out);
  json params = {{"n", cfg.n},           {"h_ratio", cfg.h_ratio},
                 {"tf", cfg.tf},         {"a0", cfg.a0},
                 {"b0", cfg.b0},         {"sigma2", cfg.sigma2},
                 {"gamma", cfg.gamma},   {"protocol", cfg.protocol},
                 {"method", cfg.method}, {"sweep", cfg.sweep},
                 {"points", cfg.points}, {"tol", cfg.common.tol}};
  write_header(output.stream(), "ferro", params, argv);

  if (cfg.sweep.empty()) {
    std::vector<std::pair<double, double>> bqa_traj, qa_traj;
    if (do_bqa)
      run_success(bqa_at(cfg.tf), cfg.tf, cfg.common.tol, oracle, cfg.points, &bqa_traj);
    if (do_qa)
      run_success(qa_at(cfg.tf), cfg.tf, cfg.common.tol, oracle, cfg.points, &qa_traj);
    output.stream() << "t_over_tf";
    if (do_bqa) output.stream() << ",bqa_success";
    if (do_qa) output.stream() << ",qa_success";
    output.stream() << "\n";
    const std::size_t rows = do_bqa ? bqa_traj.size() : qa_traj.size();
    for (std::size_t k = 0; k < rows; ++k) {
      const double t = (do_bqa ? bqa_traj : qa_traj)[k].first;
      output.stream() << fmt(t / cfg.tf);
      if (do_bqa) output.stream() << "," << fmt(bqa_traj[k].second);
      if (do_qa) output.stream() << "," << fmt(qa_traj[k].second);
      output.stream() << "\n";
    }
  } else {
    const std::vector<double> tf_values = parse_range(cfg.sweep, /*log=*/true);
    std::vector<double> bqa_s(tf_values.size(), -1.0), qa_s(tf_values.size(), -1.0);
    parallel_for(tf_values.size() * 2, [&](std::size_t idx) {
      const std::size_t k = idx / 2;
      if (idx % 2 == 0) {
        if (do_bqa)
          bqa_s[k] = run_success(bqa_at(tf_values[k]), tf_values[k], cfg.common.tol,
                                 oracle, 2, nullptr);
      } else if (do_qa) {
        qa_s[k] = run_success(qa_at(tf_values[k]), tf_values[k], cfg.common.tol,
                              oracle, 2, nullptr);
      }
    });
    output.stream() << "j_tf";
    if (do_bqa) output.stream() << ",bqa_success";
    if (do_qa) output.stream() << ",qa_success";
    output.stream() << "\n";
    for (std::size_t k = 0; k < tf_values.size(); ++k) {
      output.stream() << fmt(tf_values[k]);
      if (do_bqa) output.stream() << "," << fmt(bqa_s[k]);
      if (do_qa) output.stream() << "," << fmt(qa_s[k]);
      output.stream() << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// sampling: per-ground-state probabilities for a degenerate instance vs J t_f
// (Fig. 7 setting; the instance comes from a file). Whether the figure's
// x axis is t_f or sample index is not determinable from the text; we emit
// probabilities against t_f.

struct SamplingConfig {
  CommonFlags common;
  std::string instance_path;
  std::string sweep = "20:300:8";
  double a0 = 2.0;
  double b0 = 20.0;
  double sigma2 = 0.1;
  double gamma = 1.0;
  std::string protocol = "gauss";
};

void cmd_sampling(const SamplingConfig& cfg, const std::vector<std::string>& argv) {
  const ProblemInstance instance = load_instance(cfg.instance_path);
  const GroundStateSolution oracle = brute_force_ground_states(instance);
  if (oracle.degeneracy() < 2)
    throw std::invalid_argument("sampling: instance ground state is not degenerate");
  const std::vector<double> tf_values = parse_range(cfg.sweep, /*log=*/true);

  struct Row {
    std::vector<double> per_state;
    std::vector<double> flip_reduced;
  };
  std::vector<Row> bqa_rows(tf_values.size()), qa_rows(tf_values.size());

  parallel_for(tf_values.size() * 2, [&](std::size_t idx) {
    const std::size_t k = idx / 2;
    const double tf = tf_values[k];
    EvolutionResult result;
    if (idx % 2 == 0) {
      const TimeDependentHamiltonian h = bqa_hamiltonian(
          instance, BqaSchedule{protocol_from_name(cfg.protocol), cfg.a0, cfg.sigma2,
                                cfg.b0, tf});
      result = evolve(h, adiabatic_initial_state(h), tf, 2, cfg.common.tol);
    } else {
      const TimeDependentHamiltonian h =
          qa_hamiltonian(instance, QaSchedule{cfg.gamma, tf});
      result = evolve(h, adiabatic_initial_state(h), tf, 2, cfg.common.tol);
    }
    const SamplingDistribution dist = sampling_distribution(result, oracle);
    Row row;
    for (const auto& [config, p] : dist.per_state) row.per_state.push_back(p);
    for (const auto& [config, p] : dist.flip_reduced) row.flip_reduced.push_back(p);
    (idx % 2 == 0 ? bqa_rows : qa_rows)[k] = std::move(row);
  });

  Output output(cfg.common.out);
  write_header(output.stream(), "sampling",
               {{"instance", cfg.instance_path},
                {"sweep", cfg.sweep},
                {"a0", cfg.a0},
                {"b0", cfg.b0},
                {"sigma2", cfg.sigma2},
                {"gamma", cfg.gamma},
                {"protocol", cfg.protocol},
                {"degeneracy", oracle.degeneracy()},
                {"tol", cfg.common.tol}},
               argv);
  output.stream() << "method,j_tf";
  for (int k = 0; k < oracle.degeneracy(); ++k) output.stream() << ",p" << k;
  for (std::size_t k = 0; k < bqa_rows[0].flip_reduced.size(); ++k)
    output.stream() << ",pair" << k;
  output.stream() << "\n";
  for (int pass = 0; pass < 2; ++pass) {
    const auto& rows = pass == 0 ? bqa_rows : qa_rows;
    for (std::size_t k = 0; k < tf_values.size(); ++k) {
      output.stream() << (pass == 0 ? "BQA" : "QA") << "," << fmt(tf_values[k]);
      for (double p : rows[k].per_state) output.stream() << "," << fmt(p);
      for (double p : rows[k].flip_reduced) output.stream() << "," << fmt(p);
      output.stream() << "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// random-bench: success histograms over random fully-connected instances
// (Figs. 8 and 9 conditions).

struct RandomBenchConfig {
  CommonFlags common;
  int n = 4;
  std::string seeds = "0..99";
  double tf = 300.0;
  double a0 = 2.0;
  double b0 = 20.0;
  double sigma2 = 0.1;
  double gamma = 1.0;
  std::string protocol = "gauss";
  std::string method = "both";
  double bin_width = 0.05;
  bool nontrivial_only = false;
  std::string records_path;  // JSON-lines; empty -> skip
};

void write_records(const std::string& path, const BenchmarkResult& result) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open records file " + path);
  for (const BenchmarkRecord& rec : result.records) {
    if (rec.failed) continue;
    json line = {{"seed", rec.seed},
                 {"method", method_name(rec.method)},
                 {"success", rec.success},
                 {"zero_leakage", rec.zero_leakage},
                 {"energy", rec.energy},
                 {"nontrivial", rec.nontrivial}};
    os << line.dump() << "\n";
  }
}

void cmd_random_bench(const RandomBenchConfig& cfg,
                      const std::vector<std::string>& argv) {
  const auto [seed_lo, seed_hi] = parse_seed_range(cfg.seeds);
  std::vector<SeededInstance> instances;
  for (std::uint64_t seed = seed_lo; seed <= seed_hi; ++seed)
    instances.push_back({seed, random_fully_connected(cfg.n, 1.0, seed)});

  const bool do_bqa = cfg.method == "both" || cfg.method == "bqa";
  const bool do_qa = cfg.method == "both" || cfg.method == "qa";
  if (!do_bqa && !do_qa) throw std::invalid_argument("method must be bqa, qa or both");

  BenchmarkResult bqa_result, qa_result;
  if (do_bqa)
    bqa_result = benchmark(instances,
                           BqaSchedule{protocol_from_name(cfg.protocol), cfg.a0,
                                       cfg.sigma2, cfg.b0, cfg.tf},
                           cfg.common.tol);
  if (do_qa)
    qa_result = benchmark(instances, QaSchedule{cfg.gamma, cfg.tf}, cfg.common.tol);

  const auto filtered_values = [&](const BenchmarkResult& r) {
    std::vector<double> values;
    for (const BenchmarkRecord& rec : r.records)
      if (!rec.failed && (!cfg.nontrivial_only || rec.nontrivial))
        values.push_back(rec.success);
    return values;
  };
  const Histogram bqa_hist =
      do_bqa ? histogram_from_values(filtered_values(bqa_result), cfg.bin_width)
             : Histogram{};
  const Histogram qa_hist =
      do_qa ? histogram_from_values(filtered_values(qa_result), cfg.bin_width)
            : Histogram{};

  Output output(cfg.common.out);
  write_header(output.stream(), "random-bench",
               {{"n", cfg.n},
                {"seeds", cfg.seeds},
                {"tf", cfg.tf},
                {"a0", cfg.a0},
                {"b0", cfg.b0},
                {"sigma2", cfg.sigma2},
                {"gamma", cfg.gamma},
                {"protocol", cfg.protocol},
                {"method", cfg.method},
                {"bin_width", cfg.bin_width},
                {"nontrivial_only", cfg.nontrivial_only},
                {"tol", cfg.common.tol},
                {"bqa_failures", bqa_result.failure_count},
                {"qa_failures", qa_result.failure_count}},
               argv);
  output.stream() << "bin_lo,bin_hi";
  if (do_bqa) output.stream() << ",bqa_count";
  if (do_qa) output.stream() << ",qa_count";
  output.stream() << "\n";
  const std::size_t bins =
      do_bqa ? bqa_hist.counts.size() : qa_hist.counts.size();
  for (std::size_t b = 0; b < bins; ++b) {
    output.stream() << fmt(b * cfg.bin_width) << ","
                    << fmt(std::min(1.0, (b + 1) * cfg.bin_width));
    if (do_bqa) output.stream() << "," << bqa_hist.counts[b];
    if (do_qa) output.stream() << "," << qa_hist.counts[b];
    output.stream() << "\n";
  }

  if (!cfg.records_path.empty()) {
    BenchmarkResult merged;
    if (do_bqa) merged = bqa_result;
    if (do_qa)
      merged.records.insert(merged.records.end(), qa_result.records.begin(),
                            qa_result.records.end());
    write_records(cfg.records_path, merged);
  }
}

// ---------------------------------------------------------------------------
// phase: mean-field phase diagram in dimensionless A/Jz, B/Jz, with the
// protocol trajectory overlay (Fig. 10).

struct PhaseConfig {
  CommonFlags common;
  double a_max = 1.5;
  double b_min = -1.0;
  double b_max = 1.0;
  double grid = 0.01;
  double jz = 2.0;  // ring z = 2 with J = 1; only the overlay depends on it
  double a0 = 2.0;
  double b0 = 20.0;
  double sigma2 = 0.1;
  std::string protocol = "gauss";
  int overlay_samples = 201;
  std::string overlay_out;  // default: <out>.overlay.csv
};

const char* order_name(PhaseOrder order) {
  switch (order) {
    case PhaseOrder::Paramagnetic: return "para";
    case PhaseOrder::SecondOrderSide: return "second_order_side";
    case PhaseOrder::FirstOrderSide: return "first_order_side";
  }
  return "?";
}

void cmd_phase(const PhaseConfig& cfg, const std::vector<std::string>& argv) {
  if (!(cfg.grid > 0.0)) throw std::invalid_argument("phase: grid must be > 0");
  std::vector<double> a_grid, b_grid;
  for (double a = 0.0; a <= cfg.a_max + 1e-12; a += cfg.grid) a_grid.push_back(a);
  for (double b = cfg.b_min; b <= cfg.b_max + 1e-12; b += cfg.grid) b_grid.push_back(b);

  // m_s depends only on A/Jz and B/Jz, so solve at Jz = 1 on the
  // dimensionless grid; energyDensity comes out in units of Jz.
  const PhaseDiagram diagram = phase_diagram(a_grid, b_grid, 1.0);

  Output output(cfg.common.out);
  json params = {{"a_max", cfg.a_max},   {"b_min", cfg.b_min},
                 {"b_max", cfg.b_max},   {"grid", cfg.grid},
                 {"jz", cfg.jz},         {"a0", cfg.a0},
                 {"b0", cfg.b0},         {"sigma2", cfg.sigma2},
                 {"protocol", cfg.protocol}};
  write_header(output.stream(), "phase", params, argv);
  output.stream() << "A,B,m_s,order,energyDensity\n";
  for (const MeanFieldPoint& p : diagram.points)
    output.stream() << fmt(p.a) << "," << fmt(p.b) << "," << fmt(p.m_s) << ","
                    << order_name(p.order) << "," << fmt(p.energy_density) << "\n";

  const std::string overlay_path =
      !cfg.overlay_out.empty()
          ? cfg.overlay_out
          : (cfg.common.out == "-" ? "-" : cfg.common.out + ".overlay.csv");
  Output overlay(overlay_path);
  write_header(overlay.stream(), "phase-overlay", params, argv);
  overlay.stream() << "A_over_jz,B_over_jz\n";
  const BqaSchedule schedule{protocol_from_name(cfg.protocol), cfg.a0, cfg.sigma2,
                             cfg.b0, 1.0};
  for (const auto& [a, b] : protocol_overlay(schedule, cfg.jz, cfg.overlay_samples))
    overlay.stream() << fmt(a) << "," << fmt(b) << "\n";
}

// ---------------------------------------------------------------------------
// a0-sweep: final ferro-ring success vs A0 for the Gaussian and constant
// protocols (Fig. 11 conditions).

struct A0SweepConfig {
  CommonFlags common;
  int n = 4;
  double h_ratio = 0.1;
  double tf = 200.0;
  double b0 = 20.0;
  double sigma2 = 0.1;
  std::string a0_range = "0.25:2:8";  // A0/J, linear
};

void cmd_a0_sweep(const A0SweepConfig& cfg, const std::vector<std::string>& argv) {
  const ProblemInstance instance = ring_instance(cfg.n, 1.0, cfg.h_ratio);
  const GroundStateSolution oracle = brute_force_ground_states(instance);
  const std::vector<double> a0_values = parse_range(cfg.a0_range, /*log=*/false);

  std::vector<double> gauss_s(a0_values.size()), const_s(a0_values.size());
  parallel_for(a0_values.size() * 2, [&](std::size_t idx) {
    const std::size_t k = idx / 2;
    const auto protocol = idx % 2 == 0 ? BqaSchedule::Protocol::Gaussian
                                       : BqaSchedule::Protocol::Constant;
    const TimeDependentHamiltonian h = bqa_hamiltonian(
        instance, BqaSchedule{protocol, a0_values[k], cfg.sigma2, cfg.b0, cfg.tf});
    const double s =
        run_success(h, cfg.tf, cfg.common.tol, oracle, 2, nullptr);
    (idx % 2 == 0 ? gauss_s : const_s)[k] = s;
  });

  Output output(cfg.common.out);
  write_header(output.stream(), "a0-sweep",
               {{"n", cfg.n},
                {"h_ratio", cfg.h_ratio},
                {"tf", cfg.tf},
                {"b0", cfg.b0},
                {"sigma2", cfg.sigma2},
                {"a0_range", cfg.a0_range},
                {"tol", cfg.common.tol}},
               argv);
  output.stream() << "a0_over_j,gauss_success,const_success\n";
  for (std::size_t k = 0; k < a0_values.size(); ++k)
    output.stream() << fmt(a0_values[k]) << "," << fmt(gauss_s[k]) << ","
                    << fmt(const_s[k]) << "\n";
}

// ---------------------------------------------------------------------------
// nested-check: evolve one instance as qutrits and as nested qubit pairs and
// report the probability deviation and singlet leakage.

struct NestedCheckConfig {
  CommonFlags common;
  int n = 2;
  std::uint64_t seed = 1;
  std::string instance_path;  // overrides the random instance if set
  double tf = 20.0;
  double a0 = 2.0;
  double b0 = 20.0;
  double sigma2 = 0.1;
  std::string protocol = "gauss";
  int samples = 20;
};

void cmd_nested_check(const NestedCheckConfig& cfg,
                      const std::vector<std::string>& argv) {
  ProblemInstance instance;
  if (!cfg.instance_path.empty()) {
    instance = load_instance(cfg.instance_path);
  } else if (cfg.n == 1) {
    instance.n = 1;
    instance.fields = {SplitMix64(cfg.seed).uniform(-1.0, 1.0)};
  } else {
    instance = random_fully_connected(cfg.n, 1.0, cfg.seed);
  }
  const BqaSchedule schedule{protocol_from_name(cfg.protocol), cfg.a0, cfg.sigma2,
                             cfg.b0, cfg.tf};
  const TimeDependentHamiltonian h3 = bqa_hamiltonian(instance, schedule);
  const TimeDependentHamiltonian h4 = nest_hamiltonian(instance, schedule);
  const StateVector psi3 = basis_state(h3.basis, std::vector<int>(instance.n, 1));
  const StateVector psi4 = nested_initial_state(instance.n);

  // The comparison needs amplitudes (leakage is invisible in probabilities),
  // so evolve fresh to each sample time; the systems are tiny.
  struct Sample {
    double t, deviation, leakage;
  };
  std::vector<Sample> rows(cfg.samples);
  parallel_for(cfg.samples, [&](std::size_t k) {
    const double t = cfg.tf * (k + 1) / cfg.samples;
    const StateVector direct =
        evolve(h3, psi3, t, 2, cfg.common.tol).final_state;
    const StateVector nested =
        evolve(h4, psi4, t, 2, cfg.common.tol).final_state;
    const QutritProjection projection = project_to_qutrit(nested);
    const double dev = (basis_probabilities(projection.state) -
                        basis_probabilities(direct))
                           .cwiseAbs()
                           .maxCoeff();
    rows[k] = {t, dev, projection.leakage};
  });

  Output output(cfg.common.out);
  write_header(output.stream(), "nested-check",
               {{"n", instance.n},
                {"seed", cfg.seed},
                {"instance", cfg.instance_path},
                {"tf", cfg.tf},
                {"a0", cfg.a0},
                {"b0", cfg.b0},
                {"sigma2", cfg.sigma2},
                {"protocol", cfg.protocol},
                {"samples", cfg.samples},
                {"tol", cfg.common.tol}},
               argv);
  output.stream() << "t,max_prob_deviation,singlet_leakage\n";
  double worst_dev = 0.0, worst_leak = 0.0;
  for (const Sample& s : rows) {
    worst_dev = std::max(worst_dev, s.deviation);
    worst_leak = std::max(worst_leak, s.leakage);
    output.stream() << fmt(s.t) << "," << fmt(s.deviation) << "," << fmt(s.leakage)
                    << "\n";
  }
  output.stream() << "# max_prob_deviation=" << fmt(worst_dev)
                  << " max_singlet_leakage=" << fmt(worst_leak) << "\n";
}

// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args);

void cmd_replay(const std::string& path, const std::string& out_override) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("replay: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw ParseError("replay: " + path + " has no '# {json}' header line");
  json header;
  try {
    header = json::parse(line.substr(2));
  } catch (const json::parse_error& e) {
    throw ParseError("replay: " + path + ": " + e.what());
  }
  if (!header.contains("argv"))
    throw ParseError("replay: header has no argv field");
  std::vector<std::string> argv = header["argv"].get<std::vector<std::string>>();
  if (!out_override.empty()) {
    bool replaced = false;
    for (std::size_t k = 0; k + 1 < argv.size(); ++k)
      if (argv[k] == "--out") {
        argv[k + 1] = out_override;
        replaced = true;
      }
    if (!replaced) {
      argv.push_back("--out");
      argv.push_back(out_override);
    }
  }
  const int code = dispatch(argv);
  if (code != 0) throw std::runtime_error("replay: re-execution failed");
}

void add_common(CLI::App* cmd, CommonFlags& common, bool with_tol = true) {
  cmd->add_option("--out", common.out, "output path, or - for stdout");
  if (with_tol)
    cmd->add_option("--tol", common.tol, "integrator local error per unit time");
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"bifurcation-based quantum annealing simulator"};
  app.require_subcommand(1);

  LevelsConfig levels;
  auto* c_levels = app.add_subcommand("levels", "single-qutrit energy levels vs t/t_f");
  c_levels->add_option("--b0-ratio", levels.b0_ratio, "B0 / A0");
  c_levels->add_option("--sigma2", levels.sigma2, "Gaussian width parameter");
  c_levels->add_option("--protocol", levels.protocol, "gauss | const");
  c_levels->add_option("--points", levels.points, "number of t samples");
  add_common(c_levels, levels.common, false);

  SingleConfig single;
  auto* c_single = app.add_subcommand("single", "single-qutrit bifurcation dynamics");
  c_single->add_option("--a0tf", single.a0tf, "A0 t_f (dimensionless annealing time)");
  c_single->add_option("--b0-ratio", single.b0_ratio, "B0 / A0");
  c_single->add_option("--sigma2", single.sigma2, "Gaussian width parameter");
  c_single->add_option("--field", single.field, "longitudinal field h / A0");
  c_single->add_option("--protocol", single.protocol, "gauss | const");
  c_single->add_option("--sweep-tf", single.sweep, "A0 t_f sweep lo:hi:n (log spaced)");
  c_single->add_option("--points", single.points, "trajectory sample count");
  c_single->add_option("--start", single.start, "adiabatic | zero");
  add_common(c_single, single.common);

  FieldSweepConfig field_sweep;
  auto* c_field = app.add_subcommand("field-sweep", "final P(m) vs field h");
  c_field->add_option("--a0tf", field_sweep.a0tf, "A0 t_f");
  c_field->add_option("--b0-ratio", field_sweep.b0_ratio, "B0 / A0");
  c_field->add_option("--sigma2", field_sweep.sigma2, "Gaussian width parameter");
  c_field->add_option("--protocol", field_sweep.protocol, "gauss | const");
  c_field->add_option("--fields", field_sweep.fields, "h / A0 range lo:hi:n (linear)");
  c_field->add_option("--start", field_sweep.start, "adiabatic | zero");
  add_common(c_field, field_sweep.common);

  FerroConfig ferro;
  auto* c_ferro = app.add_subcommand("ferro", "ferromagnetic ring, BQA vs QA");
  c_ferro->add_option("--n", ferro.n, "ring size");
  c_ferro->add_option("--h-ratio", ferro.h_ratio, "h_i / J");
  c_ferro->add_option("--tf", ferro.tf, "J t_f");
  c_ferro->add_option("--a0", ferro.a0, "A0 / J");
  c_ferro->add_option("--b0", ferro.b0, "B0 / J");
  c_ferro->add_option("--sigma2", ferro.sigma2, "Gaussian width parameter");
  c_ferro->add_option("--gamma", ferro.gamma, "Gamma / J (QA)");
  c_ferro->add_option("--protocol", ferro.protocol, "gauss | const");
  c_ferro->add_option("--method", ferro.method, "bqa | qa | both");
  c_ferro->add_option("--sweep-tf", ferro.sweep, "J t_f sweep lo:hi:n (log spaced)");
  c_ferro->add_option("--points", ferro.points, "trajectory sample count");
  add_common(c_ferro, ferro.common);

  SamplingConfig sampling;
  auto* c_sampling =
      app.add_subcommand("sampling", "degenerate ground-state sampling vs t_f");
  c_sampling->add_option("--instance", sampling.instance_path, "instance JSON file")
      ->required();
  c_sampling->add_option("--sweep-tf", sampling.sweep, "J t_f sweep lo:hi:n");
  c_sampling->add_option("--a0", sampling.a0, "A0 / J");
  c_sampling->add_option("--b0", sampling.b0, "B0 / J");
  c_sampling->add_option("--sigma2", sampling.sigma2, "Gaussian width parameter");
  c_sampling->add_option("--gamma", sampling.gamma, "Gamma / J (QA)");
  c_sampling->add_option("--protocol", sampling.protocol, "gauss | const");
  add_common(c_sampling, sampling.common);

  RandomBenchConfig bench;
  auto* c_bench =
      app.add_subcommand("random-bench", "success histogram over random instances");
  c_bench->add_option("--n", bench.n, "spin count");
  c_bench->add_option("--seeds", bench.seeds, "seed range a..b");
  c_bench->add_option("--tf", bench.tf, "J t_f");
  c_bench->add_option("--a0", bench.a0, "A0 / J");
  c_bench->add_option("--b0", bench.b0, "B0 / J");
  c_bench->add_option("--sigma2", bench.sigma2, "Gaussian width parameter");
  c_bench->add_option("--gamma", bench.gamma, "Gamma / J (QA)");
  c_bench->add_option("--protocol", bench.protocol, "gauss | const");
  c_bench->add_option("--method", bench.method, "bqa | qa | both");
  c_bench->add_option("--bin-width", bench.bin_width, "histogram bin width");
  c_bench->add_flag("--nontrivial-only", bench.nontrivial_only,
                    "histogram only instances whose solution differs from sign(h)");
  c_bench->add_option("--records", bench.records_path, "JSON-lines records path");
  add_common(c_bench, bench.common);

  PhaseConfig phase;
  auto* c_phase = app.add_subcommand("phase", "mean-field phase diagram");
  c_phase->add_option("--a-max", phase.a_max, "max A/Jz");
  c_phase->add_option("--b-min", phase.b_min, "min B/Jz");
  c_phase->add_option("--b-max", phase.b_max, "max B/Jz");
  c_phase->add_option("--grid", phase.grid, "grid spacing in A/Jz and B/Jz");
  c_phase->add_option("--jz", phase.jz, "Jz normalization for the overlay");
  c_phase->add_option("--a0", phase.a0, "protocol A0");
  c_phase->add_option("--b0", phase.b0, "protocol B0");
  c_phase->add_option("--sigma2", phase.sigma2, "Gaussian width parameter");
  c_phase->add_option("--protocol", phase.protocol, "gauss | const");
  c_phase->add_option("--overlay-out", phase.overlay_out, "overlay CSV path");
  add_common(c_phase, phase.common, false);

  A0SweepConfig a0_sweep;
  auto* c_a0 = app.add_subcommand("a0-sweep", "ferro-ring success vs A0, both protocols");
  c_a0->add_option("--n", a0_sweep.n, "ring size");
  c_a0->add_option("--h-ratio", a0_sweep.h_ratio, "h_i / J");
  c_a0->add_option("--tf", a0_sweep.tf, "J t_f");
  c_a0->add_option("--b0", a0_sweep.b0, "B0 / J");
  c_a0->add_option("--sigma2", a0_sweep.sigma2, "Gaussian width parameter");
  c_a0->add_option("--a0-range", a0_sweep.a0_range, "A0/J range lo:hi:n (linear)");
  add_common(c_a0, a0_sweep.common);

  NestedCheckConfig nested;
  auto* c_nested =
      app.add_subcommand("nested-check", "qutrit vs nested two-qubit equivalence");
  c_nested->add_option("--n", nested.n, "logical qutrit count");
  c_nested->add_option("--seed", nested.seed, "random instance seed");
  c_nested->add_option("--instance", nested.instance_path, "instance JSON file");
  c_nested->add_option("--tf", nested.tf, "J t_f");
  c_nested->add_option("--a0", nested.a0, "A0 / J");
  c_nested->add_option("--b0", nested.b0, "B0 / J");
  c_nested->add_option("--sigma2", nested.sigma2, "Gaussian width parameter");
  c_nested->add_option("--protocol", nested.protocol, "gauss | const");
  c_nested->add_option("--samples", nested.samples, "comparison sample count");
  add_common(c_nested, nested.common);

  std::string replay_path, replay_out;
  auto* c_replay = app.add_subcommand("replay", "re-execute a run from its CSV header");
  c_replay->add_option("file", replay_path, "CSV file with a '# {json}' header")
      ->required();
  c_replay->add_option("--out", replay_out, "override the output path");

  try {
    // CLI11's vector overload wants the arguments reversed.
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (c_levels->parsed()) cmd_levels(levels, args);
  if (c_single->parsed()) cmd_single(single, args);
  if (c_field->parsed()) cmd_field_sweep(field_sweep, args);
  if (c_ferro->parsed()) cmd_ferro(ferro, args);
  if (c_sampling->parsed()) cmd_sampling(sampling, args);
  if (c_bench->parsed()) cmd_random_bench(bench, args);
  if (c_phase->parsed()) cmd_phase(phase, args);
  if (c_a0->parsed()) cmd_a0_sweep(a0_sweep, args);
  if (c_nested->parsed()) cmd_nested_check(nested, args);
  if (c_replay->parsed()) cmd_replay(replay_path, replay_out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << " (t=" << e.t_reached
              << ", h=" << e.last_step << ", steps=" << e.steps_taken << ")\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bqa
