// Copyright 2026 The vqebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vqebench/exact.hpp"
#include "vqebench/ising.hpp"
#include "vqebench/optim.hpp"
#include "vqebench/problems.hpp"
#include "vqebench/simulator.hpp"

namespace vqeb {

struct FormSpec {
  int layers = 2;
  Entangler entangler = Entangler::FullCZ;

  VariationalForm on(int num_qubits) const { return {num_qubits, layers, entangler}; }
};

struct RandomZzSpec {
  std::vector<int> qubits;
  std::vector<int> pairs;
  std::vector<WeightMode> weights;
};

/// One experiment sweep: classes x qubits x forms x optimizers x seeds. Every
/// optimizer receives the same seed list, hence the same instances and the
/// same starting points.
struct ExperimentConfig {
  std::vector<ProblemClass> classes;
  std::vector<int> qubits;
  std::vector<FormSpec> forms;
  std::vector<OptimizerConfig> optimizers;
  std::vector<std::uint64_t> seeds;
  std::size_t budget_factor = 100;  // budget = factor * (n + 1) unless set per optimizer
  double box_half_width = std::numbers::pi;
  std::filesystem::path output_dir;  // empty: keep records in memory only
  bool store_theta = false;
  bool resume = true;
  int workers = 1;
  std::optional<RandomZzSpec> random_zz;
};

/// Parses the JSON config. Unknown keys anywhere are rejected with
/// std::invalid_argument naming the key.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Classes whose size rule admits q (Max3SAT: q % 3 == 0, TSP: perfect square).
bool class_admits(ProblemClass c, int q);

struct RunRecord {
  ProblemClass problem_class = ProblemClass::MaxCut;
  int num_qubits = 0;
  std::uint64_t seed = 0;
  FormSpec form;
  Algorithm algorithm = Algorithm::LinearModelTrust;
  std::size_t num_params = 0;
  std::size_t budget = 0;
  double initial_value = 0.0;  // energy at the starting point
  double optimum = 0.0;        // exact ground-state energy
  std::vector<std::uint64_t> optimal_set;
  std::vector<double> energies;      // entry k-1 is evaluation k
  std::vector<double> prob_optimal;  // same indexing
  std::vector<std::vector<double>> thetas;  // empty unless stored
  std::string status;

  /// "<class>_q<q>_<form>_<optimizer>_s<seed>".
  std::string cell_name() const;
};

struct CellError {
  std::string cell;
  std::string message;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<CellError> errors;
};

/// Everything one instance contributes to its cells.
struct PreparedInstance {
  ProblemInstance instance;
  DiagonalHamiltonian hamiltonian;
  ExactSolution exact;
};

PreparedInstance prepare_instance(ProblemClass c, int q, std::uint64_t seed);

/// Uniform start point in [-half_width, half_width]^n drawn from the seed.
std::vector<double> starting_point(std::uint64_t seed, std::size_t n, double half_width);

/// Runs one optimizer on one instance with one form.
RunRecord run_cell(const PreparedInstance& prepared, const FormSpec& form,
                   const OptimizerConfig& optimizer, const ExperimentConfig& cfg);

/// Runs the whole sweep. Cells failing with an exception are recorded in
/// errors and skipped. With an output_dir, each finished cell is written
/// atomically to <output_dir>/records/<cell>.jsonl; with resume, existing
/// cell files are loaded instead of recomputed.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::function<void(const std::string&)>& progress = {});

// Record files: line 1 is metadata, then one {"k", "energy", "prob"[, "theta"]}
// line per evaluation.
void write_record(std::ostream& os, const RunRecord& r);
RunRecord read_record(std::istream& is);
void save_record_atomic(const std::filesystem::path& path, const RunRecord& r);
RunRecord load_record(const std::filesystem::path& path);
/// Loads every *.jsonl under dir (recursively), sorted by file name.
std::vector<RunRecord> load_records(const std::filesystem::path& dir);

}  // namespace vqeb
