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

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "vqebench/harness.hpp"
#include "vqebench/rng.hpp"

namespace vqeb {

PreparedInstance prepare_instance(ProblemClass c, int q, std::uint64_t seed) {
  ProblemInstance inst = gen_instance(c, q, seed);
  DiagonalHamiltonian h = qubo_to_ising(encode(inst));
  ExactSolution exact = solve(h);
  return {std::move(inst), std::move(h), std::move(exact)};
}

std::vector<double> starting_point(std::uint64_t seed, std::size_t n, double half_width) {
  Rng rng(derive_seed(seed, "start"));
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform(-half_width, half_width);
  return x;
}

RunRecord run_cell(const PreparedInstance& prepared, const FormSpec& form,
                   const OptimizerConfig& optimizer, const ExperimentConfig& cfg) {
  const int q = prepared.instance.num_qubits;
  const VariationalForm vf = form.on(q);
  vf.validate();
  const std::size_t n = vf.parameter_count();

  OptimizerConfig oc = optimizer;
  if (!oc.budget) oc.budget = cfg.budget_factor * (n + 1);
  oc.lower.assign(n, -cfg.box_half_width);
  oc.upper.assign(n, cfg.box_half_width);
  oc.seed = derive_seed(prepared.instance.seed, "optimizer");
  oc.store_points = cfg.store_theta;

  RunRecord r;
  r.problem_class = prepared.instance.problem_class;
  r.num_qubits = q;
  r.seed = prepared.instance.seed;
  r.form = form;
  r.algorithm = oc.algorithm;
  r.num_params = n;
  r.budget = *oc.budget;
  r.optimum = prepared.exact.optimum;
  r.optimal_set = prepared.exact.optimal_set;

  const auto diag = prepared.hamiltonian.diagonal();
  const std::span<const std::uint64_t> optimal(prepared.exact.optimal_set);
  double last_prob = 0.0;
  Objective obj;
  obj.dimension = n;
  obj.evaluate = [&](std::span<const double> theta) {
    const Statevector psi = prepare_state(vf, theta);
    last_prob = prob_optimal(psi, optimal);
    return energy(psi, diag);
  };
  obj.on_evaluation = [&](const Evaluation& e) {
    r.energies.push_back(e.value);
    r.prob_optimal.push_back(last_prob);
    if (cfg.store_theta) r.thetas.push_back(e.point);
  };

  const auto x0 = starting_point(prepared.instance.seed, n, cfg.box_half_width);
  const RunTrace trace = minimize(obj, x0, oc);
  r.initial_value = r.energies.front();
  r.status = to_string(trace.status);
  return r;
}

namespace {

struct Group {
  ProblemClass problem_class;
  int num_qubits;
  std::uint64_t seed;
};

struct CellPlan {
  const FormSpec* form;
  const OptimizerConfig* optimizer;
  std::string name;
};

std::string cell_name(const Group& g, const FormSpec& f, const OptimizerConfig& o) {
  RunRecord probe;
  probe.problem_class = g.problem_class;
  probe.num_qubits = g.num_qubits;
  probe.seed = g.seed;
  probe.form = f;
  probe.algorithm = o.algorithm;
  return probe.cell_name();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::function<void(const std::string&)>& progress) {
  std::vector<Group> groups;
  for (auto c : cfg.classes) {
    for (int q : cfg.qubits) {
      if (!class_admits(c, q)) continue;
      for (auto s : cfg.seeds) groups.push_back({c, q, s});
    }
  }

  const std::filesystem::path record_dir = cfg.output_dir.empty() ? std::filesystem::path{}
                                                                   : cfg.output_dir / "records";
  if (!record_dir.empty()) std::filesystem::create_directories(record_dir);

  std::vector<std::vector<RunRecord>> per_group(groups.size());
  std::vector<CellError> errors;
  std::mutex mu;

  auto report_error = [&](const std::string& cell, const std::string& msg) {
    std::lock_guard lock(mu);
    errors.push_back({cell, msg});
    if (!cfg.output_dir.empty()) {
      std::ofstream out(cfg.output_dir / "errors.jsonl", std::ios::app);
      out << nlohmann::json{{"cell", cell}, {"error", msg}}.dump() << '\n';
    }
  };
  auto notify = [&](const std::string& cell) {
    if (!progress) return;
    std::lock_guard lock(mu);
    progress(cell);
  };

  auto run_group = [&](std::size_t gi) {
    const Group& g = groups[gi];
    std::vector<CellPlan> cells;
    for (const auto& f : cfg.forms) {
      for (const auto& o : cfg.optimizers) cells.push_back({&f, &o, cell_name(g, f, o)});
    }
    std::optional<PreparedInstance> prepared;
    std::string prepare_error;
    auto& out = per_group[gi];
    for (const auto& cell : cells) {
      const auto path = record_dir.empty() ? std::filesystem::path{} : record_dir / (cell.name + ".jsonl");
      try {
        if (cfg.resume && !path.empty() && std::filesystem::exists(path)) {
          out.push_back(load_record(path));
          notify(cell.name);
          continue;
        }
        if (!prepared && prepare_error.empty()) {
          try {
            prepared = prepare_instance(g.problem_class, g.num_qubits, g.seed);
          } catch (const std::exception& e) {
            prepare_error = e.what();
          }
        }
        if (!prepared) throw std::runtime_error(prepare_error);
        RunRecord r = run_cell(*prepared, *cell.form, *cell.optimizer, cfg);
        if (!path.empty()) save_record_atomic(path, r);
        out.push_back(std::move(r));
        notify(cell.name);
      } catch (const std::exception& e) {
        report_error(cell.name, e.what());
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.workers)), groups.size());
  if (workers <= 1) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi) run_group(gi);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t gi = next++; gi < groups.size(); gi = next++) run_group(gi);
      });
    }
  }

  ExperimentResult result;
  for (auto& v : per_group) {
    for (auto& r : v) result.records.push_back(std::move(r));
  }
  result.errors = std::move(errors);
  std::sort(result.errors.begin(), result.errors.end(),
            [](const CellError& a, const CellError& b) { return a.cell < b.cell; });
  return result;
}

}  // namespace vqeb
