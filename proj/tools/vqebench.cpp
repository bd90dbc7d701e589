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

// vqebench: instance generation, exact solving, experiment sweeps and reports.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vqebench/exact.hpp"
#include "vqebench/harness.hpp"
#include "vqebench/profiles.hpp"

namespace {

using nlohmann::json;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << j.dump(2) << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

struct GenerateArgs {
  std::string problem_class;
  int qubits = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string hamiltonian_out;
};

int cmd_generate(const GenerateArgs& a) {
  const auto inst = vqeb::gen_instance(vqeb::parse_problem_class(a.problem_class), a.qubits, a.seed);
  emit(inst, a.out);
  if (!a.hamiltonian_out.empty()) emit(vqeb::qubo_to_ising(vqeb::encode(inst)), a.hamiltonian_out);
  return 0;
}

struct SolveArgs {
  std::string instance;
  std::string hamiltonian;
  std::string out;
  int max_qubits = vqeb::kDefaultMaxQubits;
};

int cmd_solve(const SolveArgs& a) {
  json result;
  if (!a.instance.empty()) {
    const auto inst = vqeb::instance_from_json(read_json(a.instance));
    const auto h = vqeb::qubo_to_ising(vqeb::encode(inst));
    const auto sol = vqeb::solve(h, a.max_qubits);
    result = sol;
    result["value_distribution"] = vqeb::value_distribution_stats(sol, inst, h);
  } else {
    const auto h = vqeb::hamiltonian_from_json(read_json(a.hamiltonian));
    const auto sol = vqeb::solve(h, a.max_qubits);
    result = sol;
    result["value_distribution"] = vqeb::value_distribution_stats(sol);
  }
  emit(result, a.out);
  return 0;
}

struct RunArgs {
  std::string config;
  std::string output_dir;
  int workers = 0;
  bool quiet = false;
};

int cmd_run(const RunArgs& a) {
  auto cfg = vqeb::load_config(a.config);
  if (!a.output_dir.empty()) cfg.output_dir = a.output_dir;
  if (a.workers > 0) cfg.workers = a.workers;
  if (cfg.output_dir.empty()) throw std::runtime_error("no output_dir in config or on the command line");
  std::filesystem::create_directories(cfg.output_dir);
  {
    auto f = open_out((cfg.output_dir / "config.json").string());
    f << vqeb::config_to_json(cfg).dump(2) << '\n';
  }
  std::size_t done = 0;
  const auto result = vqeb::run_experiment(cfg, [&](const std::string& cell) {
    ++done;
    if (!a.quiet) std::cerr << "[" << done << "] " << cell << '\n';
  });
  std::cout << result.records.size() << " records, " << result.errors.size() << " errors in "
            << cfg.output_dir.string() << '\n';
  for (const auto& e : result.errors) std::cerr << "error: " << e.cell << ": " << e.message << '\n';
  return result.errors.empty() ? 0 : 2;
}

struct ReportArgs {
  std::string records;
  std::string metric = "convergence";
  double tau = 0.1;
  double rho = 0.5;
  std::string out;
  std::string class_filter;
  bool by_class = false;
  int grid_max = vqeb::kDefaultGridMax;
};

int cmd_report(const ReportArgs& a) {
  auto all = vqeb::load_records(a.records);
  std::optional<vqeb::ProblemClass> only;
  if (!a.class_filter.empty()) only = vqeb::parse_problem_class(a.class_filter);
  const auto by = a.by_class ? vqeb::GroupBy::OptimizerAndClass : vqeb::GroupBy::Optimizer;

  std::map<std::string, std::vector<vqeb::RunRecord>> groups;
  for (auto& r : all) {
    if (only && r.problem_class != *only) continue;
    const auto label = vqeb::group_label(r, by);
    groups[label].push_back(std::move(r));
  }
  if (groups.empty()) throw std::runtime_error("no records selected under " + a.records);

  std::vector<std::string> labels;
  json meta{{"metric", a.metric}, {"records", a.records}, {"grid_max", a.grid_max}};
  json series = json::object();
  auto out = open_out(a.out);
  if (a.metric == "ratio") {
    std::vector<vqeb::RatioCurve> curves;
    for (const auto& [label, recs] : groups) {
      labels.push_back(label);
      curves.push_back(vqeb::approx_ratio_profile(recs, a.grid_max));
      series[label] = {{"instances", recs.size()}};
    }
    vqeb::write_ratio_csv(out, labels, curves);
  } else if (a.metric == "convergence" || a.metric == "sampling") {
    const bool conv = a.metric == "convergence";
    std::vector<vqeb::ProfileCurve> curves;
    for (const auto& [label, recs] : groups) {
      labels.push_back(label);
      curves.push_back(conv ? vqeb::convergence_profile(recs, a.tau, a.grid_max)
                            : vqeb::sampling_profile(recs, a.rho, a.grid_max));
      series[label] = {{"instances", curves.back().instances}};
      if (conv) series[label]["lucky_starts"] = curves.back().lucky_starts;
    }
    vqeb::write_profile_csv(out, labels, curves);
    if (conv) {
      meta["tau"] = a.tau;
      meta["lucky_start_policy"] = "converged_at_0";
    } else {
      meta["rho"] = a.rho;
    }
  } else {
    throw std::runtime_error("unknown metric '" + a.metric + "'");
  }
  meta["series"] = std::move(series);
  auto meta_file = open_out(a.out + ".meta.json");
  meta_file << meta.dump(2) << '\n';
  return 0;
}

struct SpectrumArgs {
  std::string config;
  std::string out;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const auto cfg = vqeb::load_config(a.config);
  const auto rows = vqeb::spectrum_report(cfg);
  if (a.out.empty() || a.out == "-") {
    vqeb::write_spectrum_csv(std::cout, rows);
  } else {
    auto f = open_out(a.out);
    vqeb::write_spectrum_csv(f, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark classical optimizers inside variational quantum eigensolvers"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a random problem instance");
  g->add_option("--class", gen.problem_class, "stableset|max3sat|partition|maxcut|marketsplit|tsp")->required();
  g->add_option("--qubits,-q", gen.qubits, "Number of qubits")->required();
  g->add_option("--seed,-s", gen.seed, "Instance seed");
  g->add_option("--out,-o", gen.out, "Instance JSON path (default stdout)");
  g->add_option("--hamiltonian", gen.hamiltonian_out, "Also write the Ising Hamiltonian JSON here");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve-exact", "Brute-force ground state of an instance or Hamiltonian");
  auto* inst_opt = s->add_option("--instance", solve.instance, "Instance JSON");
  auto* ham_opt = s->add_option("--hamiltonian", solve.hamiltonian, "Hamiltonian JSON");
  inst_opt->excludes(ham_opt);
  s->add_option("--out,-o", solve.out, "Output JSON path (default stdout)");
  s->add_option("--max-qubits", solve.max_qubits, "Capacity limit for the dense diagonal");
  s->callback([&] {
    if (solve.instance.empty() && solve.hamiltonian.empty()) {
      throw CLI::RequiredError("--instance or --hamiltonian");
    }
  });

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run an experiment sweep and persist JSONL records");
  r->add_option("--config,-c", run.config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  r->add_option("--output-dir", run.output_dir, "Override output_dir");
  r->add_option("--workers,-j", run.workers, "Override worker count");
  r->add_flag("--quiet", run.quiet, "No per-cell progress");

  ReportArgs rep;
  auto* p = app.add_subcommand("report", "Build a profile CSV from persisted records");
  p->add_option("--records", rep.records, "Directory of record files")->required()->check(CLI::ExistingDirectory);
  p->add_option("--metric", rep.metric, "convergence|ratio|sampling")
      ->check(CLI::IsMember({"convergence", "ratio", "sampling"}));
  p->add_option("--tau", rep.tau, "Convergence tolerance");
  p->add_option("--rho", rep.rho, "Sampling probability threshold");
  p->add_option("--out,-o", rep.out, "CSV path")->required();
  p->add_option("--class", rep.class_filter, "Only records of this class");
  p->add_flag("--by-class", rep.by_class, "One series per class and optimizer");
  p->add_option("--grid-max", rep.grid_max, "Last normalized iteration on the grid");

  SpectrumArgs spec;
  auto* sp = app.add_subcommand("spectrum", "Hamiltonian statistics per class and size");
  sp->add_option("--config,-c", spec.config, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  sp->add_option("--out,-o", spec.out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) return cmd_generate(gen);
    if (s->parsed()) return cmd_solve(solve);
    if (r->parsed()) return cmd_run(run);
    if (p->parsed()) return cmd_report(rep);
    if (sp->parsed()) return cmd_spectrum(spec);
  } catch (const std::exception& e) {
    std::cerr << "vqebench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
