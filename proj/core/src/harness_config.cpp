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

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vqebench/harness.hpp"

namespace vqeb {
namespace {

using nlohmann::json;

void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw std::invalid_argument(std::string(where) + " must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) {
      throw std::invalid_argument("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

template <typename T>
void read_if(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

std::vector<int> parse_qubits(const json& j) {
  std::vector<int> qs;
  if (j.is_number_integer()) {
    qs.push_back(j.get<int>());
  } else if (j.is_array()) {
    qs = j.get<std::vector<int>>();
  } else {
    check_keys(j, "qubits", {"min", "max"});
    const int lo = j.at("min").get<int>();
    const int hi = j.at("max").get<int>();
    if (lo > hi) throw std::invalid_argument("qubits.min exceeds qubits.max");
    for (int q = lo; q <= hi; ++q) qs.push_back(q);
  }
  return qs;
}

FormSpec parse_form(const json& j) {
  FormSpec f;
  check_keys(j, "form", {"layers", "entangler"});
  read_if(j, "layers", f.layers);
  if (j.contains("entangler")) f.entangler = parse_entangler(j.at("entangler").get<std::string>());
  f.on(1).validate();
  return f;
}

void parse_options(const json& j, OptimizerConfig& c) {
  const std::string where = "options of " + to_string(c.algorithm);
  switch (c.algorithm) {
    case Algorithm::FdLbfgs:
      check_keys(j, where, {"memory", "fd_step", "armijo_c1", "backtrack", "min_step"});
      read_if(j, "memory", c.lbfgs.memory);
      read_if(j, "fd_step", c.lbfgs.fd_step);
      read_if(j, "armijo_c1", c.lbfgs.armijo_c1);
      read_if(j, "backtrack", c.lbfgs.backtrack);
      read_if(j, "min_step", c.lbfgs.min_step);
      break;
    case Algorithm::LinearModelTrust:
      check_keys(j, where, {"initial_radius", "final_radius", "shrink"});
      read_if(j, "initial_radius", c.linear_trust.initial_radius);
      read_if(j, "final_radius", c.linear_trust.final_radius);
      read_if(j, "shrink", c.linear_trust.shrink);
      break;
    case Algorithm::PowellCD:
      check_keys(j, where, {"line_tol", "min_step", "initial_bracket"});
      read_if(j, "line_tol", c.powell.line_tol);
      read_if(j, "min_step", c.powell.min_step);
      read_if(j, "initial_bracket", c.powell.initial_bracket);
      break;
    case Algorithm::Spsa:
      check_keys(j, where,
                 {"c", "alpha", "gamma", "stability_fraction", "calibration_evals", "target_step"});
      read_if(j, "c", c.spsa.c);
      read_if(j, "alpha", c.spsa.alpha);
      read_if(j, "gamma", c.spsa.gamma);
      read_if(j, "stability_fraction", c.spsa.stability_fraction);
      read_if(j, "calibration_evals", c.spsa.calibration_evals);
      read_if(j, "target_step", c.spsa.target_step);
      break;
    case Algorithm::RbfGlobal:
      check_keys(j, where,
                 {"candidates_per_dim", "max_candidates", "max_fit_points", "weight_cycle",
                  "local_scales", "uniform_fraction"});
      read_if(j, "candidates_per_dim", c.rbf.candidates_per_dim);
      read_if(j, "max_candidates", c.rbf.max_candidates);
      read_if(j, "max_fit_points", c.rbf.max_fit_points);
      read_if(j, "weight_cycle", c.rbf.weight_cycle);
      if (j.contains("local_scales")) {
        const auto v = j.at("local_scales").get<std::vector<double>>();
        if (v.size() != c.rbf.local_scales.size()) {
          throw std::invalid_argument("rbf local_scales needs exactly 3 entries");
        }
        std::copy(v.begin(), v.end(), c.rbf.local_scales.begin());
      }
      read_if(j, "uniform_fraction", c.rbf.uniform_fraction);
      break;
  }
}

OptimizerConfig parse_optimizer(const json& j) {
  OptimizerConfig c;
  if (j.is_string()) {
    c.algorithm = parse_algorithm(j.get<std::string>());
    return c;
  }
  check_keys(j, "optimizer", {"algorithm", "budget", "options"});
  c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  if (j.contains("budget")) c.budget = j.at("budget").get<std::size_t>();
  if (j.contains("options")) parse_options(j.at("options"), c);
  return c;
}

json options_to_json(const OptimizerConfig& c) {
  switch (c.algorithm) {
    case Algorithm::FdLbfgs:
      return {{"memory", c.lbfgs.memory},
              {"fd_step", c.lbfgs.fd_step},
              {"armijo_c1", c.lbfgs.armijo_c1},
              {"backtrack", c.lbfgs.backtrack},
              {"min_step", c.lbfgs.min_step}};
    case Algorithm::LinearModelTrust:
      return {{"initial_radius", c.linear_trust.initial_radius},
              {"final_radius", c.linear_trust.final_radius},
              {"shrink", c.linear_trust.shrink}};
    case Algorithm::PowellCD:
      return {{"line_tol", c.powell.line_tol},
              {"min_step", c.powell.min_step},
              {"initial_bracket", c.powell.initial_bracket}};
    case Algorithm::Spsa:
      return {{"c", c.spsa.c},
              {"alpha", c.spsa.alpha},
              {"gamma", c.spsa.gamma},
              {"stability_fraction", c.spsa.stability_fraction},
              {"calibration_evals", c.spsa.calibration_evals},
              {"target_step", c.spsa.target_step}};
    case Algorithm::RbfGlobal:
      return {{"candidates_per_dim", c.rbf.candidates_per_dim},
              {"max_candidates", c.rbf.max_candidates},
              {"max_fit_points", c.rbf.max_fit_points},
              {"weight_cycle", c.rbf.weight_cycle},
              {"local_scales", c.rbf.local_scales},
              {"uniform_fraction", c.rbf.uniform_fraction}};
  }
  return json::object();
}

}  // namespace

bool class_admits(ProblemClass c, int q) {
  switch (c) {
    case ProblemClass::Max3SAT:
      return q % 3 == 0;
    case ProblemClass::TSP: {
      const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
      return r * r == q;
    }
    default:
      return true;
  }
}

ExperimentConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"classes", "qubits", "forms", "optimizers", "seeds", "budget_factor", "box_half_width",
              "output_dir", "store_theta", "resume", "workers", "random_zz"});
  ExperimentConfig cfg;

  if (j.contains("classes")) {
    for (const auto& c : j.at("classes")) cfg.classes.push_back(parse_problem_class(c.get<std::string>()));
  } else {
    cfg.classes.assign(kAllProblemClasses.begin(), kAllProblemClasses.end());
  }

  if (j.contains("qubits")) {
    cfg.qubits = parse_qubits(j.at("qubits"));
  } else {
    for (int q = 6; q <= 18; ++q) cfg.qubits.push_back(q);
  }
  for (int q : cfg.qubits) {
    if (q < 1) throw std::invalid_argument("qubit counts must be positive");
  }

  if (j.contains("forms")) {
    for (const auto& f : j.at("forms")) cfg.forms.push_back(parse_form(f));
  } else {
    cfg.forms.push_back(FormSpec{});
  }

  if (j.contains("optimizers")) {
    for (const auto& o : j.at("optimizers")) cfg.optimizers.push_back(parse_optimizer(o));
  } else {
    for (auto a : kAllAlgorithms) {
      OptimizerConfig c;
      c.algorithm = a;
      cfg.optimizers.push_back(c);
    }
  }

  if (j.contains("seeds")) {
    const auto& s = j.at("seeds");
    if (s.is_number_integer()) {
      const auto count = s.get<std::int64_t>();
      if (count < 1) throw std::invalid_argument("seeds count must be positive");
      for (std::int64_t i = 0; i < count; ++i) cfg.seeds.push_back(static_cast<std::uint64_t>(i));
    } else {
      cfg.seeds = s.get<std::vector<std::uint64_t>>();
    }
  } else {
    for (std::uint64_t i = 0; i < 20; ++i) cfg.seeds.push_back(i);
  }
  if (cfg.seeds.empty()) throw std::invalid_argument("seed list is empty");

  read_if(j, "budget_factor", cfg.budget_factor);
  if (cfg.budget_factor < 2) throw std::invalid_argument("budget_factor must be at least 2");
  read_if(j, "box_half_width", cfg.box_half_width);
  if (!(cfg.box_half_width > 0.0)) throw std::invalid_argument("box_half_width must be positive");
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  read_if(j, "store_theta", cfg.store_theta);
  read_if(j, "resume", cfg.resume);
  read_if(j, "workers", cfg.workers);
  if (cfg.workers < 1) throw std::invalid_argument("workers must be at least 1");

  if (j.contains("random_zz")) {
    const auto& r = j.at("random_zz");
    check_keys(r, "random_zz", {"qubits", "pairs", "weights"});
    RandomZzSpec spec;
    spec.qubits = parse_qubits(r.at("qubits"));
    spec.pairs = r.at("pairs").get<std::vector<int>>();
    if (r.contains("weights")) {
      for (const auto& w : r.at("weights")) spec.weights.push_back(parse_weight_mode(w.get<std::string>()));
    } else {
      spec.weights = {WeightMode::Discrete, WeightMode::Continuous};
    }
    cfg.random_zz = std::move(spec);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_config(json::parse(in));
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  json classes = json::array();
  for (auto c : cfg.classes) classes.push_back(to_string(c));
  j["classes"] = std::move(classes);
  j["qubits"] = cfg.qubits;
  json forms = json::array();
  for (const auto& f : cfg.forms) forms.push_back({{"layers", f.layers}, {"entangler", to_string(f.entangler)}});
  j["forms"] = std::move(forms);
  json opts = json::array();
  for (const auto& o : cfg.optimizers) {
    json e{{"algorithm", to_string(o.algorithm)}, {"options", options_to_json(o)}};
    if (o.budget) e["budget"] = *o.budget;
    opts.push_back(std::move(e));
  }
  j["optimizers"] = std::move(opts);
  j["seeds"] = cfg.seeds;
  j["budget_factor"] = cfg.budget_factor;
  j["box_half_width"] = cfg.box_half_width;
  j["output_dir"] = cfg.output_dir.string();
  j["store_theta"] = cfg.store_theta;
  j["resume"] = cfg.resume;
  j["workers"] = cfg.workers;
  if (cfg.random_zz) {
    json w = json::array();
    for (auto m : cfg.random_zz->weights) w.push_back(to_string(m));
    j["random_zz"] = {{"qubits", cfg.random_zz->qubits}, {"pairs", cfg.random_zz->pairs}, {"weights", w}};
  }
  return j;
}

}  // namespace vqeb
