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

#include <nlohmann/json.hpp>

#include "vqebench/problems.hpp"

namespace vqeb {
namespace {

nlohmann::json edges_to_json(const std::vector<WeightedEdge>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : edges) out.push_back({e.u, e.v, e.w});
  return out;
}

std::vector<WeightedEdge> edges_from_json(const nlohmann::json& j) {
  std::vector<WeightedEdge> edges;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("edge must be [u, v, w]");
    edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
  }
  return edges;
}

}  // namespace

void to_json(nlohmann::json& j, const ProblemInstance& inst) {
  j = {{"class", to_string(inst.problem_class)},
       {"qubits", inst.num_qubits},
       {"seed", inst.seed}};
  switch (inst.problem_class) {
    case ProblemClass::StableSet:
    case ProblemClass::MaxCut: {
      const auto& g = std::get<Graph>(inst.payload);
      j["nodes"] = g.num_nodes;
      j["edges"] = edges_to_json(g.edges);
      break;
    }
    case ProblemClass::Max3SAT: {
      const auto& f = std::get<CnfFormula>(inst.payload);
      j["num_vars"] = f.num_vars;
      j["clauses"] = f.clauses;
      j["duplicate_clauses_allowed"] = f.duplicate_clauses_allowed;
      break;
    }
    case ProblemClass::Partition:
      j["numbers"] = std::get<NumberSet>(inst.payload).values;
      break;
    case ProblemClass::MarketSplit: {
      const auto& d = std::get<MarketSplitData>(inst.payload);
      j["rows"] = d.rows;
      j["cols"] = d.cols;
      j["A"] = d.A;
      j["b"] = d.b;
      break;
    }
    case ProblemClass::TSP: {
      const auto& d = std::get<TspData>(inst.payload);
      std::vector<WeightedEdge> arcs;
      for (int u = 0; u < d.num_nodes; ++u)
        for (int v = 0; v < d.num_nodes; ++v)
          if (u != v) arcs.push_back({u, v, d.w(u, v)});
      j["nodes"] = d.num_nodes;
      j["edges"] = edges_to_json(arcs);
      break;
    }
  }
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  ProblemInstance inst;
  inst.problem_class = parse_problem_class(j.at("class").get<std::string>());
  inst.num_qubits = j.at("qubits").get<int>();
  inst.seed = j.value("seed", std::uint64_t{0});
  switch (inst.problem_class) {
    case ProblemClass::StableSet:
    case ProblemClass::MaxCut:
      inst.payload = Graph{j.at("nodes").get<int>(), edges_from_json(j.at("edges"))};
      break;
    case ProblemClass::Max3SAT: {
      CnfFormula f;
      f.num_vars = j.at("num_vars").get<int>();
      f.clauses = j.at("clauses").get<std::vector<std::array<int, 3>>>();
      f.duplicate_clauses_allowed = j.value("duplicate_clauses_allowed", true);
      inst.payload = std::move(f);
      break;
    }
    case ProblemClass::Partition:
      inst.payload = NumberSet{j.at("numbers").get<std::vector<std::int64_t>>()};
      break;
    case ProblemClass::MarketSplit: {
      MarketSplitData d;
      d.rows = j.at("rows").get<int>();
      d.cols = j.at("cols").get<int>();
      d.A = j.at("A").get<std::vector<std::int64_t>>();
      d.b = j.at("b").get<std::vector<std::int64_t>>();
      inst.payload = std::move(d);
      break;
    }
    case ProblemClass::TSP: {
      TspData d;
      d.num_nodes = j.at("nodes").get<int>();
      if (d.num_nodes < 2) throw std::invalid_argument("tsp instance: need at least two nodes");
      d.weights.assign(static_cast<std::size_t>(d.num_nodes) * d.num_nodes, 0.0);
      for (const auto& e : edges_from_json(j.at("edges"))) {
        if (e.u < 0 || e.v < 0 || e.u >= d.num_nodes || e.v >= d.num_nodes) {
          throw std::invalid_argument("tsp instance: arc references an invalid node");
        }
        d.weights[static_cast<std::size_t>(e.u) * d.num_nodes + e.v] = e.w;
      }
      inst.payload = std::move(d);
      break;
    }
  }
  validate(inst);
  return inst;
}

}  // namespace vqeb
