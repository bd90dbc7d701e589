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

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vqebench/ising.hpp"

namespace vqeb {

enum class ProblemClass { StableSet, Max3SAT, Partition, MaxCut, MarketSplit, TSP };

inline constexpr std::array<ProblemClass, 6> kAllProblemClasses = {
    ProblemClass::StableSet, ProblemClass::Max3SAT,     ProblemClass::Partition,
    ProblemClass::MaxCut,    ProblemClass::MarketSplit, ProblemClass::TSP};

/// Lower-case canonical name: stableset, max3sat, partition, maxcut, marketsplit, tsp.
std::string to_string(ProblemClass c);
ProblemClass parse_problem_class(const std::string& name);

/// Raised when (class, q) violates a generator precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// Undirected graph; StableSet ignores weights, MaxCut uses them.
struct Graph {
  int num_nodes = 0;
  std::vector<WeightedEdge> edges;
};

/// Literals are +(var+1) for x_var and -(var+1) for its negation.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
  bool duplicate_clauses_allowed = true;
};

struct NumberSet {
  std::vector<std::int64_t> values;
};

/// min ||Ax - b||^2 with A stored row-major (rows x cols).
struct MarketSplitData {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> A;
  std::vector<std::int64_t> b;

  std::int64_t a(int i, int j) const { return A[static_cast<std::size_t>(i) * cols + j]; }
};

/// Directed complete graph on num_nodes nodes; weights[i * n + j] is the cost
/// of moving from node i to node j. Node 0 is the fixed start of the tour.
struct TspData {
  int num_nodes = 0;
  std::vector<double> weights;

  double w(int i, int j) const { return weights[static_cast<std::size_t>(i) * num_nodes + j]; }
};

using ProblemPayload = std::variant<Graph, CnfFormula, NumberSet, MarketSplitData, TspData>;

struct ProblemInstance {
  ProblemClass problem_class = ProblemClass::MaxCut;
  int num_qubits = 0;
  std::uint64_t seed = 0;
  ProblemPayload payload;
};

/// Qubit bookkeeping for the TSP encoding. Node 0 is pinned to position 0, so
/// only x_{i,p} with i, p in 1..n-1 remain free: (n-1)^2 qubits.
struct TspLayout {
  int num_nodes = 0;
  double penalty = 0.0;  // n * max weight

  int num_free() const noexcept { return (num_nodes - 1) * (num_nodes - 1); }
  /// Qubit of "node i sits at position p", i, p in 1..n-1.
  int qubit(int node, int position) const { return (node - 1) * (num_nodes - 1) + (position - 1); }
};

TspLayout tsp_layout(const TspData& data);

/// Random instance per class. q must lie in [6, 18]; Max3SAT needs q % 3 == 0
/// and TSP needs q to be a perfect square.
ProblemInstance gen_instance(ProblemClass c, int q, std::uint64_t seed);

/// m = floor(q/10) + 1 rows, a_ij uniform in [0, 99], b_i = floor(sum_j a_ij / 2).
ProblemInstance gen_marketsplit(int q, std::uint64_t seed);

/// Checks payload consistency (node ranges, distinct clause variables, A >= 0,
/// sizes matching num_qubits). Throws std::invalid_argument.
void validate(const ProblemInstance& inst);

/// Minimization QUBO for the instance. Maximization problems are negated.
QuboProblem encode(const ProblemInstance& inst);

/// Literal-occurrence conflict graph: one node per literal occurrence, a
/// triangle per clause and an edge between every complementary pair.
Graph max3sat_conflict_graph(const CnfFormula& f);

/// True iff the bit string is a valid assignment (a tour) under the layout.
bool tsp_is_permutation(const TspLayout& layout, std::uint64_t bits);

/// Cost of the tour encoded by a permutation bit string.
double tsp_tour_cost(const TspData& data, const TspLayout& layout, std::uint64_t bits);

// Instance JSON: {"class", "qubits", "seed", ...payload}. Edge lists are
// [u, v, w] triples with 0-based nodes; A is a row-major integer array.
void to_json(nlohmann::json& j, const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

}  // namespace vqeb
