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

#include "vqebench/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "vqebench/rng.hpp"

namespace vqeb {
namespace {

constexpr int kMinQubits = 6;
constexpr int kMaxQubits = 18;

int perfect_square_root(int q) {
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
  return r * r == q ? r : -1;
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

Graph gen_erdos_renyi(int n, double p, Rng& rng) {
  Graph g{n, {}};
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) g.edges.push_back({u, v, 1.0});
  return g;
}

CnfFormula gen_cnf(int num_vars, int num_clauses, Rng& rng) {
  CnfFormula f;
  f.num_vars = num_vars;
  for (int c = 0; c < num_clauses; ++c) {
    std::array<int, 3> clause{};
    std::vector<int> free_vars(static_cast<std::size_t>(num_vars));
    std::iota(free_vars.begin(), free_vars.end(), 0);
    for (int k = 0; k < 3; ++k) {
      // Uniform over the 2 * |free_vars| literals whose variable is not yet used.
      const auto pick = rng.uniform_int(0, 2 * static_cast<std::int64_t>(free_vars.size()) - 1);
      const auto slot = static_cast<std::size_t>(pick / 2);
      const int var = free_vars[slot];
      clause[k] = (pick % 2 == 0) ? var + 1 : -(var + 1);
      free_vars.erase(free_vars.begin() + static_cast<std::ptrdiff_t>(slot));
    }
    f.clauses.push_back(clause);
  }
  return f;
}

void encode_stable_set(const Graph& g, QuboProblem& p) {
  for (int j = 0; j < g.num_nodes; ++j) p.add_linear(j, -1.0);
  for (const auto& e : g.edges) p.add_quadratic(e.u, e.v, 1.0);
}

}  // namespace

std::string to_string(ProblemClass c) {
  switch (c) {
    case ProblemClass::StableSet: return "stableset";
    case ProblemClass::Max3SAT: return "max3sat";
    case ProblemClass::Partition: return "partition";
    case ProblemClass::MaxCut: return "maxcut";
    case ProblemClass::MarketSplit: return "marketsplit";
    case ProblemClass::TSP: return "tsp";
  }
  return "unknown";
}

ProblemClass parse_problem_class(const std::string& name) {
  std::string lower;
  for (char ch : name) {
    if (ch != '_' && ch != '-') lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  for (ProblemClass c : kAllProblemClasses) {
    if (to_string(c) == lower) return c;
  }
  throw std::invalid_argument("unknown problem class '" + name + "'");
}

TspLayout tsp_layout(const TspData& data) {
  TspLayout layout;
  layout.num_nodes = data.num_nodes;
  double max_w = 0.0;
  for (double w : data.weights) max_w = std::max(max_w, w);
  // A zero-weight graph still needs a positive penalty.
  layout.penalty = data.num_nodes * std::max(max_w, 1.0);
  return layout;
}

ProblemInstance gen_marketsplit(int q, std::uint64_t seed) {
  if (q < kMinQubits) throw PreconditionError("marketsplit: q must be at least 6");
  Rng rng(derive_seed(seed, "marketsplit"));
  MarketSplitData d;
  d.rows = q / 10 + 1;
  d.cols = q;
  d.A.resize(static_cast<std::size_t>(d.rows) * d.cols);
  for (auto& a : d.A) a = rng.uniform_int(0, 99);
  for (int i = 0; i < d.rows; ++i) {
    std::int64_t sum = 0;
    for (int j = 0; j < d.cols; ++j) sum += d.a(i, j);
    d.b.push_back(sum / 2);
  }
  return {ProblemClass::MarketSplit, q, seed, std::move(d)};
}

ProblemInstance gen_instance(ProblemClass c, int q, std::uint64_t seed) {
  if (q < kMinQubits || q > kMaxQubits) {
    throw PreconditionError(to_string(c) + ": q must lie in [6, 18], got " + std::to_string(q));
  }
  Rng rng(derive_seed(seed, to_string(c)));
  switch (c) {
    case ProblemClass::StableSet:
      return {c, q, seed, gen_erdos_renyi(q, 0.3, rng)};
    case ProblemClass::Max3SAT: {
      if (q % 3 != 0) {
        throw PreconditionError("max3sat: q must be divisible by 3 (one qubit per literal of q/3 "
                                "clauses), got " + std::to_string(q));
      }
      return {c, q, seed, gen_cnf(q / 2, q / 3, rng)};
    }
    case ProblemClass::Partition: {
      NumberSet s;
      for (int j = 0; j < q; ++j) s.values.push_back(rng.uniform_int(1, std::int64_t{q} * q + 1));
      return {c, q, seed, std::move(s)};
    }
    case ProblemClass::MaxCut: {
      Graph g{q, {}};
      for (int u = 0; u < q; ++u)
        for (int v = u + 1; v < q; ++v)
          g.edges.push_back({u, v, static_cast<double>(rng.uniform_int(-10, 10))});
      return {c, q, seed, std::move(g)};
    }
    case ProblemClass::MarketSplit:
      return gen_marketsplit(q, seed);
    case ProblemClass::TSP: {
      const int root = perfect_square_root(q);
      if (root < 0) {
        throw PreconditionError("tsp: q must be a perfect square ((n-1)^2 qubits for n nodes), got " +
                                std::to_string(q));
      }
      TspData d;
      d.num_nodes = root + 1;
      d.weights.assign(static_cast<std::size_t>(d.num_nodes) * d.num_nodes, 0.0);
      for (int i = 0; i < d.num_nodes; ++i)
        for (int j = 0; j < d.num_nodes; ++j)
          if (i != j) d.weights[static_cast<std::size_t>(i) * d.num_nodes + j] =
                          static_cast<double>(rng.uniform_int(0, 9));
      return {c, q, seed, std::move(d)};
    }
  }
  throw std::invalid_argument("gen_instance: unhandled class");
}

Graph max3sat_conflict_graph(const CnfFormula& f) {
  const int m = static_cast<int>(f.clauses.size());
  Graph g{3 * m, {}};
  for (int c = 0; c < m; ++c) {
    g.edges.push_back({3 * c, 3 * c + 1, 1.0});
    g.edges.push_back({3 * c, 3 * c + 2, 1.0});
    g.edges.push_back({3 * c + 1, 3 * c + 2, 1.0});
  }
  for (int u = 0; u < 3 * m; ++u) {
    for (int v = u + 1; v < 3 * m; ++v) {
      if (u / 3 == v / 3) continue;
      if (f.clauses[u / 3][u % 3] == -f.clauses[v / 3][v % 3]) g.edges.push_back({u, v, 1.0});
    }
  }
  return g;
}

void validate(const ProblemInstance& inst) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(to_string(inst.problem_class) + " instance: " + what);
  };
  auto check_graph = [&](const Graph& g) {
    if (g.num_nodes != inst.num_qubits) fail("node count differs from qubit count");
    for (const auto& e : g.edges) {
      if (e.u < 0 || e.v < 0 || e.u >= g.num_nodes || e.v >= g.num_nodes || e.u == e.v) {
        fail("edge references an invalid node");
      }
    }
  };
  std::visit(
      Overloaded{
          [&](const Graph& g) {
            if (inst.problem_class != ProblemClass::StableSet &&
                inst.problem_class != ProblemClass::MaxCut) {
              fail("graph payload for a non-graph class");
            }
            check_graph(g);
          },
          [&](const CnfFormula& f) {
            if (inst.problem_class != ProblemClass::Max3SAT) fail("clause payload mismatch");
            if (3 * static_cast<int>(f.clauses.size()) != inst.num_qubits) {
              fail("3 * clauses must equal the qubit count");
            }
            for (const auto& cl : f.clauses) {
              for (int k = 0; k < 3; ++k) {
                const int var = std::abs(cl[k]) - 1;
                if (cl[k] == 0 || var >= f.num_vars) fail("literal references an invalid variable");
                for (int l = 0; l < k; ++l)
                  if (std::abs(cl[l]) == std::abs(cl[k])) fail("clause variables must be distinct");
              }
            }
          },
          [&](const NumberSet& s) {
            if (inst.problem_class != ProblemClass::Partition) fail("number payload mismatch");
            if (static_cast<int>(s.values.size()) != inst.num_qubits) fail("size mismatch");
          },
          [&](const MarketSplitData& d) {
            if (inst.problem_class != ProblemClass::MarketSplit) fail("matrix payload mismatch");
            if (d.cols != inst.num_qubits || d.rows < 1 ||
                d.A.size() != static_cast<std::size_t>(d.rows) * d.cols ||
                d.b.size() != static_cast<std::size_t>(d.rows)) {
              fail("matrix shape mismatch");
            }
            if (std::any_of(d.A.begin(), d.A.end(), [](auto a) { return a < 0; })) {
              fail("A must be nonnegative");
            }
          },
          [&](const TspData& d) {
            if (inst.problem_class != ProblemClass::TSP) fail("tsp payload mismatch");
            if (d.num_nodes < 2 || (d.num_nodes - 1) * (d.num_nodes - 1) != inst.num_qubits ||
                d.weights.size() != static_cast<std::size_t>(d.num_nodes) * d.num_nodes) {
              fail("node count must satisfy (n-1)^2 = q");
            }
          },
      },
      inst.payload);
}

QuboProblem encode(const ProblemInstance& inst) {
  validate(inst);
  QuboProblem p(inst.num_qubits);
  switch (inst.problem_class) {
    case ProblemClass::StableSet:
      // max sum x_j - sum_E x_i x_j, negated.
      encode_stable_set(std::get<Graph>(inst.payload), p);
      break;
    case ProblemClass::Max3SAT:
      encode_stable_set(max3sat_conflict_graph(std::get<CnfFormula>(inst.payload)), p);
      break;
    case ProblemClass::Partition: {
      // (sum a_j y_j)^2 with y_j = 1 - 2 x_j, i.e. (S - 2 sum a_j x_j)^2.
      const auto& a = std::get<NumberSet>(inst.payload).values;
      const double total = static_cast<double>(std::accumulate(a.begin(), a.end(), std::int64_t{0}));
      p.add_constant(total * total);
      for (int i = 0; i < inst.num_qubits; ++i) {
        const double ai = static_cast<double>(a[i]);
        p.add_linear(i, 4.0 * ai * ai - 4.0 * total * ai);
        for (int j = i + 1; j < inst.num_qubits; ++j) {
          p.add_quadratic(i, j, 8.0 * ai * static_cast<double>(a[j]));
        }
      }
      break;
    }
    case ProblemClass::MaxCut: {
      // -sum w_uv [x_u != x_v] = -sum w_uv (x_u + x_v - 2 x_u x_v).
      for (const auto& e : std::get<Graph>(inst.payload).edges) {
        if (e.w == 0.0) continue;
        p.add_linear(e.u, -e.w);
        p.add_linear(e.v, -e.w);
        p.add_quadratic(e.u, e.v, 2.0 * e.w);
      }
      break;
    }
    case ProblemClass::MarketSplit: {
      const auto& d = std::get<MarketSplitData>(inst.payload);
      for (int i = 0; i < d.rows; ++i) {
        const double bi = static_cast<double>(d.b[i]);
        p.add_constant(bi * bi);
        for (int j = 0; j < d.cols; ++j) {
          const double aij = static_cast<double>(d.a(i, j));
          p.add_linear(j, aij * aij - 2.0 * bi * aij);
          for (int k = j + 1; k < d.cols; ++k) {
            p.add_quadratic(j, k, 2.0 * aij * static_cast<double>(d.a(i, k)));
          }
        }
      }
      break;
    }
    case ProblemClass::TSP: {
      const auto& d = std::get<TspData>(inst.payload);
      const TspLayout layout = tsp_layout(d);
      const int n = d.num_nodes;
      // Tour cost: fixed start 0 -> position 1, free steps, wrap back to node 0.
      for (int j = 1; j < n; ++j) {
        p.add_linear(layout.qubit(j, 1), d.w(0, j));
        p.add_linear(layout.qubit(j, n - 1), d.w(j, 0));
      }
      for (int pos = 1; pos + 1 < n; ++pos)
        for (int i = 1; i < n; ++i)
          for (int j = 1; j < n; ++j)
            if (i != j && d.w(i, j) != 0.0) {
              p.add_quadratic(layout.qubit(i, pos), layout.qubit(j, pos + 1), d.w(i, j));
            }
      // alpha (sum x - 1)^2 = alpha (1 - sum x + 2 sum_{k<l} x_k x_l) per row and column.
      const double alpha = layout.penalty;
      for (int outer = 1; outer < n; ++outer) {
        for (int by_node = 0; by_node < 2; ++by_node) {
          auto var = [&](int inner) {
            return by_node ? layout.qubit(outer, inner) : layout.qubit(inner, outer);
          };
          p.add_constant(alpha);
          for (int k = 1; k < n; ++k) {
            p.add_linear(var(k), -alpha);
            for (int l = k + 1; l < n; ++l) p.add_quadratic(var(k), var(l), 2.0 * alpha);
          }
        }
      }
      break;
    }
  }
  return p;
}

bool tsp_is_permutation(const TspLayout& layout, std::uint64_t bits) {
  const int n = layout.num_nodes;
  for (int i = 1; i < n; ++i) {
    int row = 0;
    int col = 0;
    for (int k = 1; k < n; ++k) {
      row += static_cast<int>((bits >> layout.qubit(i, k)) & 1U);
      col += static_cast<int>((bits >> layout.qubit(k, i)) & 1U);
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

double tsp_tour_cost(const TspData& data, const TspLayout& layout, std::uint64_t bits) {
  const int n = data.num_nodes;
  std::vector<int> order(static_cast<std::size_t>(n), 0);
  for (int pos = 1; pos < n; ++pos)
    for (int i = 1; i < n; ++i)
      if ((bits >> layout.qubit(i, pos)) & 1U) order[pos] = i;
  double cost = 0.0;
  for (int pos = 0; pos < n; ++pos) cost += data.w(order[pos], order[(pos + 1) % n]);
  return cost;
}

}  // namespace vqeb
