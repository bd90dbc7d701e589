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

#include "vqebench/exact.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace vqeb {
namespace {

class MomentAccumulator {
 public:
  void add(double v, std::uint64_t weight) {
    if (weight == 0) return;
    // Weighted Welford update.
    const double w = static_cast<double>(weight);
    count_ += weight;
    const double delta = v - mean_;
    mean_ += delta * w / static_cast<double>(count_);
    m2_ += w * delta * (v - mean_);
  }

  MomentStats stats() const {
    MomentStats s;
    s.count = count_;
    if (count_ == 0) return s;
    s.mean = mean_;
    s.stddev = std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_)));
    return s;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

ExactSolution solve(const DiagonalHamiltonian& h, int max_qubits) {
  const auto diag = h.diagonal(max_qubits);
  ExactSolution sol;
  sol.num_qubits = h.num_qubits();
  sol.optimum = *std::min_element(diag.begin(), diag.end());
  for (std::uint64_t z = 0; z < diag.size(); ++z) {
    if (diag[z] <= sol.optimum + kOptimalTolerance) sol.optimal_set.push_back(z);
  }
  std::vector<double> sorted(diag.begin(), diag.end());
  std::sort(sorted.begin(), sorted.end());
  for (double v : sorted) {
    if (!sol.histogram.empty() && v - sol.histogram.back().value <= kOptimalTolerance) {
      ++sol.histogram.back().count;
    } else {
      sol.histogram.push_back({v, 1});
    }
  }
  return sol;
}

std::string bitstring(std::uint64_t z, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int j = 0; j < num_qubits; ++j) {
    if ((z >> j) & 1U) s[static_cast<std::size_t>(j)] = '1';
  }
  return s;
}

std::uint64_t parse_bitstring(const std::string& s) {
  if (s.empty() || s.size() > 63) throw std::invalid_argument("bit string length must be 1..63");
  std::uint64_t z = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == '1') {
      z |= std::uint64_t{1} << j;
    } else if (s[j] != '0') {
      throw std::invalid_argument("bit string may only contain 0 and 1");
    }
  }
  return z;
}

std::optional<double> approximation_ratio(double value, double optimum) {
  if (optimum < 0.0 && value < 0.0) return optimum / value;
  if (optimum > 0.0 && value > 0.0) return value / optimum;
  return std::nullopt;
}

namespace {

ValueDistribution accumulate(double optimum, auto&& for_each_value) {
  MomentAccumulator values;
  MomentAccumulator ratios;
  ValueDistribution d;
  for_each_value([&](double v, std::uint64_t count) {
    d.feasible_count += count;
    values.add(v, count);
    if (auto r = approximation_ratio(v, optimum)) {
      ratios.add(*r, count);
    } else {
      d.undefined_ratio_count += count;
    }
  });
  d.values = values.stats();
  d.ratios = ratios.stats();
  return d;
}

}  // namespace

ValueDistribution value_distribution_stats(const ExactSolution& sol) {
  return accumulate(sol.optimum, [&](auto&& emit) {
    for (const auto& bin : sol.histogram) emit(bin.value, bin.count);
  });
}

ValueDistribution value_distribution_stats(const ExactSolution& sol, const ProblemInstance& inst,
                                           const DiagonalHamiltonian& h) {
  if (inst.problem_class != ProblemClass::TSP) return value_distribution_stats(sol);
  const TspLayout layout = tsp_layout(std::get<TspData>(inst.payload));
  const auto diag = h.diagonal();
  // Permutation strings carry zero penalty, so the optimum is attained among them.
  return accumulate(sol.optimum, [&](auto&& emit) {
    for (std::uint64_t z = 0; z < diag.size(); ++z) {
      if (tsp_is_permutation(layout, z)) emit(diag[z], 1);
    }
  });
}

void to_json(nlohmann::json& j, const ExactSolution& sol) {
  nlohmann::json optimal = nlohmann::json::array();
  for (auto z : sol.optimal_set) optimal.push_back(bitstring(z, sol.num_qubits));
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& bin : sol.histogram) hist.push_back({bin.value, bin.count});
  j = {{"qubits", sol.num_qubits},
       {"optimum", sol.optimum},
       {"optimal_set", std::move(optimal)},
       {"histogram", std::move(hist)}};
}

void to_json(nlohmann::json& j, const ValueDistribution& d) {
  auto moments = [](const MomentStats& m) {
    return nlohmann::json{{"count", m.count}, {"mean", m.mean}, {"stddev", m.stddev}};
  };
  j = {{"feasible_count", d.feasible_count},
       {"values", moments(d.values)},
       {"ratios", moments(d.ratios)},
       {"undefined_ratio_count", d.undefined_ratio_count}};
}

}  // namespace vqeb
