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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vqebench/ising.hpp"
#include "vqebench/problems.hpp"

namespace vqeb {

inline constexpr double kOptimalTolerance = 1e-9;

struct HistogramBin {
  double value = 0.0;
  std::uint64_t count = 0;
};

struct ExactSolution {
  int num_qubits = 0;
  double optimum = 0.0;
  std::vector<std::uint64_t> optimal_set;  // ascending basis indices
  std::vector<HistogramBin> histogram;     // ascending values; counts sum to 2^q
};

/// Exhaustive scan of the diagonal. Throws CapacityError above max_qubits.
ExactSolution solve(const DiagonalHamiltonian& h, int max_qubits = kDefaultMaxQubits);

/// Qubit 0 first: character j is bit j of z.
std::string bitstring(std::uint64_t z, int num_qubits);
std::uint64_t parse_bitstring(const std::string& s);

struct MomentStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

/// Distribution of objective values over the feasible strings of one instance.
/// Ratios follow the approximation-ratio convention (f* / f for f* < 0,
/// f / f* for f* > 0); strings where it is undefined are counted, not averaged.
struct ValueDistribution {
  std::uint64_t feasible_count = 0;
  MomentStats values;
  MomentStats ratios;
  std::uint64_t undefined_ratio_count = 0;
};

/// Approximation ratio of value against optimum, or nullopt when the signs
/// differ or either is zero.
std::optional<double> approximation_ratio(double value, double optimum);

/// TSP uses permutation strings only; every other class uses all 2^q strings.
ValueDistribution value_distribution_stats(const ExactSolution& sol, const ProblemInstance& inst,
                                           const DiagonalHamiltonian& h);

/// Histogram-only variant for classes whose feasible set is every string.
ValueDistribution value_distribution_stats(const ExactSolution& sol);

// {optimum, optimal_set: [bit strings], histogram: [[value, count], ...]}
void to_json(nlohmann::json& j, const ExactSolution& sol);
void to_json(nlohmann::json& j, const ValueDistribution& d);

}  // namespace vqeb
