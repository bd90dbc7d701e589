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

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "vqebench/optim.hpp"

namespace vqeb::detail {

// Control-flow signals thrown out of an algorithm's loop by the evaluator.
struct BudgetExhausted {};
struct NonFiniteValue {};

/// Budget- and box-enforcing wrapper every algorithm evaluates through.
class Evaluator {
 public:
  Evaluator(const Objective& obj, const OptimizerConfig& cfg, std::size_t budget, RunTrace& trace);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t budget() const noexcept { return budget_; }
  std::size_t used() const noexcept { return trace_.evaluations_used; }
  std::size_t remaining() const noexcept { return budget_ - used(); }

  bool bounded() const noexcept { return !lower_.empty(); }
  double lower(std::size_t j) const noexcept {
    return lower_.empty() ? -std::numeric_limits<double>::infinity() : lower_[j];
  }
  double upper(std::size_t j) const noexcept {
    return upper_.empty() ? std::numeric_limits<double>::infinity() : upper_[j];
  }
  std::span<const double> upper_bounds() const noexcept { return upper_; }

  /// Clamps x into the box in place.
  void project(std::span<double> x) const noexcept;

  /// Evaluates f(x). Throws BudgetExhausted before exceeding the budget and
  /// NonFiniteValue after recording a NaN/Inf value.
  double operator()(std::span<const double> x);

  std::span<const double> best_point() const noexcept { return trace_.best_point; }
  double best_value() const noexcept { return trace_.best_value; }

 private:
  const Objective& obj_;
  std::size_t n_;
  std::size_t budget_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  bool store_points_;
  RunTrace& trace_;
};

void run_lbfgs(Evaluator& eval, std::vector<double> x, const LbfgsOptions& opts);
void run_linear_trust(Evaluator& eval, std::vector<double> x, const LinearTrustOptions& opts);
void run_powell(Evaluator& eval, std::vector<double> x, const PowellOptions& opts);
void run_spsa(Evaluator& eval, std::vector<double> x, const SpsaOptions& opts, std::uint64_t seed);
void run_rbf(Evaluator& eval, std::vector<double> x, const RbfOptions& opts, std::uint64_t seed);

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace vqeb::detail
