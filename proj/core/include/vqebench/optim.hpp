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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vqeb {

enum class Algorithm { FdLbfgs, LinearModelTrust, PowellCD, Spsa, RbfGlobal };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {
    Algorithm::FdLbfgs, Algorithm::LinearModelTrust, Algorithm::PowellCD, Algorithm::Spsa,
    Algorithm::RbfGlobal};

/// Names: lbfgs, cobyla, powell, spsa, rbf.
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);
bool is_local(Algorithm a) noexcept;

/// One objective call. index is 1-based in call order.
struct Evaluation {
  std::size_t index = 0;
  std::vector<double> point;  // empty when the run does not store points
  double value = 0.0;
};

struct Objective {
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> evaluate;
  /// Called after every evaluation, in order, with the recorded entry.
  std::function<void(const Evaluation&)> on_evaluation;
};

struct LbfgsOptions {
  int memory = 10;
  double fd_step = 1e-6;  // h = fd_step * max(1, |x_j|)
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  double min_step = 1e-8;
};

/// Unconstrained COBYLA-style simplex method with a linear model.
struct LinearTrustOptions {
  double initial_radius = 0.5;
  double final_radius = 1e-6;
  double shrink = 0.5;
};

struct PowellOptions {
  double line_tol = 1e-6;
  double min_step = 1e-8;
  double initial_bracket = 1.0;
};

struct SpsaOptions {
  double c = 0.1;
  double alpha = 0.602;
  double gamma = 0.101;
  double stability_fraction = 0.1;  // A = stability_fraction * budget / 2
  int calibration_evals = 10;
  double target_step = 0.2;  // desired magnitude of the first update
};

struct RbfOptions {
  int candidates_per_dim = 100;
  int max_candidates = 500;
  /// The surrogate is fitted on the best this-many points; 0 selects
  /// max(80, 3 (n + 1)).
  int max_fit_points = 0;
  std::vector<double> weight_cycle = {0.3, 0.5, 0.8, 0.95};
  std::array<double, 3> local_scales = {0.1, 0.01, 0.001};  // fraction of box width
  double uniform_fraction = 0.25;
};

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::LinearModelTrust;
  /// Maximum evaluations; defaults to 100 (n + 1).
  std::optional<std::size_t> budget;
  /// Per-coordinate bounds. Empty means unbounded (not allowed for RbfGlobal).
  std::vector<double> lower;
  std::vector<double> upper;
  std::uint64_t seed = 0;
  bool store_points = true;

  LbfgsOptions lbfgs;
  LinearTrustOptions linear_trust;
  PowellOptions powell;
  SpsaOptions spsa;
  RbfOptions rbf;
};

enum class RunStatus { BudgetExhausted, Converged, NonFiniteValue };
std::string to_string(RunStatus s);

struct RunTrace {
  std::vector<Evaluation> evaluations;
  std::vector<double> best_so_far;
  std::size_t evaluations_used = 0;
  RunStatus status = RunStatus::BudgetExhausted;
  std::string diagnostic;
  std::vector<double> best_point;
  double best_value = 0.0;

  std::vector<double> values() const;
};

std::size_t default_budget(std::size_t n) noexcept;

/// Runs the configured algorithm from x0. Every evaluation, x0's first, is
/// recorded in call order; no point outside the box is evaluated.
/// Throws std::invalid_argument for a bad budget, dimension or start point.
RunTrace minimize(const Objective& obj, std::span<const double> x0, const OptimizerConfig& cfg);

/// Evaluation index k maps to k / (n + 1) equivalent gradient iterations.
double normalized_iteration(std::size_t eval_index, std::size_t n);
std::vector<double> normalized_iterations(const RunTrace& trace, std::size_t n);

/// Forward differences with step h_j = rel_step * max(1, |x_j|); switches to a
/// backward difference where x_j + h_j would leave the upper bound.
std::vector<double> finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                               std::span<const double> x, double fx,
                                               double rel_step, std::span<const double> upper = {});

/// Cubic RBF interpolant phi(r) = r^3 with a linear polynomial tail.
class CubicRbfSurrogate {
 public:
  /// points are row-major (count x dim). Needs count >= dim + 1 in general
  /// position; throws std::runtime_error if the system is singular.
  void fit(std::span<const double> points, std::span<const double> values, std::size_t dim);
  double operator()(std::span<const double> x) const;
  /// Same value; also stores the squared distance to the nearest center.
  double evaluate(std::span<const double> x, double& nearest_sq) const;
  std::size_t size() const noexcept { return count_; }

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> centers_;
  std::vector<double> lambda_;
  std::vector<double> tail_;  // constant, then one slope per dimension
};

}  // namespace vqeb
