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

#include "vqebench/optim.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "optim_detail.hpp"

namespace vqeb {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::FdLbfgs: return "lbfgs";
    case Algorithm::LinearModelTrust: return "cobyla";
    case Algorithm::PowellCD: return "powell";
    case Algorithm::Spsa: return "spsa";
    case Algorithm::RbfGlobal: return "rbf";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& raw) {
  std::string name;
  for (char ch : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  if (name == "fd_lbfgs") return Algorithm::FdLbfgs;
  if (name == "linear_model_trust") return Algorithm::LinearModelTrust;
  if (name == "powell_cd" || name == "pcd") return Algorithm::PowellCD;
  if (name == "rbf_global" || name == "rbfopt") return Algorithm::RbfGlobal;
  throw std::invalid_argument("unknown optimizer '" + raw +
                              "' (expected lbfgs|cobyla|powell|spsa|rbf)");
}

bool is_local(Algorithm a) noexcept { return a != Algorithm::RbfGlobal; }

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::BudgetExhausted: return "budget_exhausted";
    case RunStatus::Converged: return "converged";
    case RunStatus::NonFiniteValue: return "non_finite_value";
  }
  return "unknown";
}

std::vector<double> RunTrace::values() const {
  std::vector<double> v;
  v.reserve(evaluations.size());
  for (const auto& e : evaluations) v.push_back(e.value);
  return v;
}

std::size_t default_budget(std::size_t n) noexcept { return 100 * (n + 1); }

double normalized_iteration(std::size_t eval_index, std::size_t n) {
  if (n < 1) throw std::invalid_argument("normalized_iteration: n must be positive");
  return static_cast<double>(eval_index) / static_cast<double>(n + 1);
}

std::vector<double> normalized_iterations(const RunTrace& trace, std::size_t n) {
  std::vector<double> out;
  out.reserve(trace.evaluations.size());
  for (const auto& e : trace.evaluations) out.push_back(normalized_iteration(e.index, n));
  return out;
}

std::vector<double> finite_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                               std::span<const double> x, double fx,
                                               double rel_step, std::span<const double> upper) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    double h = rel_step * std::max(1.0, std::abs(x[j]));
    if (!upper.empty() && x[j] + h > upper[j]) h = -h;
    probe[j] = x[j] + h;
    // Use the representable step so that the quotient is exact in h.
    const double step = probe[j] - x[j];
    g[j] = (f(probe) - fx) / step;
    probe[j] = x[j];
  }
  return g;
}

namespace detail {

Evaluator::Evaluator(const Objective& obj, const OptimizerConfig& cfg, std::size_t budget,
                     RunTrace& trace)
    : obj_(obj),
      n_(obj.dimension),
      budget_(budget),
      lower_(cfg.lower),
      upper_(cfg.upper),
      store_points_(cfg.store_points),
      trace_(trace) {
  trace_.best_value = std::numeric_limits<double>::infinity();
}

void Evaluator::project(std::span<double> x) const noexcept {
  if (lower_.empty()) return;
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], lower_[j], upper_[j]);
}

double Evaluator::operator()(std::span<const double> x) {
  if (trace_.evaluations_used >= budget_) throw BudgetExhausted{};
  for (std::size_t j = 0; j < n_ && !lower_.empty(); ++j) {
    if (!(x[j] >= lower_[j] && x[j] <= upper_[j])) {
      throw std::logic_error("optimizer attempted to evaluate outside the box");
    }
  }
  const double value = obj_.evaluate(x);
  ++trace_.evaluations_used;

  Evaluation e;
  e.index = trace_.evaluations_used;
  if (store_points_) e.point.assign(x.begin(), x.end());
  e.value = value;

  const bool finite = std::isfinite(value);
  if (finite && value < trace_.best_value) {
    trace_.best_value = value;
    trace_.best_point.assign(x.begin(), x.end());
  }
  trace_.best_so_far.push_back(trace_.best_value);
  if (obj_.on_evaluation) obj_.on_evaluation(e);
  trace_.evaluations.push_back(std::move(e));

  if (!finite) throw NonFiniteValue{};
  return value;
}

}  // namespace detail

RunTrace minimize(const Objective& obj, std::span<const double> x0, const OptimizerConfig& cfg) {
  const std::size_t n = obj.dimension;
  if (n < 1) throw std::invalid_argument("minimize: objective dimension must be positive");
  if (!obj.evaluate) throw std::invalid_argument("minimize: objective has no evaluate function");
  if (x0.size() != n) throw std::invalid_argument("minimize: x0 has the wrong dimension");
  const std::size_t budget = cfg.budget.value_or(default_budget(n));
  if (budget < n + 2) {
    throw std::invalid_argument("minimize: budget " + std::to_string(budget) +
                                " is below n + 2 = " + std::to_string(n + 2));
  }
  if (cfg.lower.size() != cfg.upper.size() || (!cfg.lower.empty() && cfg.lower.size() != n)) {
    throw std::invalid_argument("minimize: bounds must be empty or have dimension n");
  }
  for (std::size_t j = 0; j < cfg.lower.size(); ++j) {
    if (!(cfg.lower[j] <= cfg.upper[j])) throw std::invalid_argument("minimize: lower > upper");
    if (!(x0[j] >= cfg.lower[j] && x0[j] <= cfg.upper[j])) {
      throw std::invalid_argument("minimize: x0 lies outside the box");
    }
  }
  if (cfg.algorithm == Algorithm::RbfGlobal) {
    if (cfg.lower.empty()) throw std::invalid_argument("minimize: rbf requires a finite box");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(cfg.lower[j]) || !std::isfinite(cfg.upper[j]) ||
          !(cfg.upper[j] > cfg.lower[j])) {
        throw std::invalid_argument("minimize: rbf requires a finite box with positive width");
      }
    }
  }

  RunTrace trace;
  trace.evaluations.reserve(budget);
  trace.best_so_far.reserve(budget);
  detail::Evaluator eval(obj, cfg, budget, trace);
  std::vector<double> start(x0.begin(), x0.end());
  try {
    switch (cfg.algorithm) {
      case Algorithm::FdLbfgs: detail::run_lbfgs(eval, std::move(start), cfg.lbfgs); break;
      case Algorithm::LinearModelTrust:
        detail::run_linear_trust(eval, std::move(start), cfg.linear_trust);
        break;
      case Algorithm::PowellCD: detail::run_powell(eval, std::move(start), cfg.powell); break;
      case Algorithm::Spsa: detail::run_spsa(eval, std::move(start), cfg.spsa, cfg.seed); break;
      case Algorithm::RbfGlobal: detail::run_rbf(eval, std::move(start), cfg.rbf, cfg.seed); break;
    }
    trace.status = trace.evaluations_used >= budget ? RunStatus::BudgetExhausted
                                                    : RunStatus::Converged;
  } catch (const detail::BudgetExhausted&) {
    trace.status = RunStatus::BudgetExhausted;
  } catch (const detail::NonFiniteValue&) {
    trace.status = RunStatus::NonFiniteValue;
    std::ostringstream msg;
    msg << "objective returned " << trace.evaluations.back().value << " at evaluation "
        << trace.evaluations.back().index;
    trace.diagnostic = msg.str();
  }
  return trace;
}

}  // namespace vqeb
