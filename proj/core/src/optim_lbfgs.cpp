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

// Limited-memory BFGS with forward-difference gradients and a projected
// Armijo backtracking line search. Each gradient costs n evaluations, so one
// iteration without backtracking costs n + 1.

#include <deque>

#include "optim_detail.hpp"

namespace vqeb::detail {
namespace {

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

std::vector<double> two_loop(const std::deque<CurvaturePair>& memory, std::span<const double> g) {
  std::vector<double> q(g.begin(), g.end());
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    alpha[k] = memory[k].rho * dot(memory[k].s, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[k] * memory[k].y[j];
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const double beta = memory[k].rho * dot(memory[k].y, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] += (alpha[k] - beta) * memory[k].s[j];
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

void run_lbfgs(Evaluator& eval, std::vector<double> x, const LbfgsOptions& opts) {
  const std::size_t n = eval.dimension();
  auto f = [&eval](std::span<const double> p) { return eval(p); };
  double fx = eval(x);
  std::vector<double> g = finite_difference_gradient(f, x, fx, opts.fd_step, eval.upper_bounds());
  std::deque<CurvaturePair> memory;
  std::vector<double> trial(n);

  for (;;) {
    std::vector<double> d = two_loop(memory, g);
    if (dot(g, d) >= 0.0) {
      memory.clear();
      d = g;
      for (double& v : d) v = -v;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if ((x[j] <= eval.lower(j) && d[j] < 0.0) || (x[j] >= eval.upper(j) && d[j] > 0.0)) d[j] = 0.0;
    }
    const double dnorm = norm2(d);
    if (dnorm == 0.0) return;

    double step = memory.empty() ? std::min(1.0, 1.0 / dnorm) : 1.0;
    double ft = 0.0;
    for (;;) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = x[j] + step * d[j];
      eval.project(trial);
      double move = 0.0;
      double decrease = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        move += (trial[j] - x[j]) * (trial[j] - x[j]);
        decrease += g[j] * (trial[j] - x[j]);
      }
      if (std::sqrt(move) < opts.min_step) return;
      ft = eval(trial);
      if (ft <= fx + opts.armijo_c1 * decrease) break;
      step *= opts.backtrack;
    }

    std::vector<double> gt = finite_difference_gradient(f, trial, ft, opts.fd_step, eval.upper_bounds());
    CurvaturePair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      pair.s[j] = trial[j] - x[j];
      pair.y[j] = gt[j] - g[j];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-12 * norm2(pair.s) * norm2(pair.y)) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > static_cast<std::size_t>(opts.memory)) memory.pop_front();
    }
    x = trial;
    fx = ft;
    g = std::move(gt);
  }
}

}  // namespace vqeb::detail
