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

#include "optim_detail.hpp"
#include "vqebench/rng.hpp"

namespace vqeb::detail {

// Simultaneous perturbation stochastic approximation with the standard gain
// sequences a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma. The last
// evaluation of the budget is spent on the final iterate.
void run_spsa(Evaluator& eval, std::vector<double> x, const SpsaOptions& opts, std::uint64_t seed) {
  const std::size_t n = eval.dimension();
  Rng rng(derive_seed(seed, "spsa"));
  std::vector<double> delta(n), plus(n), minus(n);

  auto perturb = [&](double ck) {
    for (std::size_t j = 0; j < n; ++j) {
      delta[j] = rng.bernoulli() ? 1.0 : -1.0;
      plus[j] = x[j] + ck * delta[j];
      minus[j] = x[j] - ck * delta[j];
    }
    eval.project(plus);
    eval.project(minus);
    const double fp = eval(plus);
    const double fm = eval(minus);
    return fp - fm;
  };

  eval(x);

  const double stability = opts.stability_fraction * static_cast<double>(eval.budget()) / 2.0;
  const int pairs = std::max(1, opts.calibration_evals / 2);
  double magnitude = 0.0;
  for (int k = 0; k < pairs; ++k) magnitude += std::abs(perturb(opts.c)) / (2.0 * opts.c);
  magnitude /= pairs;
  const double scale = std::pow(stability + 1.0, opts.alpha);
  const double a = magnitude > 0.0 ? opts.target_step * scale / magnitude : opts.target_step * scale;

  for (std::size_t k = 0; eval.remaining() > 2; ++k) {
    const double kk = static_cast<double>(k);
    const double ak = a / std::pow(kk + 1.0 + stability, opts.alpha);
    const double ck = opts.c / std::pow(kk + 1.0, opts.gamma);
    const double diff = perturb(ck);
    for (std::size_t j = 0; j < n; ++j) x[j] -= ak * diff / (2.0 * ck * delta[j]);
    eval.project(x);
  }
  eval(x);
}

}  // namespace vqeb::detail
