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

// Surrogate-based global search. Each iteration fits a cubic RBF with a
// linear tail, draws candidates (Gaussian perturbations of the incumbent at
// three scales plus uniform box samples) and evaluates the candidate that
// minimizes a weighted mix of normalized surrogate value and closeness to
// already-sampled points. Cycling the weight alternates between exploration
// (low weight) and local refinement (high weight).

#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "optim_detail.hpp"
#include "vqebench/rng.hpp"

namespace vqeb {

void CubicRbfSurrogate::fit(std::span<const double> points, std::span<const double> values,
                            std::size_t dim) {
  if (dim == 0 || points.size() % dim != 0 || points.size() / dim != values.size()) {
    throw std::invalid_argument("CubicRbfSurrogate: inconsistent point/value sizes");
  }
  const std::size_t m = values.size();
  if (m < dim + 1) throw std::invalid_argument("CubicRbfSurrogate: need at least dim + 1 points");
  const auto N = static_cast<Eigen::Index>(m);
  const auto T = static_cast<Eigen::Index>(dim + 1);

  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(N + T, N + T);
  for (Eigen::Index i = 0; i < N; ++i) {
    const double* pi = &points[static_cast<std::size_t>(i) * dim];
    for (Eigen::Index k = i + 1; k < N; ++k) {
      const double* pk = &points[static_cast<std::size_t>(k) * dim];
      double r2 = 0.0;
      for (std::size_t j = 0; j < dim; ++j) r2 += (pi[j] - pk[j]) * (pi[j] - pk[j]);
      const double r = std::sqrt(r2);
      system(i, k) = system(k, i) = r * r2;
    }
    system(i, N) = system(N, i) = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const auto col = N + 1 + static_cast<Eigen::Index>(j);
      system(i, col) = system(col, i) = pi[j];
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + T);
  for (Eigen::Index i = 0; i < N; ++i) rhs(i) = values[static_cast<std::size_t>(i)];

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (!(lu.rcond() > 1e-14)) throw std::runtime_error("CubicRbfSurrogate: singular system");
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite()) throw std::runtime_error("CubicRbfSurrogate: singular system");

  dim_ = dim;
  count_ = m;
  centers_.assign(points.begin(), points.end());
  lambda_.assign(sol.data(), sol.data() + N);
  tail_.assign(sol.data() + N, sol.data() + N + T);
}

double CubicRbfSurrogate::operator()(std::span<const double> x) const {
  double unused = 0.0;
  return evaluate(x, unused);
}

double CubicRbfSurrogate::evaluate(std::span<const double> x, double& nearest_sq) const {
  double s = tail_[0];
  for (std::size_t j = 0; j < dim_; ++j) s += tail_[j + 1] * x[j];
  nearest_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count_; ++i) {
    const double* c = &centers_[i * dim_];
    double r2 = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) r2 += (x[j] - c[j]) * (x[j] - c[j]);
    nearest_sq = std::min(nearest_sq, r2);
    s += lambda_[i] * r2 * std::sqrt(r2);
  }
  return s;
}

namespace detail {

void run_rbf(Evaluator& eval, std::vector<double> x, const RbfOptions& opts, std::uint64_t seed) {
  const std::size_t n = eval.dimension();
  Rng rng(derive_seed(seed, "rbf"));

  // Work in the unit cube.
  std::vector<double> lo(n), width(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = eval.lower(j);
    width[j] = eval.upper(j) - eval.lower(j);
  }
  std::vector<double> unit;    // all evaluated points, row-major
  std::vector<double> values;  // matching objective values
  std::vector<double> raw(n);
  auto evaluate_unit = [&](std::span<const double> u) {
    for (std::size_t j = 0; j < n; ++j) raw[j] = std::clamp(lo[j] + width[j] * u[j], eval.lower(j), eval.upper(j));
    const double f = eval(raw);
    unit.insert(unit.end(), u.begin(), u.end());
    values.push_back(f);
  };

  std::vector<double> u0(n);
  for (std::size_t j = 0; j < n; ++j) u0[j] = (x[j] - lo[j]) / width[j];
  evaluate_unit(u0);

  // Latin hypercube with n + 1 strata for the initial design.
  const std::size_t strata = n + 1;
  std::vector<std::vector<std::size_t>> perms(n, std::vector<std::size_t>(strata));
  for (auto& p : perms) {
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = strata - 1; i > 0; --i) {
      std::swap(p[i], p[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
    }
  }
  std::vector<double> u(n);
  for (std::size_t i = 0; i < strata; ++i) {
    for (std::size_t j = 0; j < n; ++j) u[j] = (static_cast<double>(perms[j][i]) + rng.uniform01()) / strata;
    evaluate_unit(u);
  }

  const std::size_t fit_cap = opts.max_fit_points > 0
                                  ? std::max<std::size_t>(static_cast<std::size_t>(opts.max_fit_points), n + 2)
                                  : std::max<std::size_t>(80, 3 * (n + 1));
  const std::size_t num_candidates = static_cast<std::size_t>(
      std::max(1, std::min(opts.candidates_per_dim * static_cast<int>(n), opts.max_candidates)));
  const auto num_uniform = static_cast<std::size_t>(opts.uniform_fraction * static_cast<double>(num_candidates));

  CubicRbfSurrogate surrogate;
  std::vector<double> fit_points;
  std::vector<double> fit_values;
  std::vector<std::size_t> order;
  std::vector<double> cand(num_candidates * n);
  std::vector<double> cand_s(num_candidates), cand_d(num_candidates);

  for (std::size_t iter = 0;; ++iter) {
    const std::size_t count = values.size();
    order.resize(count);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t k = std::min(count, fit_cap);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    fit_points.clear();
    fit_values.clear();
    for (std::size_t i = 0; i < k; ++i) {
      fit_points.insert(fit_points.end(), unit.begin() + static_cast<std::ptrdiff_t>(order[i] * n),
                        unit.begin() + static_cast<std::ptrdiff_t>((order[i] + 1) * n));
      fit_values.push_back(values[order[i]]);
    }
    const double* best = &unit[order[0] * n];

    bool have_model = true;
    try {
      surrogate.fit(fit_points, fit_values, n);
    } catch (const std::runtime_error&) {
      have_model = false;
    }

    for (std::size_t c = 0; c < num_candidates; ++c) {
      double* p = &cand[c * n];
      if (c < num_uniform || !have_model) {
        for (std::size_t j = 0; j < n; ++j) p[j] = rng.uniform01();
      } else {
        const double sigma = opts.local_scales[(c - num_uniform) % opts.local_scales.size()];
        for (std::size_t j = 0; j < n; ++j) p[j] = std::clamp(best[j] + sigma * rng.normal(), 0.0, 1.0);
      }
    }
    if (!have_model) {
      evaluate_unit(std::span<const double>(cand.data(), n));
      continue;
    }

    double smin = std::numeric_limits<double>::infinity(), smax = -smin, dmax = 0.0;
    for (std::size_t c = 0; c < num_candidates; ++c) {
      const std::span<const double> p(&cand[c * n], n);
      double dmin = 0.0;
      cand_s[c] = surrogate.evaluate(p, dmin);
      cand_d[c] = std::sqrt(dmin);
      smin = std::min(smin, cand_s[c]);
      smax = std::max(smax, cand_s[c]);
      dmax = std::max(dmax, cand_d[c]);
    }

    const double w = opts.weight_cycle[iter % opts.weight_cycle.size()];
    std::size_t pick = num_candidates;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < num_candidates; ++c) {
      if (cand_d[c] < 1e-9) continue;
      const double sn = smax > smin ? (cand_s[c] - smin) / (smax - smin) : 0.0;
      const double dn = dmax > 0.0 ? cand_d[c] / dmax : 0.0;
      const double score = w * sn + (1.0 - w) * (1.0 - dn);
      if (score < best_score) {
        best_score = score;
        pick = c;
      }
    }
    if (pick == num_candidates) pick = 0;
    evaluate_unit(std::span<const double>(&cand[pick * n], n));
  }
}

}  // namespace detail
}  // namespace vqeb
