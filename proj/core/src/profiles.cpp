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

#include "vqebench/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace vqeb {
namespace {

// The start point x~ is known before any step, so evaluation 1 is available
// at t = 0; evaluation k > 1 becomes available once k <= t (n + 1).
std::size_t available(const RunRecord& r, int t) {
  const std::size_t by_grid = static_cast<std::size_t>(t) * (r.num_params + 1);
  return std::min(r.energies.size(), std::max<std::size_t>(1, by_grid));
}

double time_of(std::size_t k, const RunRecord& r) {
  return k <= 1 ? 0.0 : normalized_iteration(k, r.num_params);
}

bool lucky_start(const RunRecord& r) { return r.initial_value - r.optimum <= kOptimalTolerance; }

// 1-based index of the first evaluation meeting the convergence test, 0 if never.
std::size_t convergence_index(const RunRecord& r, double tau) {
  if (r.energies.empty()) return 0;
  if (lucky_start(r)) return 1;
  const double gap = r.initial_value - r.optimum;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < r.energies.size(); ++k) {
    best = std::min(best, r.energies[k]);
    if (r.initial_value - best >= (1.0 - tau) * gap) return k + 1;
  }
  return 0;
}

std::size_t sampling_index(const RunRecord& r, double rho) {
  if (r.prob_optimal.empty()) return 0;
  if (rho <= 0.0) return 1;
  for (std::size_t k = 0; k < r.prob_optimal.size(); ++k) {
    if (r.prob_optimal[k] >= rho) return k + 1;
  }
  return 0;
}

std::vector<int> make_grid(int grid_max) {
  if (grid_max < 0) throw std::invalid_argument("grid_max must be non-negative");
  std::vector<int> g(static_cast<std::size_t>(grid_max) + 1);
  for (int t = 0; t <= grid_max; ++t) g[static_cast<std::size_t>(t)] = t;
  return g;
}

template <typename IndexFn>
ProfileCurve step_profile(std::span<const RunRecord> records, int grid_max, IndexFn index_of) {
  if (records.empty()) throw std::invalid_argument("profile needs at least one record");
  ProfileCurve c;
  c.grid = make_grid(grid_max);
  c.fraction.assign(c.grid.size(), 0.0);
  c.instances = records.size();
  for (const auto& r : records) {
    const std::size_t k = index_of(r);
    if (k == 0) continue;
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      if (k <= available(r, c.grid[i])) c.fraction[i] += 1.0;
    }
  }
  for (auto& f : c.fraction) f /= static_cast<double>(records.size());
  return c;
}

void write_fixed(std::ostream& os, double v) { os << std::fixed << std::setprecision(6) << v; }

}  // namespace

double convergence_time(const RunRecord& r, double tau) {
  const std::size_t k = convergence_index(r, tau);
  return k == 0 ? std::numeric_limits<double>::infinity() : time_of(k, r);
}

double sampling_time(const RunRecord& r, double rho) {
  const std::size_t k = sampling_index(r, rho);
  return k == 0 ? std::numeric_limits<double>::infinity() : time_of(k, r);
}

ProfileCurve convergence_profile(std::span<const RunRecord> records, double tau, int grid_max) {
  ProfileCurve c =
      step_profile(records, grid_max, [tau](const RunRecord& r) { return convergence_index(r, tau); });
  c.lucky_starts = static_cast<std::size_t>(std::count_if(records.begin(), records.end(), lucky_start));
  return c;
}

ProfileCurve sampling_profile(std::span<const RunRecord> records, double rho, int grid_max) {
  return step_profile(records, grid_max, [rho](const RunRecord& r) { return sampling_index(r, rho); });
}

RatioCurve approx_ratio_profile(std::span<const RunRecord> records, int grid_max) {
  if (records.empty()) throw std::invalid_argument("profile needs at least one record");
  RatioCurve c;
  c.grid = make_grid(grid_max);
  const std::size_t m = c.grid.size();
  std::vector<double> log_sum(m, 0.0);
  c.included.assign(m, 0);
  c.excluded.assign(m, 0);
  for (const auto& r : records) {
    if (r.energies.empty()) {
      for (auto& e : c.excluded) ++e;
      continue;
    }
    std::vector<double> best(r.energies.size());
    std::partial_sum(r.energies.begin(), r.energies.end(), best.begin(),
                     [](double a, double b) { return std::min(a, b); });
    for (std::size_t i = 0; i < m; ++i) {
      const double fb = best[available(r, c.grid[i]) - 1];
      if (auto ratio = approximation_ratio(fb, r.optimum)) {
        log_sum[i] += std::log(*ratio);
        ++c.included[i];
      } else {
        ++c.excluded[i];
      }
    }
  }
  c.geometric_mean.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (c.included[i] > 0) c.geometric_mean[i] = std::exp(log_sum[i] / static_cast<double>(c.included[i]));
  }
  return c;
}

std::vector<double> profile_difference(const ProfileCurve& a, const ProfileCurve& b) {
  if (a.grid != b.grid) throw std::invalid_argument("profiles have different grids");
  std::vector<double> d(a.fraction.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.fraction[i] - b.fraction[i];
  return d;
}

std::string group_label(const RunRecord& r, GroupBy by) {
  std::string label = to_string(r.algorithm) + "_" + r.form.on(r.num_qubits).label();
  if (by == GroupBy::OptimizerAndClass) label = to_string(r.problem_class) + "_" + label;
  return label;
}

void write_profile_csv(std::ostream& os, const std::vector<std::string>& labels,
                       const std::vector<ProfileCurve>& curves) {
  if (labels.size() != curves.size()) throw std::invalid_argument("one label per curve");
  os << "normalized_iter";
  for (const auto& l : labels) os << ',' << l;
  os << '\n';
  if (curves.empty()) return;
  for (std::size_t i = 0; i < curves.front().grid.size(); ++i) {
    os << curves.front().grid[i];
    for (const auto& c : curves) {
      os << ',';
      write_fixed(os, c.fraction.at(i));
    }
    os << '\n';
  }
}

void write_ratio_csv(std::ostream& os, const std::vector<std::string>& labels,
                     const std::vector<RatioCurve>& curves) {
  if (labels.size() != curves.size()) throw std::invalid_argument("one label per curve");
  os << "normalized_iter";
  for (const auto& l : labels) os << ',' << l << ',' << l << "_excluded";
  os << '\n';
  if (curves.empty()) return;
  for (std::size_t i = 0; i < curves.front().grid.size(); ++i) {
    os << curves.front().grid[i];
    for (const auto& c : curves) {
      os << ',';
      if (c.geometric_mean.at(i)) write_fixed(os, *c.geometric_mean[i]);
      os << ',' << c.excluded.at(i);
    }
    os << '\n';
  }
}

}  // namespace vqeb
