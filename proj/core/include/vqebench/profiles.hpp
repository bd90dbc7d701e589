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

#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqebench/harness.hpp"

namespace vqeb {

inline constexpr int kDefaultGridMax = 100;

/// Data-profile curve on the integer grid 0..grid_max of equivalent gradient
/// iterations. Evaluation k of a record with n parameters lies at k / (n + 1).
struct ProfileCurve {
  std::vector<int> grid;
  std::vector<double> fraction;
  std::size_t instances = 0;
  std::size_t lucky_starts = 0;  // records with f(x~) == f*, counted as converged at 0
};

struct RatioCurve {
  std::vector<int> grid;
  std::vector<std::optional<double>> geometric_mean;
  std::vector<std::size_t> included;
  std::vector<std::size_t> excluded;
};

/// Normalized iteration at which the record first satisfies
/// f <= f* + tau (f(x~) - f*), i.e. f(x~) - f >= (1 - tau)(f(x~) - f*).
/// Records starting at the optimum converge at 0; never converging gives +inf.
double convergence_time(const RunRecord& r, double tau);

/// First normalized iteration with prob_optimal >= rho (0 if rho <= 0).
double sampling_time(const RunRecord& r, double rho);

/// Throws std::invalid_argument on an empty record set.
ProfileCurve convergence_profile(std::span<const RunRecord> records, double tau,
                                 int grid_max = kDefaultGridMax);
ProfileCurve sampling_profile(std::span<const RunRecord> records, double rho,
                              int grid_max = kDefaultGridMax);
RatioCurve approx_ratio_profile(std::span<const RunRecord> records, int grid_max = kDefaultGridMax);

/// Pointwise a - b; both curves must share the grid.
std::vector<double> profile_difference(const ProfileCurve& a, const ProfileCurve& b);

/// Series label used to group records in reports.
enum class GroupBy { Optimizer, OptimizerAndClass };
std::string group_label(const RunRecord& r, GroupBy by);

void write_profile_csv(std::ostream& os, const std::vector<std::string>& labels,
                       const std::vector<ProfileCurve>& curves);
void write_ratio_csv(std::ostream& os, const std::vector<std::string>& labels,
                     const std::vector<RatioCurve>& curves);

struct SpectrumRow {
  std::string family;  // class name or "random_zz"
  int num_qubits = 0;
  int pairs = 0;        // random_zz only
  std::string weights;  // random_zz only
  std::size_t samples = 0;
  double term_count = 0.0;
  double distinct_eigenvalues = 0.0;
  double density = 0.0;
  double negative_eig_fraction = 0.0;
  // Mean and standard deviation (across instances) of the per-instance mean
  // approximation ratio over feasible strings; class rows only.
  double ratio_mean = std::numeric_limits<double>::quiet_NaN();
  double ratio_std = std::numeric_limits<double>::quiet_NaN();
};

/// Averages over cfg.seeds for every admissible (class, q), then the random
/// ZZ sweep if configured.
std::vector<SpectrumRow> spectrum_report(const ExperimentConfig& cfg);
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);

}  // namespace vqeb
