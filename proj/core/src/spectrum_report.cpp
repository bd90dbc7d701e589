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

#include <cmath>
#include <iomanip>
#include <ostream>

#include "vqebench/profiles.hpp"

namespace vqeb {
namespace {

struct Mean {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : std::nan(""); }
  double stddev() const {
    if (n == 0) return std::nan("");
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / static_cast<double>(n) - m * m));
  }
};

struct StatsAccumulator {
  Mean terms, distinct, density, negative;

  void add(const SpectrumStats& s) {
    terms.add(static_cast<double>(s.term_count));
    distinct.add(static_cast<double>(s.distinct_eigenvalues));
    density.add(s.density);
    negative.add(s.negative_eig_fraction);
  }
  void fill(SpectrumRow& row) const {
    row.samples = terms.n;
    row.term_count = terms.mean();
    row.distinct_eigenvalues = distinct.mean();
    row.density = density.mean();
    row.negative_eig_fraction = negative.mean();
  }
};

void write_value(std::ostream& os, double v) {
  if (std::isfinite(v)) os << std::fixed << std::setprecision(6) << v;
}

}  // namespace

std::vector<SpectrumRow> spectrum_report(const ExperimentConfig& cfg) {
  std::vector<SpectrumRow> rows;
  for (auto c : cfg.classes) {
    for (int q : cfg.qubits) {
      if (!class_admits(c, q)) continue;
      StatsAccumulator acc;
      Mean ratio;
      for (auto seed : cfg.seeds) {
        const ProblemInstance inst = gen_instance(c, q, seed);
        const QuboProblem qubo = encode(inst);
        const DiagonalHamiltonian h = qubo_to_ising(qubo);
        acc.add(spectrum_stats(h, qubo));
        const ExactSolution sol = solve(h);
        const ValueDistribution d = value_distribution_stats(sol, inst, h);
        if (d.ratios.count > 0) ratio.add(d.ratios.mean);
      }
      SpectrumRow row;
      row.family = to_string(c);
      row.num_qubits = q;
      acc.fill(row);
      row.ratio_mean = ratio.mean();
      row.ratio_std = ratio.stddev();
      rows.push_back(std::move(row));
    }
  }

  if (cfg.random_zz) {
    for (auto mode : cfg.random_zz->weights) {
      for (int q : cfg.random_zz->qubits) {
        for (int pairs : cfg.random_zz->pairs) {
          StatsAccumulator acc;
          for (auto seed : cfg.seeds) {
            const DiagonalHamiltonian h = random_zz_hamiltonian(q, pairs, mode, seed);
            acc.add(spectrum_stats(h, ising_to_qubo(h)));
          }
          SpectrumRow row;
          row.family = "random_zz";
          row.num_qubits = q;
          row.pairs = pairs;
          row.weights = to_string(mode);
          acc.fill(row);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
  os << "family,qubits,pairs,weights,samples,term_count,distinct_eigenvalues,density,"
        "negative_eig_fraction,ratio_mean,ratio_std\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.num_qubits << ',';
    if (r.pairs > 0) os << r.pairs;
    os << ',' << r.weights << ',' << r.samples << ',';
    write_value(os, r.term_count);
    os << ',';
    write_value(os, r.distinct_eigenvalues);
    os << ',';
    write_value(os, r.density);
    os << ',';
    write_value(os, r.negative_eig_fraction);
    os << ',';
    write_value(os, r.ratio_mean);
    os << ',';
    write_value(os, r.ratio_std);
    os << '\n';
  }
}

}  // namespace vqeb
