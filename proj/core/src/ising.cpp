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

#include "vqebench/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include <nlohmann/json.hpp>

#include "vqebench/jacobi.hpp"
#include "vqebench/rng.hpp"

namespace vqeb {

QuboProblem::QuboProblem(int num_vars) : q_(num_vars) {
  if (num_vars < 1) throw std::invalid_argument("QuboProblem: need at least one variable");
  if (num_vars > 63) throw CapacityError("QuboProblem: at most 63 variables are supported");
  Q_.assign(static_cast<std::size_t>(q_) * q_, 0.0);
  c_.assign(static_cast<std::size_t>(q_), 0.0);
}

void QuboProblem::check_index(int i) const {
  if (i < 0 || i >= q_) throw std::out_of_range("QuboProblem: variable index out of range");
}

void QuboProblem::add_quadratic(int i, int j, double value) {
  check_index(i);
  check_index(j);
  if (i == j) {
    Q_[static_cast<std::size_t>(i) * q_ + i] += value;
    return;
  }
  Q_[static_cast<std::size_t>(i) * q_ + j] += 0.5 * value;
  Q_[static_cast<std::size_t>(j) * q_ + i] += 0.5 * value;
}

void QuboProblem::add_linear(int i, double value) {
  check_index(i);
  c_[static_cast<std::size_t>(i)] += value;
}

std::vector<double> QuboProblem::folded_matrix() const {
  std::vector<double> m = Q_;
  for (int i = 0; i < q_; ++i) m[static_cast<std::size_t>(i) * q_ + i] += c_[i];
  return m;
}

double QuboProblem::objective(std::uint64_t bits) const {
  double value = constant_;
  for (int i = 0; i < q_; ++i) {
    if (((bits >> i) & 1U) == 0) continue;
    value += c_[i];
    const double* row = &Q_[static_cast<std::size_t>(i) * q_];
    for (int j = 0; j < q_; ++j) {
      if ((bits >> j) & 1U) value += row[j];
    }
  }
  return value;
}

struct DiagonalHamiltonian::DiagonalCache {
  std::once_flag once;
  std::vector<double> values;
};

DiagonalHamiltonian::DiagonalHamiltonian(int num_qubits, std::vector<PauliZTerm> terms,
                                         double constant)
    : q_(num_qubits), constant_(constant), cache_(std::make_shared<DiagonalCache>()) {
  if (num_qubits < 1) throw std::invalid_argument("DiagonalHamiltonian: need at least one qubit");
  if (num_qubits > 63) throw CapacityError("DiagonalHamiltonian: at most 63 qubits are supported");
  const std::uint64_t mask = (std::uint64_t{1} << num_qubits) - 1;

  std::map<std::uint64_t, double> merged;
  for (const auto& t : terms) {
    if ((t.support & ~mask) != 0) {
      throw std::invalid_argument("DiagonalHamiltonian: term acts outside the register");
    }
    if (t.support == 0) {
      constant_ += t.coeff;
    } else {
      merged[t.support] += t.coeff;
    }
  }
  terms_.reserve(merged.size());
  for (const auto& [support, coeff] : merged) {
    if (std::abs(coeff) > kCoefficientDropout) terms_.push_back({support, coeff});
  }
}

std::span<const double> DiagonalHamiltonian::diagonal(int max_qubits) const& {
  if (q_ > max_qubits) {
    throw CapacityError("diagonal: " + std::to_string(q_) + " qubits exceeds the limit of " +
                        std::to_string(max_qubits));
  }
  std::call_once(cache_->once, [this] {
    const std::size_t dim = std::size_t{1} << q_;
    std::vector<double> d(dim, constant_);
    for (const auto& t : terms_) {
      for (std::size_t z = 0; z < dim; ++z) {
        d[z] += (std::popcount(z & t.support) & 1) ? -t.coeff : t.coeff;
      }
    }
    cache_->values = std::move(d);
  });
  return cache_->values;
}

DiagonalHamiltonian DiagonalHamiltonian::shifted(double shift) const {
  return DiagonalHamiltonian(q_, terms_, constant_ + shift);
}

DiagonalHamiltonian qubo_to_ising(const QuboProblem& p) {
  const int q = p.num_vars();
  std::vector<PauliZTerm> terms;
  double constant = p.constant();
  auto single = [](int i) { return std::uint64_t{1} << i; };

  // x_i = (1 - Z_i) / 2 and x_i x_j = (1 - Z_i - Z_j + Z_i Z_j) / 4.
  for (int i = 0; i < q; ++i) {
    const double lin = p.linear(i) + p.quadratic(i, i);
    constant += 0.5 * lin;
    terms.push_back({single(i), -0.5 * lin});
    for (int j = i + 1; j < q; ++j) {
      const double pair = p.quadratic(i, j) + p.quadratic(j, i);
      if (pair == 0.0) continue;
      constant += 0.25 * pair;
      terms.push_back({single(i), -0.25 * pair});
      terms.push_back({single(j), -0.25 * pair});
      terms.push_back({single(i) | single(j), 0.25 * pair});
    }
  }
  return DiagonalHamiltonian(q, std::move(terms), constant);
}

QuboProblem ising_to_qubo(const DiagonalHamiltonian& h) {
  QuboProblem p(h.num_qubits());
  p.add_constant(h.constant());
  // Z_i = 1 - 2 x_i and Z_i Z_j = 1 - 2 x_i - 2 x_j + 4 x_i x_j.
  for (const auto& t : h.terms()) {
    const int weight = std::popcount(t.support);
    if (weight == 1) {
      const int i = std::countr_zero(t.support);
      p.add_constant(t.coeff);
      p.add_linear(i, -2.0 * t.coeff);
    } else if (weight == 2) {
      const int i = std::countr_zero(t.support);
      const int j = 63 - std::countl_zero(t.support);
      p.add_constant(t.coeff);
      p.add_linear(i, -2.0 * t.coeff);
      p.add_linear(j, -2.0 * t.coeff);
      p.add_quadratic(i, j, 4.0 * t.coeff);
    } else {
      throw std::invalid_argument("ising_to_qubo: terms must act on at most two qubits");
    }
  }
  return p;
}

std::size_t count_distinct(std::span<const double> values, double tol) {
  if (values.empty()) return 0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t classes = 1;
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k] - sorted[k - 1] > tol) ++classes;
  }
  return classes;
}

SpectrumStats hamiltonian_stats(const DiagonalHamiltonian& h, double tol) {
  SpectrumStats s;
  s.term_count = h.terms().size();
  s.distinct_eigenvalues = count_distinct(h.diagonal(), tol);
  return s;
}

SpectrumStats spectrum_stats(const DiagonalHamiltonian& h, const QuboProblem& p, double tol) {
  if (h.num_qubits() != p.num_vars()) {
    throw std::invalid_argument("spectrum_stats: Hamiltonian and QUBO sizes differ");
  }
  SpectrumStats s = hamiltonian_stats(h, tol);
  const int q = p.num_vars();
  const std::vector<double> m = p.folded_matrix();
  const auto nonzeros = std::count_if(m.begin(), m.end(), [](double v) {
    return std::abs(v) > kCoefficientDropout;
  });
  s.density = static_cast<double>(nonzeros) / static_cast<double>(m.size());

  const JacobiResult eig = jacobi_eigenvalues(m, q);
  double scale = 0.0;
  for (double v : eig.eigenvalues) scale = std::max(scale, std::abs(v));
  const double cutoff = 1e-12 * std::max(1.0, scale);
  const auto negative = std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                      [cutoff](double v) { return v < -cutoff; });
  s.negative_eig_fraction = static_cast<double>(negative) / static_cast<double>(q);
  return s;
}

DiagonalHamiltonian random_zz_hamiltonian(int num_qubits, int num_pairs, WeightMode mode,
                                          std::uint64_t seed) {
  if (num_qubits < 2) throw std::invalid_argument("random_zz_hamiltonian: need q >= 2");
  if (num_pairs < 1) throw std::invalid_argument("random_zz_hamiltonian: need at least one pair");
  Rng rng(derive_seed(seed, "random-zz"));
  std::vector<PauliZTerm> terms;
  terms.reserve(static_cast<std::size_t>(num_pairs));
  for (int k = 0; k < num_pairs; ++k) {
    const auto i = rng.uniform_int(0, num_qubits - 1);
    auto j = rng.uniform_int(0, num_qubits - 2);
    if (j >= i) ++j;
    const double w = mode == WeightMode::Discrete ? (rng.bernoulli() ? 1.0 : -1.0)
                                                  : rng.uniform(-1.0, 1.0);
    terms.push_back({(std::uint64_t{1} << i) | (std::uint64_t{1} << j), w});
  }
  return DiagonalHamiltonian(num_qubits, std::move(terms));
}

WeightMode parse_weight_mode(const std::string& name) {
  if (name == "discrete") return WeightMode::Discrete;
  if (name == "continuous") return WeightMode::Continuous;
  throw std::invalid_argument("unknown weight mode '" + name + "' (expected discrete|continuous)");
}

std::string to_string(WeightMode mode) {
  return mode == WeightMode::Discrete ? "discrete" : "continuous";
}

void to_json(nlohmann::json& j, const DiagonalHamiltonian& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : h.terms()) {
    std::vector<int> qubits;
    for (int k = 0; k < h.num_qubits(); ++k) {
      if ((t.support >> k) & 1U) qubits.push_back(k);
    }
    terms.push_back({{"support", qubits}, {"coeff", t.coeff}});
  }
  j = {{"q", h.num_qubits()}, {"constant", h.constant()}, {"terms", std::move(terms)}};
}

DiagonalHamiltonian hamiltonian_from_json(const nlohmann::json& j) {
  const int q = j.at("q").get<int>();
  std::vector<PauliZTerm> terms;
  for (const auto& t : j.at("terms")) {
    std::uint64_t support = 0;
    for (int k : t.at("support")) {
      if (k < 0 || k >= q) throw std::invalid_argument("hamiltonian json: qubit out of range");
      support |= std::uint64_t{1} << k;
    }
    terms.push_back({support, t.at("coeff").get<double>()});
  }
  return DiagonalHamiltonian(q, std::move(terms), j.at("constant").get<double>());
}

}  // namespace vqeb
