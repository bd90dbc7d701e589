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

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace vqeb {

/// Raised when a dense 2^q object would exceed the configured qubit limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultMaxQubits = 20;
inline constexpr double kCoefficientDropout = 1e-12;
inline constexpr double kEigenvalueTolerance = 1e-9;

/// Binary quadratic objective f(x) = c^T x + x^T Q x + constant over x in {0,1}^q.
///
/// Bit j of an integer bit string z is variable x_j. Q is kept symmetric: a
/// pair coefficient v on x_i x_j is stored as v/2 in both Q[i][j] and Q[j][i].
class QuboProblem {
 public:
  explicit QuboProblem(int num_vars);

  int num_vars() const noexcept { return q_; }

  /// Adds value * x_i * x_j to the objective. i == j adds to the diagonal.
  void add_quadratic(int i, int j, double value);
  void add_linear(int i, double value);
  void add_constant(double value) noexcept { constant_ += value; }

  double quadratic(int i, int j) const { return Q_[static_cast<std::size_t>(i) * q_ + j]; }
  double linear(int i) const { return c_[static_cast<std::size_t>(i)]; }
  double constant() const noexcept { return constant_; }

  /// Q with c folded onto its diagonal (x^2 = x for binary x), row-major.
  std::vector<double> folded_matrix() const;

  double objective(std::uint64_t bits) const;

 private:
  void check_index(int i) const;

  int q_;
  std::vector<double> Q_;
  std::vector<double> c_;
  double constant_ = 0.0;
};

struct PauliZTerm {
  std::uint64_t support = 0;  // bit k set <=> Z acts on qubit k
  double coeff = 0.0;

  friend bool operator==(const PauliZTerm&, const PauliZTerm&) = default;
};

/// Weighted sum of Z-tensor-product terms plus an identity constant.
///
/// Terms are merged by support, sorted by support bitmask, and terms with
/// |coeff| <= kCoefficientDropout are dropped at construction. The dense
/// diagonal is computed once on first request and shared between copies.
class DiagonalHamiltonian {
 public:
  DiagonalHamiltonian(int num_qubits, std::vector<PauliZTerm> terms, double constant = 0.0);

  int num_qubits() const noexcept { return q_; }
  std::span<const PauliZTerm> terms() const noexcept { return terms_; }
  double constant() const noexcept { return constant_; }

  /// Entry z is constant + sum coeff * (-1)^popcount(z & support).
  /// Throws CapacityError when num_qubits() > max_qubits.
  std::span<const double> diagonal(int max_qubits = kDefaultMaxQubits) const&;
  // The span would outlive a temporary's cache.
  std::span<const double> diagonal(int max_qubits = kDefaultMaxQubits) const&& = delete;

  /// Same Hamiltonian plus shift * I.
  DiagonalHamiltonian shifted(double shift) const;

 private:
  struct DiagonalCache;

  int q_;
  std::vector<PauliZTerm> terms_;
  double constant_;
  std::shared_ptr<DiagonalCache> cache_;
};

/// Spin convention: bit b maps to spin y = 1 - 2b, so |0> carries spin +1 and
/// the diagonal entry for bit string z equals p.objective(z).
DiagonalHamiltonian qubo_to_ising(const QuboProblem& p);

/// Inverse map for Hamiltonians whose terms act on at most two qubits.
QuboProblem ising_to_qubo(const DiagonalHamiltonian& h);

struct SpectrumStats {
  std::size_t term_count = 0;
  std::size_t distinct_eigenvalues = 0;
  double density = 0.0;
  double negative_eig_fraction = 0.0;
};

/// Number of classes of sorted values where consecutive entries differ by at
/// most tol.
std::size_t count_distinct(std::span<const double> values, double tol = kEigenvalueTolerance);

SpectrumStats spectrum_stats(const DiagonalHamiltonian& h, const QuboProblem& p,
                             double tol = kEigenvalueTolerance);

/// Same as spectrum_stats but without the QUBO-derived fields (density and
/// negative_eig_fraction are left at 0).
SpectrumStats hamiltonian_stats(const DiagonalHamiltonian& h, double tol = kEigenvalueTolerance);

enum class WeightMode { Discrete, Continuous };

/// num_pairs random Z_i Z_j terms with i != j drawn uniformly; repeated pairs
/// are merged. Discrete weights are +-1, continuous weights uniform in [-1, 1].
DiagonalHamiltonian random_zz_hamiltonian(int num_qubits, int num_pairs, WeightMode mode,
                                          std::uint64_t seed);

WeightMode parse_weight_mode(const std::string& name);
std::string to_string(WeightMode mode);

// Serialization: {q, constant, terms: [{support: [ascending qubits], coeff}]}.
void to_json(nlohmann::json& j, const DiagonalHamiltonian& h);
DiagonalHamiltonian hamiltonian_from_json(const nlohmann::json& j);

}  // namespace vqeb
