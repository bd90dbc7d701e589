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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vqebench/ising.hpp"

namespace vqeb {

using Amplitude = std::complex<double>;

enum class Entangler { None, FullCZ, NearestNeighborCZ, TGate };

std::string to_string(Entangler e);
Entangler parse_entangler(const std::string& name);

/// Layered ansatz: a bare Ry layer, then (entangler block, Ry layer) for each
/// further layer. Each layer carries one angle per qubit.
struct VariationalForm {
  int num_qubits = 1;
  int layers = 1;
  Entangler entangler = Entangler::FullCZ;

  std::size_t parameter_count() const noexcept {
    return static_cast<std::size_t>(num_qubits) * static_cast<std::size_t>(layers);
  }
  /// Short label such as "2L-CZ", "1L", "3L-T", "2L-NN".
  std::string label() const;
  void validate() const;
};

/// 2^q amplitudes, index z little-endian in qubits (qubit 0 = least significant bit).
class Statevector {
 public:
  /// |0...0>.
  explicit Statevector(int num_qubits);
  Statevector(int num_qubits, std::vector<Amplitude> amplitudes);

  int num_qubits() const noexcept { return q_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t z) const { return amps_[z]; }

  double norm_squared() const noexcept;

  // Gate kernels. Diagonal gates are elementwise phase updates; Ry is a
  // two-amplitude butterfly.
  void apply_ry(int qubit, double angle);
  void apply_cz(int a, int b);
  void apply_t(int qubit);
  /// CZ on every pair; the product has sign (-1)^(k(k-1)/2) for popcount k.
  void apply_cz_all_pairs();
  void apply_cz_chain();
  void apply_t_all();

 private:
  void check_qubit(int qubit) const;

  int q_;
  std::vector<Amplitude> amps_;
};

/// U(theta)|0...0> for the given form. Throws std::invalid_argument on a
/// parameter-count mismatch and CapacityError above max_qubits.
Statevector prepare_state(const VariationalForm& form, std::span<const double> theta,
                          int max_qubits = kDefaultMaxQubits);

/// sum_z |psi_z|^2 diag(h)[z].
double energy(const Statevector& psi, const DiagonalHamiltonian& h);
double energy(const Statevector& psi, std::span<const double> diagonal);

/// Probability mass on the given basis states.
double prob_optimal(const Statevector& psi, std::span<const std::uint64_t> optimal_set);

}  // namespace vqeb
