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

#include "vqebench/simulator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqeb {

std::string to_string(Entangler e) {
  switch (e) {
    case Entangler::None: return "none";
    case Entangler::FullCZ: return "full_cz";
    case Entangler::NearestNeighborCZ: return "nn_cz";
    case Entangler::TGate: return "t_gate";
  }
  return "unknown";
}

Entangler parse_entangler(const std::string& name) {
  if (name == "none") return Entangler::None;
  if (name == "full_cz" || name == "cz") return Entangler::FullCZ;
  if (name == "nn_cz" || name == "nearest_neighbor_cz") return Entangler::NearestNeighborCZ;
  if (name == "t_gate" || name == "t") return Entangler::TGate;
  throw std::invalid_argument("unknown entangler '" + name + "' (expected none|full_cz|nn_cz|t_gate)");
}

std::string VariationalForm::label() const {
  std::string s = std::to_string(layers) + "L";
  if (layers == 1) return s;
  switch (entangler) {
    case Entangler::None: return s;
    case Entangler::FullCZ: return s + "-CZ";
    case Entangler::NearestNeighborCZ: return s + "-NN";
    case Entangler::TGate: return s + "-T";
  }
  return s;
}

void VariationalForm::validate() const {
  if (num_qubits < 1) throw std::invalid_argument("VariationalForm: need at least one qubit");
  if (layers < 1) throw std::invalid_argument("VariationalForm: need at least one layer");
  if (entangler == Entangler::None && layers != 1) {
    throw std::invalid_argument("VariationalForm: entangler 'none' requires exactly one layer");
  }
}

Statevector::Statevector(int num_qubits) : q_(num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("Statevector: need at least one qubit");
  if (num_qubits > 30) throw CapacityError("Statevector: too many qubits");
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(int num_qubits, std::vector<Amplitude> amplitudes)
    : q_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits < 1 || num_qubits > 30 || amps_.size() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("Statevector: amplitude count must be 2^q");
  }
}

double Statevector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void Statevector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= q_) throw std::out_of_range("Statevector: qubit index out of range");
}

void Statevector::apply_ry(int qubit, double angle) {
  check_qubit(qubit);
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i + stride];
      amps_[i] = c * a0 - s * a1;
      amps_[i + stride] = s * a0 + c * a1;
    }
  }
}

void Statevector::apply_cz(int a, int b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw std::invalid_argument("Statevector: CZ needs two distinct qubits");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    if ((z & mask) == mask) amps_[z] = -amps_[z];
  }
}

void Statevector::apply_t(int qubit) {
  check_qubit(qubit);
  const Amplitude phase = std::polar(1.0, std::numbers::pi / 4.0);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    if (z & bit) amps_[z] *= phase;
  }
}

void Statevector::apply_cz_all_pairs() {
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    const auto k = static_cast<unsigned>(std::popcount(z));
    if (((k * (k - 1) / 2) & 1U) != 0) amps_[z] = -amps_[z];
  }
}

void Statevector::apply_cz_chain() {
  const std::size_t low = amps_.size() - 1;
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    if (std::popcount(z & (z >> 1) & low) & 1) amps_[z] = -amps_[z];
  }
}

void Statevector::apply_t_all() {
  Amplitude phases[8];
  for (int k = 0; k < 8; ++k) phases[k] = std::polar(1.0, k * std::numbers::pi / 4.0);
  for (std::size_t z = 0; z < amps_.size(); ++z) amps_[z] *= phases[std::popcount(z) & 7];
}

Statevector prepare_state(const VariationalForm& form, std::span<const double> theta,
                          int max_qubits) {
  form.validate();
  if (form.num_qubits > max_qubits) {
    throw CapacityError("prepare_state: " + std::to_string(form.num_qubits) +
                        " qubits exceeds the limit of " + std::to_string(max_qubits));
  }
  if (theta.size() != form.parameter_count()) {
    throw std::invalid_argument("prepare_state: expected " + std::to_string(form.parameter_count()) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  const int q = form.num_qubits;
  Statevector psi(q);
  for (int layer = 0; layer < form.layers; ++layer) {
    if (layer > 0) {
      switch (form.entangler) {
        case Entangler::None: break;
        case Entangler::FullCZ: psi.apply_cz_all_pairs(); break;
        case Entangler::NearestNeighborCZ: psi.apply_cz_chain(); break;
        case Entangler::TGate: psi.apply_t_all(); break;
      }
    }
    for (int j = 0; j < q; ++j) {
      psi.apply_ry(j, theta[static_cast<std::size_t>(layer) * q + j]);
    }
  }
  return psi;
}

double energy(const Statevector& psi, std::span<const double> diagonal) {
  if (diagonal.size() != psi.dimension()) {
    throw std::invalid_argument("energy: Hamiltonian and state dimensions differ");
  }
  double e = 0.0;
  const auto amps = psi.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) e += std::norm(amps[z]) * diagonal[z];
  return e;
}

double energy(const Statevector& psi, const DiagonalHamiltonian& h) {
  if (h.num_qubits() != psi.num_qubits()) {
    throw std::invalid_argument("energy: Hamiltonian and state qubit counts differ");
  }
  return energy(psi, h.diagonal());
}

double prob_optimal(const Statevector& psi, std::span<const std::uint64_t> optimal_set) {
  double p = 0.0;
  for (std::uint64_t z : optimal_set) {
    if (z >= psi.dimension()) throw std::out_of_range("prob_optimal: basis index out of range");
    p += std::norm(psi[z]);
  }
  return p;
}

}  // namespace vqeb
