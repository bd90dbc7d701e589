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

#include <algorithm>
#include <set>
#include <thread>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "vqebench/ising.hpp"
#include "vqebench/jacobi.hpp"
#include "vqebench/rng.hpp"

namespace vqeb {
namespace {

struct RawQubo {
  int q;
  std::vector<std::tuple<int, int, double>> pairs;
  std::vector<double> lin;
  double constant;

  double eval(std::uint64_t z) const {
    auto x = [&](int j) { return static_cast<double>((z >> j) & 1U); };
    double v = constant;
    for (int j = 0; j < q; ++j) v += lin[static_cast<std::size_t>(j)] * x(j);
    for (auto [i, j, w] : pairs) v += w * x(i) * x(j);
    return v;
  }
  QuboProblem build() const {
    QuboProblem p(q);
    for (int j = 0; j < q; ++j) p.add_linear(j, lin[static_cast<std::size_t>(j)]);
    for (auto [i, j, w] : pairs) p.add_quadratic(i, j, w);
    p.add_constant(constant);
    return p;
  }
};

RawQubo random_qubo(Rng& rng, int q, bool integer) {
  auto draw = [&] { return integer ? static_cast<double>(rng.uniform_int(-5, 5)) : rng.uniform(-5, 5); };
  RawQubo r{q, {}, {}, draw()};
  for (int j = 0; j < q; ++j) r.lin.push_back(draw());
  const int npairs = static_cast<int>(rng.uniform_int(0, q * q));
  for (int k = 0; k < npairs; ++k) {
    r.pairs.emplace_back(static_cast<int>(rng.uniform_int(0, q - 1)), static_cast<int>(rng.uniform_int(0, q - 1)),
                         draw());
  }
  return r;
}

TEST(Qubo, StoresSymmetricMatrix) {
  QuboProblem p(3);
  p.add_quadratic(0, 2, 3.0);
  p.add_quadratic(2, 0, 1.0);
  EXPECT_DOUBLE_EQ(p.quadratic(0, 2), 2.0);
  EXPECT_DOUBLE_EQ(p.quadratic(2, 0), 2.0);
  EXPECT_DOUBLE_EQ(p.objective(0b101), 4.0);
}

TEST(Qubo, RejectsNonPositiveSize) { EXPECT_THROW(QuboProblem(0), std::invalid_argument); }

TEST(QuboToIsing, SingleVariable) {
  QuboProblem p(1);
  p.add_linear(0, 1.0);
  const auto h = qubo_to_ising(p);
  EXPECT_DOUBLE_EQ(h.constant(), 0.5);
  ASSERT_EQ(h.terms().size(), 1U);
  EXPECT_EQ(h.terms()[0].support, 1U);
  EXPECT_DOUBLE_EQ(h.terms()[0].coeff, -0.5);
  const auto d = h.diagonal();
  EXPECT_DOUBLE_EQ(d[0], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
}

TEST(QuboToIsing, AndGate) {
  QuboProblem p(2);
  p.add_quadratic(0, 1, 1.0);
  const auto h = qubo_to_ising(p);
  EXPECT_DOUBLE_EQ(h.constant(), 0.25);
  ASSERT_EQ(h.terms().size(), 3U);
  EXPECT_EQ(h.terms()[0], (PauliZTerm{0b01, -0.25}));
  EXPECT_EQ(h.terms()[1], (PauliZTerm{0b10, -0.25}));
  EXPECT_EQ(h.terms()[2], (PauliZTerm{0b11, 0.25}));
  const auto d = h.diagonal();
  EXPECT_EQ(std::vector<double>(d.begin(), d.end()), (std::vector<double>{0, 0, 0, 1}));
}

TEST(QuboToIsing, ThreeVariableIntegerOracle) {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto raw = random_qubo(rng, 3, true);
    const auto h = qubo_to_ising(raw.build());
    const auto d = h.diagonal();
    for (std::uint64_t z = 0; z < 8; ++z) EXPECT_NEAR(d[z], raw.eval(z), 1e-12);
  }
}

TEST(QuboToIsing, RoundTripProperty) {
  Rng rng(2024);
  double worst = 0.0;
  for (int rep = 0; rep < 500; ++rep) {
    const int q = static_cast<int>(rng.uniform_int(1, 10));
    const auto raw = random_qubo(rng, q, rep % 2 == 0);
    const auto h = qubo_to_ising(raw.build());
    const auto d = h.diagonal();
    for (std::uint64_t z = 0; z < d.size(); ++z) worst = std::max(worst, std::abs(d[z] - raw.eval(z)));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Hamiltonian, MergesAndDropsTerms) {
  DiagonalHamiltonian h(3, {{0b011, 1.0}, {0b011, 0.5}, {0b100, 1e-13}, {0b110, 2.0}, {0, 4.0}});
  ASSERT_EQ(h.terms().size(), 2U);
  EXPECT_EQ(h.terms()[0], (PauliZTerm{0b011, 1.5}));
  EXPECT_EQ(h.terms()[1], (PauliZTerm{0b110, 2.0}));
  EXPECT_DOUBLE_EQ(h.constant(), 4.0);
}

TEST(Hamiltonian, SupportOutsideRegisterRejected) {
  EXPECT_THROW(DiagonalHamiltonian(2, {{0b100, 1.0}}), std::invalid_argument);
}

TEST(Diagonal, SingleZ) {
  DiagonalHamiltonian h(1, {{1, 1.0}});
  const auto d = h.diagonal();
  EXPECT_EQ(std::vector<double>(d.begin(), d.end()), (std::vector<double>{1, -1}));
}

TEST(Diagonal, Parity) {
  DiagonalHamiltonian h(2, {{0b11, 1.0}});
  const auto d = h.diagonal();
  EXPECT_EQ(std::vector<double>(d.begin(), d.end()), (std::vector<double>{1, -1, -1, 1}));
}

TEST(Diagonal, CapacityError) {
  DiagonalHamiltonian h(21, {{1, 1.0}});
  EXPECT_THROW(h.diagonal(), CapacityError);
  DiagonalHamiltonian small(4, {{1, 1.0}});
  EXPECT_THROW(small.diagonal(3), CapacityError);
}

TEST(Diagonal, ComputedOnceAcrossThreads) {
  Rng rng(3);
  std::vector<PauliZTerm> terms;
  for (int k = 0; k < 40; ++k) terms.push_back({static_cast<std::uint64_t>(rng.uniform_int(1, (1 << 14) - 1)), rng.uniform(-1, 1)});
  const DiagonalHamiltonian h(14, terms);
  const DiagonalHamiltonian copy = h;
  std::vector<const double*> seen(8);
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < 8; ++t) {
      pool.emplace_back([&, t] { seen[static_cast<std::size_t>(t)] = (t % 2 ? copy : h).diagonal().data(); });
    }
  }
  for (auto* p : seen) EXPECT_EQ(p, seen[0]);
}

TEST(Diagonal, ConstantShift) {
  Rng rng(11);
  const auto raw = random_qubo(rng, 6, true);
  const auto h = qubo_to_ising(raw.build());
  const auto shifted = h.shifted(3.25);
  const auto a = h.diagonal();
  const auto b = shifted.diagonal();
  for (std::size_t z = 0; z < a.size(); ++z) EXPECT_DOUBLE_EQ(b[z], a[z] + 3.25);
  const auto sa = hamiltonian_stats(h);
  const auto sb = hamiltonian_stats(shifted);
  EXPECT_EQ(sa.term_count, sb.term_count);
  EXPECT_EQ(sa.distinct_eigenvalues, sb.distinct_eigenvalues);
  EXPECT_EQ(std::min_element(a.begin(), a.end()) - a.begin(), std::min_element(b.begin(), b.end()) - b.begin());
}

TEST(IsingToQubo, ReEncodingIsTermForTermIdentical) {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const auto raw = random_qubo(rng, static_cast<int>(rng.uniform_int(1, 8)), rep % 2 == 1);
    const auto h = qubo_to_ising(raw.build());
    const auto again = qubo_to_ising(ising_to_qubo(h));
    ASSERT_EQ(h.terms().size(), again.terms().size());
    for (std::size_t k = 0; k < h.terms().size(); ++k) {
      EXPECT_EQ(h.terms()[k].support, again.terms()[k].support);
      EXPECT_NEAR(h.terms()[k].coeff, again.terms()[k].coeff, 1e-12);
    }
    EXPECT_NEAR(h.constant(), again.constant(), 1e-12);
  }
}

TEST(IsingToQubo, RejectsThreeBodyTerms) {
  DiagonalHamiltonian h(3, {{0b111, 1.0}});
  EXPECT_THROW(ising_to_qubo(h), std::invalid_argument);
}

TEST(Spectrum, EmptyHamiltonianHasOneEigenvalue) {
  DiagonalHamiltonian h(3, {});
  EXPECT_EQ(hamiltonian_stats(h).distinct_eigenvalues, 1U);
  EXPECT_EQ(hamiltonian_stats(h).term_count, 0U);
}

TEST(Spectrum, CountDistinctTolerance) {
  const std::vector<double> v{1.0, 1.0 + 5e-10, 2.0, 3.0, 3.0 + 2e-9};
  EXPECT_EQ(count_distinct(v), 4U);
  EXPECT_EQ(count_distinct(v, 1e-8), 3U);
}

TEST(Spectrum, DensityFoldsLinearTerms) {
  QuboProblem p(4);
  p.add_linear(0, 1.0);
  p.add_quadratic(1, 2, 2.0);
  // Nonzeros: (0,0), (1,2), (2,1).
  const auto s = spectrum_stats(qubo_to_ising(p), p);
  EXPECT_DOUBLE_EQ(s.density, 3.0 / 16.0);
}

TEST(Spectrum, NegativeFractionMatchesEigen) {
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const int q = static_cast<int>(rng.uniform_int(2, 12));
    const auto raw = random_qubo(rng, q, false);
    const auto p = raw.build();
    const auto folded = p.folded_matrix();
    Eigen::MatrixXd m(q, q);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) m(i, j) = folded[static_cast<std::size_t>(i * q + j)];
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    int negative = 0;
    for (int i = 0; i < q; ++i) negative += ev(i) < -1e-12 * scale ? 1 : 0;
    EXPECT_DOUBLE_EQ(spectrum_stats(qubo_to_ising(p), p).negative_eig_fraction, static_cast<double>(negative) / q);
  }
}

TEST(Jacobi, MatchesEigenOnRandomSymmetric) {
  Rng rng(1234);
  for (int n : {1, 2, 5, 10, 18}) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.uniform(-3, 3);
    std::vector<double> flat(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i * n + j)] = m(i, j);
    const auto res = jacobi_eigenvalues(flat, n);
    EXPECT_TRUE(res.converged);
    EXPECT_LE(res.sweeps, 100);
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    for (int i = 0; i < n; ++i) EXPECT_NEAR(res.eigenvalues[static_cast<std::size_t>(i)], ref(i), 1e-9);
  }
}

TEST(RandomZz, SinglePairSpectrum) {
  const auto h = random_zz_hamiltonian(2, 1, WeightMode::Discrete, 17);
  const auto d = h.diagonal();
  const std::set<double> values(d.begin(), d.end());
  EXPECT_EQ(values, (std::set<double>{-1.0, 1.0}));
  EXPECT_EQ(hamiltonian_stats(h).distinct_eigenvalues, 2U);
}

TEST(RandomZz, DeterministicPerSeed) {
  const auto a = random_zz_hamiltonian(8, 20, WeightMode::Continuous, 5);
  const auto b = random_zz_hamiltonian(8, 20, WeightMode::Continuous, 5);
  ASSERT_EQ(a.terms().size(), b.terms().size());
  for (std::size_t k = 0; k < a.terms().size(); ++k) EXPECT_EQ(a.terms()[k], b.terms()[k]);
}

TEST(RandomZz, GlobalFlipInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto h = random_zz_hamiltonian(9, 15, seed % 2 ? WeightMode::Continuous : WeightMode::Discrete, seed);
    const auto d = h.diagonal();
    const std::uint64_t all = (std::uint64_t{1} << 9) - 1;
    // Flipping every spin maps z to ~z and preserves each ZZ product.
    for (std::uint64_t z = 0; z <= all; ++z) EXPECT_DOUBLE_EQ(d[z], d[z ^ all]);
  }
}

TEST(RandomZz, ContinuousWeightsSaturate) {
  const auto h = random_zz_hamiltonian(10, 50, WeightMode::Continuous, 1);
  EXPECT_EQ(hamiltonian_stats(h).distinct_eigenvalues, 512U);
}

TEST(HamiltonianJson, RoundTripAndOrder) {
  const DiagonalHamiltonian h(4, {{0b1010, -2.5}, {0b0001, 1.0}}, 0.75);
  const nlohmann::json j = h;
  EXPECT_EQ(j.at("q"), 4);
  EXPECT_EQ(j.at("terms")[0].at("support"), nlohmann::json::array({0}));
  EXPECT_EQ(j.at("terms")[1].at("support"), nlohmann::json::array({1, 3}));
  const auto back = hamiltonian_from_json(j);
  ASSERT_EQ(back.terms().size(), 2U);
  EXPECT_EQ(back.terms()[1], h.terms()[1]);
  EXPECT_DOUBLE_EQ(back.constant(), 0.75);
}

}  // namespace
}  // namespace vqeb
