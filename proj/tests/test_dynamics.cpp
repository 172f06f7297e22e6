// Copyright 2026 The quadlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "oracles/fock.hpp"
#include "oracles/random.hpp"
#include "quadlind/dynamics.hpp"
#include "quadlind/models.hpp"

using namespace quadlind;

TEST(SteadyState, SolvesStationarityCondition) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Dissipator d = build_dissipator(testutil::random_operators(rng, 5, 4));
    const Mat g = steady_state(d).gamma;
    EXPECT_LT(max_abs(d.X * g + g * d.X - d.Y), 1e-10);
    EXPECT_TRUE(is_covariance(g, 1e-10));
  }
}

TEST(SteadyState, MatchesLongTimeDensityMatrix) {
  std::mt19937_64 rng(29);
  const auto c = oracle::majoranas(2);
  const OperatorSet ops = testutil::random_operators(rng, 3, 2);
  std::vector<oracle::CMat> fock;
  for (const auto& l : ops) fock.push_back(oracle::op_from_coefficients(c, l));
  const Mat expected = oracle::covariance(c, oracle::evolve(fock, oracle::vacuum(2), 400.0));
  EXPECT_LT(max_abs(steady_state(build_dissipator(ops)).gamma - expected), 1e-9);
}

TEST(Evolve, SemigroupAndRelaxation) {
  std::mt19937_64 rng(31);
  const Dissipator d = build_dissipator(testutil::random_operators(rng, 4, 3));
  const Mat g0 = testutil::random_covariance(rng, 3);
  const Propagator p(d);
  EXPECT_LT(max_abs(p.evolve(g0, 0.0) - g0), 1e-13);
  EXPECT_LT(max_abs(p.evolve(p.evolve(g0, 0.3), 0.9) - p.evolve(g0, 1.2)), 1e-12);
  EXPECT_LT(max_abs(p.evolve(g0, 1e3) - p.steady_state()), 1e-10);
  EXPECT_THROW(p.evolve(g0, -1.0), InvalidArgument);
}

TEST(Evolve, UndampedBlockKeepsInitialValues) {
  // Kitaev chain with open ends leaves one Majorana free at each end.
  const int n = 6;
  const Dissipator d = finite_dissipator(kitaev_wire(), Lattice::chain(n));
  std::mt19937_64 rng(37);
  const Mat g0 = testutil::random_covariance(rng, n);
  const Propagator p(d);
  ASSERT_EQ(p.kernel_dimension(), 2);
  const Mat late = p.evolve(g0, 50.0);
  const Eigen::Index a = odd_index(0), b = even_index(n - 1);
  EXPECT_NEAR(late(a, b), g0(a, b), 1e-12);
  const Mat ss = p.steady_state(&g0);
  EXPECT_NEAR(ss(a, b), g0(a, b), 1e-12);
  EXPECT_EQ(steady_state(d).undetermined.cols(), 2);
}

TEST(CountingLaw, KernelDimensionOfGenericSets) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> modes_d(2, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const int modes = modes_d(rng);
    std::uniform_int_distribution<int> ops_d(1, modes - 1);
    const int count = ops_d(rng);
    const Dissipator d = build_dissipator(testutil::random_operators(rng, count, modes));
    EXPECT_EQ(zero_damping_modes(d).cols(), 2 * (modes - count));
  }
}

TEST(Census, KitaevOpenChain) {
  const Dissipator d = finite_dissipator(kitaev_wire(), Lattice::chain(10));
  const Mat g = steady_state(d).gamma;
  const ModeCensus c = census(d, g);
  EXPECT_EQ(c.zero_damping, 2);
  EXPECT_EQ(c.zero_purity, 0);
}

TEST(Decoupling, KitaevEdgeBlockIsFrozen) {
  const int n = 8;
  const Dissipator d = finite_dissipator(kitaev_wire(), Lattice::chain(n));
  std::mt19937_64 rng(43);
  const Mat g0 = testutil::random_covariance(rng, n);
  const DecouplingReport r =
      block_decoupling_check(d, {odd_index(0), even_index(n - 1)}, g0, {0.1, 0.5, 1.0, 3.0, 10.0});
  EXPECT_TRUE(r.preconditions);
  EXPECT_LT(r.pp_drift, 1e-12);
  EXPECT_LT(r.pq_excess, 1e-12);
}

TEST(Decoupling, DetectsTouchedEdge) {
  const Dissipator d = finite_dissipator(kitaev_wire(), Lattice::chain(6));
  const Mat g0 = vacuum_covariance(6);
  EXPECT_FALSE(block_decoupling_check(d, {even_index(0)}, g0, {1.0}).preconditions);
}

TEST(DampingSpectrum, PeriodicKitaevIsFlat) {
  const DampingSpectrum s = damping_spectrum(finite_dissipator(kitaev_wire(), Lattice::chain(8, Boundary::Periodic)));
  EXPECT_GT(s.rates.minCoeff(), 0.1);
  EXPECT_LT(s.rates.maxCoeff() - s.rates.minCoeff(), 1e-12);
}
