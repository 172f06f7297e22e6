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
#include "quadlind/gaussian.hpp"
#include "quadlind/models.hpp"

using namespace quadlind;

TEST(Dissipator, SingleModeDecay) {
  const Dissipator d = build_dissipator({annihilator(1, 0)});
  Mat x(2, 2), y(2, 2);
  x << 0.5, 0, 0, 0.5;
  y << 0, -1, 1, 0;
  EXPECT_LT(max_abs(d.X - x), 1e-15);
  EXPECT_LT(max_abs(d.Y - y), 1e-15);
  EXPECT_LT(max_abs(steady_state(d).gamma - vacuum_covariance(1)), 1e-15);
}

TEST(Dissipator, CreationPumpsToFilledMode) {
  const Dissipator d = build_dissipator({creator(1, 0)});
  EXPECT_LT(max_abs(steady_state(d).gamma + vacuum_covariance(1)), 1e-15);
}

TEST(Dissipator, MatrixSymmetries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Dissipator d = build_dissipator(testutil::random_operators(rng, 3, 4));
    EXPECT_TRUE(is_symmetric(d.X, 1e-12));
    EXPECT_TRUE(is_antisymmetric(d.Y, 1e-12));
    Eigen::SelfAdjointEigenSolver<Mat> es(d.X);
    EXPECT_GT(es.eigenvalues()(0), -1e-12);
  }
}

TEST(Dissipator, RejectsMismatchedLength) {
  EXPECT_THROW(build_dissipator({annihilator(2, 0)}, 6), InvalidArgument);
  EXPECT_THROW(build_dissipator(OperatorSet{}, 3), InvalidArgument);
}

TEST(Dissipator, MatchesDensityMatrixEvolution) {
  std::mt19937_64 rng(11);
  for (int modes : {1, 2, 3}) {
    const auto c = oracle::majoranas(modes);
    for (int trial = 0; trial < 3; ++trial) {
      const OperatorSet ops = testutil::random_operators(rng, modes, modes);
      std::vector<oracle::CMat> fock_ops;
      for (const auto& l : ops) fock_ops.push_back(oracle::op_from_coefficients(c, l));
      const double t = 0.37;
      const oracle::CMat rho = oracle::evolve(fock_ops, oracle::vacuum(modes), t);
      const Mat expected = oracle::covariance(c, rho);
      const Mat got = evolve(build_dissipator(ops), vacuum_covariance(modes), t);
      EXPECT_LT(max_abs(got - expected), 1e-10) << "modes=" << modes;
    }
  }
}

TEST(Purity, SpectrumOfPureAndMixedStates) {
  const Vec pure = purity_spectrum(vacuum_covariance(3));
  EXPECT_LT(max_abs(pure - Vec::Ones(3)), 1e-14);
  const Vec mixed = purity_spectrum(Mat::Zero(4, 4));
  EXPECT_LT(max_abs(mixed), 1e-14);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat g = testutil::random_covariance(rng, 4);
    ASSERT_TRUE(is_covariance(g));
    const Vec p = purity_spectrum(g);
    EXPECT_GE(p.minCoeff(), 0.0);
    EXPECT_LE(p.maxCoeff(), 1.0 + 1e-12);
    EXPECT_NEAR(p.sum(), -0.5 * (g * g).trace(), 1e-10);
  }
}

TEST(Purity, FictitiousHamiltonianEnergies) {
  std::mt19937_64 rng(5);
  const Mat g = testutil::random_covariance(rng, 3);
  const FictitiousHamiltonian h = fictitious_hamiltonian(g);
  Eigen::ComplexEigenSolver<CMat> es(kI * g.cast<cplx>());
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i).real() > 0) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  ASSERT_EQ(ev.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(h.energies(i), ev[static_cast<std::size_t>(i)], 1e-10);
}

TEST(Purity, ClassOfKnownSets) {
  const OperatorSet kitaev = realize(kitaev_wire(), Lattice::chain(6, Boundary::Periodic));
  EXPECT_EQ(purity_class(kitaev), PurityClass::PureCapable);
  EXPECT_EQ(purity_class({annihilator(1, 0), creator(1, 0)}), PurityClass::Mixed);
  const PurityResiduals r = purity_residuals(build_dissipator(kitaev));
  EXPECT_LT(r.commutator, 1e-12);
  EXPECT_LT(r.square, 1e-12);
}

TEST(Purity, ParentHamiltonianSpectrum) {
  const Dissipator d = finite_dissipator(kitaev_wire(), Lattice::chain(8, Boundary::Periodic));
  Eigen::SelfAdjointEigenSolver<Mat> ex(d.X);
  Eigen::JacobiSVD<Mat> sy(parent_hamiltonian(d));
  Vec sv = sy.singularValues();
  std::sort(sv.data(), sv.data() + sv.size());
  EXPECT_LT(max_abs(sv - 2.0 * ex.eigenvalues()), 1e-12);
}

TEST(Purity, SteadyStateOfPureCapableSetIsPure) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const OperatorSet ops = testutil::random_anticommuting(rng, 4, 4);
    const Mat g = steady_state(build_dissipator(ops)).gamma;
    EXPECT_LT(max_abs(purity_spectrum(g) - Vec::Ones(4)), 1e-8);
  }
}
