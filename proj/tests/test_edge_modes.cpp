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

#include <algorithm>

#include "quadlind/dynamics.hpp"
#include "quadlind/edge_modes.hpp"

using namespace quadlind;

namespace {

bool has_root(const std::vector<EdgeSolution>& sols, double phi, std::vector<double> beta, double tol = 1e-9) {
  return std::any_of(sols.begin(), sols.end(), [&](const EdgeSolution& e) {
    if (std::abs(std::remainder(e.phi - phi, 2.0 * kPi)) > 1e-12 || e.beta.size() != beta.size()) return false;
    for (std::size_t i = 0; i < beta.size(); ++i)
      if (std::abs(e.beta[i] - beta[i]) > tol * (1.0 + std::abs(beta[i]))) return false;
    return true;
  });
}

}  // namespace

TEST(PolynomialRoots, MatchesFactoredCubic) {
  // (z - 1)(z - 2)(z + 3) = z^3 - 7 z + 6, lowest order first.
  auto roots = polynomial_roots({6.0, -7.0, 0.0, 1.0});
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(std::abs(roots[0] - cplx(-3.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(roots[1] - cplx(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(roots[2] - cplx(2.0)), 0.0, 1e-12);
}

TEST(EdgeCondition, ThreeSiteRoots) {
  for (double kappa : {0.5, 1.0, 1.5, 3.0}) {
    const auto sols = edge_solutions(three_site_wire(kappa).families[0].stencil);
    EXPECT_TRUE(has_root(sols, 0.0, {-kappa / 2.0})) << kappa;
    EXPECT_TRUE(has_root(sols, kPi, {-2.0 / kappa})) << kappa;
    for (const auto& e : sols) EXPECT_LT(e.residual, 1e-12);
  }
}

TEST(EdgeCondition, ZigzagRoots) {
  for (double kappa : {0.5, 2.0}) {
    const auto sols = edge_solutions(zigzag_coherent(kappa).families[0].stencil);
    EXPECT_TRUE(has_root(sols, kPi, {-1.0 / kappa})) << kappa;
  }
}

TEST(EdgeCondition, KitaevHasNoGeometricMode) {
  // The Kitaev edge modes are single-site; no finite nonzero beta appears.
  EXPECT_TRUE(edge_solutions(kitaev_wire().families[0].stencil).empty());
}

TEST(EdgeCondition, EdgeModeIsAnnihilated) {
  const int n = 40;
  const Lattice lat = Lattice::chain(n);
  for (double kappa : {0.8, 1.0, 1.5}) {
    const ModelInstance m = three_site_wire(kappa);
    const Dissipator d = finite_dissipator(m, lat);
    for (const auto& e : edge_solutions(m.families[0].stencil)) {
      const Vec v = edge_mode(e, lat);
      EXPECT_LT((d.X * v).norm(), 1e-10) << "kappa=" << kappa << " beta=" << e.beta[0];
      const Mat k = zero_damping_modes(d);
      EXPECT_NEAR((k.transpose() * v).norm(), 1.0, 1e-10);
    }
  }
}

TEST(EdgeCondition, CrossModelSolutions) {
  const BlochStencil s = cross_2d(3.0).families[0].stencil;
  std::vector<EdgeSolution> sols;
  for (double phi : {0.0, kPi})
    for (auto& e : solve_beta_2d(s, phi)) sols.push_back(e);
  EXPECT_TRUE(has_root(sols, 0.0, {-2.5, 1.0}, 1e-7));
  EXPECT_TRUE(has_root(sols, 0.0, {-0.5, -1.0}, 1e-7));
  EXPECT_TRUE(has_root(sols, kPi, {-0.4, 1.0}, 1e-7));
  EXPECT_TRUE(has_root(sols, kPi, {-2.0, -1.0}, 1e-7));
  for (const auto& e : sols) {
    EXPECT_NEAR(std::abs(e.beta[1]), 1.0, 1e-7);
    EXPECT_LT(e.residual, 1e-9);
  }
}

TEST(EdgeCondition, RealConditionIsRejected) {
  BlochStencil s;
  s.dim = 2;
  s.terms = {{0, 0, 0.0, 1.0}, {1, 0, 1.0, 1.0}, {0, 1, 0.0, 1.0}};
  EXPECT_THROW(solve_beta_2d(s, 0.0), InvalidArgument);
}

TEST(EdgeCondition, CylinderModeIsAnnihilated) {
  const Lattice lat = Lattice::cylinder(30, 6);
  const ModelInstance m = cross_2d(3.0);
  const Dissipator d = finite_dissipator(m, lat);
  for (double phi : {0.0, kPi})
    for (const auto& e : solve_beta_2d(m.families[0].stencil, phi)) {
      const Vec v = edge_mode(e, lat);
      EXPECT_LT((d.X * v).norm(), 1e-8) << e.beta[0];
    }
}

TEST(Localization, SyntheticGeometricMode) {
  const Lattice lat = Lattice::chain(30);
  for (double b : {0.3, 0.6, -0.8}) {
    const Vec v = edge_mode({0.0, {b}, 0.0}, lat);
    const LocalizationFit f = fit_localization(v, lat);
    EXPECT_EQ(f.edge, 0);
    EXPECT_NEAR(f.xi, -1.0 / std::log(std::abs(b)), 1e-9);
    EXPECT_GT(f.r2, 0.999999);
    const LocalizationFit g = fit_localization(edge_mode({0.0, {1.0 / b}, 0.0}, lat), lat);
    EXPECT_EQ(g.edge, 1);
    EXPECT_NEAR(g.xi, f.xi, 1e-9);
  }
}

TEST(Localization, RotatesOntoSiteObservable) {
  const Lattice lat = Lattice::chain(20);
  const Vec left = edge_mode({0.0, {0.3}, 0.0}, lat);
  const Vec right = edge_mode({kPi, {1.0 / 0.3}, 0.0}, lat);
  Mat mix(left.size(), 2);
  mix.col(0) = (left + right) / std::sqrt(2.0);
  mix.col(1) = (left - right) / std::sqrt(2.0);
  const Mat loc = localize_modes(mix, column_positions(lat));
  EXPECT_GT(std::abs(loc.col(0).dot(left)), 1.0 - 1e-6);
  EXPECT_GT(std::abs(loc.col(1).dot(right)), 1.0 - 1e-6);
}

TEST(BulkEdge, Inequality) {
  EXPECT_TRUE(bulk_edge_check(2, {2, 0}).holds);
  EXPECT_TRUE(bulk_edge_check(-2, {1, 1}).holds);
  EXPECT_FALSE(bulk_edge_check(2, {1, 0}).holds);
}
