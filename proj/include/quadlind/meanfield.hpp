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

#pragma once

// Mean-field linearization of number-conserving pair operators
// J_i = C_i^dag A_i.  Fixing the particle number replaces J_i by the linear
// operator L_i = A_i + alpha C_i^dag, with |alpha| set by the filling.
//
// The stencil `parts` carries the annihilation part A in its u coefficients
// and the creation part C^dag in its v coefficients.

#include <cmath>
#include <vector>

#include "quadlind/bloch.hpp"

namespace quadlind {

/// Kitaev pair operator parts: C^dag = a_i^dag + a_{i+1}^dag, A = a_i - a_{i+1}.
inline BlochStencil kitaev_parts() {
  BlochStencil s;
  s.dim = 1;
  s.terms = {{0, 0, 1.0, 1.0}, {1, 0, -1.0, 1.0}};
  s.center = {0.5, 0.0};
  return s;
}

/// L = A + alpha C^dag.
inline BlochStencil linearize(const BlochStencil& parts, cplx alpha) {
  BlochStencil s = parts;
  for (auto& t : s.terms) t.v *= alpha;
  return s;
}

/// Filling of the pure steady state of L = A + r C^dag:
/// n(r) = < |r v_q|^2 / (|u_q|^2 + |r v_q|^2) >_q.
inline double mean_filling(const BlochStencil& parts, double r, int grid) {
  double n = 0.0;
  int count = 0;
  for (double k : k_grid(grid)) {
    const Symbol s = symbol(parts, k);
    const double cv = r * r * std::norm(s.v);
    const double nq = cv + std::norm(s.u);
    if (nq == 0.0) continue;
    n += cv / nq;
    ++count;
  }
  detail::require(count > 0, "symbol vanishes on the whole grid");
  return n / count;
}

struct MeanFieldSolution {
  double r = 0.0;        // |alpha|
  double filling = 0.0;  // achieved filling
  double kappa0 = 0.0;   // effective damping normalization <n_q (1 - n_q)>
};

/// Solves the number equation for |alpha| by bisection in log r.
inline MeanFieldSolution solve_number_equation(const BlochStencil& parts, double filling,
                                               int grid = 4096, double tol = 1e-13) {
  detail::require(filling > 0.0 && filling < 1.0, "filling must lie in (0, 1)");
  double lo = -30.0, hi = 30.0;
  if (mean_filling(parts, std::exp(lo), grid) > filling || mean_filling(parts, std::exp(hi), grid) < filling)
    throw NumericalError("filling not reachable for this operator");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (mean_filling(parts, std::exp(mid), grid) < filling ? lo : hi) = mid;
  }
  MeanFieldSolution sol;
  sol.r = std::exp(0.5 * (lo + hi));
  sol.filling = mean_filling(parts, sol.r, grid);
  int count = 0;
  for (double k : k_grid(grid)) {
    const Symbol s = symbol(parts, k);
    const double cv = sol.r * sol.r * std::norm(s.v);
    const double nq = cv + std::norm(s.u);
    if (nq == 0.0) continue;
    const double occ = cv / nq;
    sol.kappa0 += occ * (1.0 - occ);
    ++count;
  }
  sol.kappa0 /= count;
  return sol;
}

/// Relative number fluctuation sum n_k (1 - n_k) / (sum n_k)^2 on a ring of
/// `sites` sites.
inline double number_fluctuation(const BlochStencil& parts, double r, int sites) {
  detail::require(sites >= 2, "ring needs at least two sites");
  double num = 0.0, den = 0.0;
  for (int j = 0; j < sites; ++j) {
    const Symbol s = symbol(parts, 2.0 * kPi * j / sites);
    const double cv = r * r * std::norm(s.v);
    const double nq = cv + std::norm(s.u);
    if (nq == 0.0) continue;
    const double occ = cv / nq;
    num += occ * (1.0 - occ);
    den += occ;
  }
  detail::require(den > 0.0, "empty ring");
  return num / (den * den);
}

struct FluctuationPoint {
  int sites;
  double variance;
};

inline std::vector<FluctuationPoint> fluctuation_scaling(const BlochStencil& parts, double r,
                                                         const std::vector<int>& sizes) {
  std::vector<FluctuationPoint> out;
  for (int n : sizes) out.push_back({n, number_fluctuation(parts, r, n)});
  return out;
}

/// Largest change of the damping and purity spectra under alpha -> e^{i theta} alpha.
inline double gauge_covariance_residual(const BlochStencil& parts, double r, double theta,
                                        int grid = 128) {
  const ModelInstance a{"mf", {}, 1, {{linearize(parts, r), 1.0}}, {}, {}};
  const ModelInstance b{"mf", {}, 1, {{linearize(parts, std::polar(r, theta)), 1.0}}, {}, {}};
  double worst = 0.0;
  for (double k : k_grid(grid)) {
    const BlochBlocks ba = bloch_blocks(a, k), bb = bloch_blocks(b, k);
    Eigen::SelfAdjointEigenSolver<Mat2c> ea(ba.X, Eigen::EigenvaluesOnly), eb(bb.X, Eigen::EigenvaluesOnly);
    worst = std::max(worst, max_abs(ea.eigenvalues() - eb.eigenvalues()));
    worst = std::max(worst, std::abs(block_purity(ba.gamma) - block_purity(bb.gamma)));
  }
  return worst;
}

}  // namespace quadlind
