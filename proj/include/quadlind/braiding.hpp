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

// Majorana exchanges as orthogonal maps on Majorana space, and adiabatic
// transport of the decoherence-free block of a slowly varying dissipator.

#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "quadlind/dynamics.hpp"
#include "quadlind/models.hpp"

namespace quadlind {

/// Exchange of Majoranas i and j on a registry of m labels:
/// gamma_i -> -gamma_j, gamma_j -> gamma_i.  Column a holds the image of gamma_a.
inline Mat braid_matrix(int i, int j, int m) {
  detail::require(i >= 0 && j >= 0 && i < m && j < m && i != j, "invalid braid labels");
  Mat r = Mat::Identity(m, m);
  r(i, i) = 0.0;
  r(j, j) = 0.0;
  r(j, i) = -1.0;
  r(i, j) = 1.0;
  return r;
}

/// Product of elementary exchanges applied left to right.
inline Mat braid_word(const std::vector<std::pair<int, int>>& word, int m) {
  Mat r = Mat::Identity(m, m);
  for (const auto& [i, j] : word) r = braid_matrix(i, j, m) * r;
  return r;
}

/// Covariance after the exchange: Gamma -> R Gamma R^T.
inline Mat apply_braid(const Mat& r, const Mat& gamma) { return r * gamma * r.transpose(); }

/// Eigenbasis of X ordered by rate; the leading columns span the
/// decoherence-free block.
inline Mat mode_frame(const Mat& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(x);
  if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition of X failed");
  return es.eigenvectors();
}

/// Rotates `next` within each listed leading block to be closest to `prev`
/// (orthogonal Procrustes), fixing signs and order across the path.  Columns
/// past the listed blocks are left as they are.
inline Mat align_frame(const Mat& prev, const Mat& next, const std::vector<int>& blocks) {
  Mat out = next;
  int start = 0;
  for (int size : blocks) {
    const Mat overlap = next.middleCols(start, size).transpose() * prev.middleCols(start, size);
    Eigen::JacobiSVD<Mat> svd(overlap, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.middleCols(start, size) = next.middleCols(start, size) * (svd.matrixU() * svd.matrixV().transpose());
    start += size;
  }
  return out;
}

/// Connection A_s = (O - O^T) / (2 ds) with O = U_s^T U_{s+1}.
inline std::vector<Mat> vector_potential(const std::vector<Mat>& frames, double ds) {
  detail::require(ds > 0.0, "step must be positive");
  std::vector<Mat> out;
  for (std::size_t s = 0; s + 1 < frames.size(); ++s) {
    const Mat o = frames[s].transpose() * frames[s + 1];
    out.push_back((o - o.transpose()) / (2.0 * ds));
  }
  return out;
}

/// Dissipator along a path parameter s in [0, 1].
using Schedule = std::function<Dissipator(double)>;

struct AdiabaticResult {
  Mat gamma;        // final covariance, lab frame
  Mat frame_gamma;  // final covariance, co-moving frame
  Mat holonomy;     // U_p(0)^T U_p(1) of the transported free block
  double leakage;   // max |Gamma'_pp(T) - Gamma'_pp(0)|
};

/// Integrates dGamma/dt = -{X(t), Gamma} + Y(t) over total time T in the
/// co-moving frame, whose free block is parallel transported.  Each step
/// rotates into the eigenbasis of X at the midpoint, applies the
/// closed-form dissipative step there, and rotates into the next frame.
/// With `transport` off the frame rotations are dropped.
inline AdiabaticResult adiabatic_evolve(const Schedule& schedule, int free_modes, const Mat& gamma0,
                                        double total_time, int steps, bool transport = true) {
  detail::require(steps >= 1 && total_time >= 0.0, "invalid schedule discretization");
  const Dissipator d0 = schedule(0.0);
  const Eigen::Index n = d0.majoranas();
  detail::require(free_modes >= 0 && free_modes <= n, "free block larger than the system");
  detail::require(gamma0.rows() == n && gamma0.cols() == n, "covariance size mismatch");
  const std::vector<int> blocks{free_modes};
  const double dt = total_time / steps;

  Mat frame = mode_frame(d0.X);
  const Mat frame0 = frame;
  Mat g = frame.transpose() * gamma0 * frame;
  const Mat pp0 = g.topLeftCorner(free_modes, free_modes);
  for (int i = 0; i < steps; ++i) {
    const Dissipator dm = schedule((i + 0.5) / steps);
    Eigen::SelfAdjointEigenSolver<Mat> es(dm.X);
    if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition of X failed");
    const Mat& em = es.eigenvectors();
    const Vec rates = es.eigenvalues().cwiseMax(0.0);
    const Mat ym = em.transpose() * dm.Y * em;
    const Mat next = align_frame(frame, mode_frame(schedule((i + 1.0) / steps).X), blocks);
    if (transport) {
      const Mat o1 = frame.transpose() * em;
      g = o1.transpose() * g * o1;
    }
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        const double s = rates(a) + rates(b);
        const double growth = s * dt > 1e-12 ? -std::expm1(-s * dt) / s : dt;
        g(a, b) = std::exp(-s * dt) * g(a, b) + ym(a, b) * growth;
      }
    if (transport) {
      const Mat o2 = em.transpose() * next;
      g = o2.transpose() * g * o2;
    }
    frame = next;
  }
  AdiabaticResult r;
  r.frame_gamma = g;
  r.gamma = frame * g * frame.transpose();
  r.holonomy = frame0.leftCols(free_modes).transpose() * frame.leftCols(free_modes);
  r.leakage = max_abs(Mat(g.topLeftCorner(free_modes, free_modes)) - pp0);
  return r;
}

/// Parallel transport of the free block along the schedule without
/// dynamics; returns U_p(0)^T U_p(1).
inline Mat transport_holonomy(const Schedule& schedule, int free_modes, int steps) {
  const std::vector<int> blocks{free_modes};
  Mat frame = mode_frame(schedule(0.0).X);
  const Mat first = frame.leftCols(free_modes);
  for (int i = 1; i <= steps; ++i)
    frame = align_frame(frame, mode_frame(schedule(double(i) / steps).X), blocks);
  return first.transpose() * frame.leftCols(free_modes);
}

/// Two unit vortices exchanged by a half turn about the lattice center.
inline Schedule vortex_exchange_schedule(double mass, const Lattice& lat, double radius,
                                         CoreProfile core = {0.7}) {
  const double cx = 0.5 * (lat.width - 1);
  const double cy = 0.5 * (lat.height - 1);
  return [=](double s) {
    const double th = kPi * s;
    const ModelInstance m = with_vortices(
        cross_2d(mass),
        {{cx + radius * std::cos(th), cy + radius * std::sin(th), 1},
         {cx - radius * std::cos(th), cy - radius * std::sin(th), 1}},
        core);
    return finite_dissipator(m, lat, Placement::Truncate);
  };
}

/// Localizes the free block of X at s = 0 onto the two vortex cores and
/// returns the exchange holonomy in that basis.
inline Mat braid_via_schedule(const Schedule& schedule, const Lattice& lat,
                              const std::array<double, 2>& core_a, int steps) {
  const Mat frame = mode_frame(schedule(0.0).X);
  Vec dist(lat.sites());
  for (int i = 0; i < lat.sites(); ++i)
    dist(i) = std::hypot(lat.x_of(i) - core_a[0], lat.y_of(i) - core_a[1]);
  Vec obs(2 * lat.sites());
  for (int i = 0; i < lat.sites(); ++i) obs(odd_index(i)) = obs(even_index(i)) = dist(i);
  const Mat p = frame.leftCols(2);
  Eigen::SelfAdjointEigenSolver<Mat> es(p.transpose() * obs.asDiagonal() * p);
  const Mat basis = p * es.eigenvectors();  // column 0 nearest to core a
  const Mat h = transport_holonomy(schedule, 2, steps);
  // Express the holonomy in the localized basis.
  const Mat c = p.transpose() * basis;
  return c.transpose() * h * c;
}

}  // namespace quadlind
