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

// Covariance dynamics  dGamma/dt = -{X, Gamma} + Y  and its steady states.

#include <cmath>
#include <vector>

#include "quadlind/gaussian.hpp"

namespace quadlind {

/// Eigen-decomposition of the damping matrix, reused for steady states and
/// closed-form propagation.
class Propagator {
 public:
  explicit Propagator(const Dissipator& d, double zero_tol = 1e-10) : d_(d), zero_tol_(zero_tol) {
    detail::require(is_symmetric(d.X, 1e-9 * (1.0 + max_abs(d.X))), "X must be symmetric");
    detail::require(is_antisymmetric(d.Y, 1e-9 * (1.0 + max_abs(d.Y))), "Y must be antisymmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (d.X + d.X.transpose()));
    if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition of X failed");
    rates_ = es.eigenvalues();
    basis_ = es.eigenvectors();
    y_tilde_ = basis_.transpose() * d.Y * basis_;
    if (rates_.size() > 0 && rates_(0) < -1e-9 * (1.0 + rates_.cwiseAbs().maxCoeff()))
      throw NumericalError("X is not positive semidefinite");
  }

  const Vec& rates() const { return rates_; }
  const Mat& basis() const { return basis_; }
  const Dissipator& dissipator() const { return d_; }

  /// Number of rates at or below the zero tolerance.
  Eigen::Index kernel_dimension() const {
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < rates_.size(); ++i) n += rates_(i) <= zero_tol_ ? 1 : 0;
    return n;
  }

  /// Orthonormal basis of ker X (columns).
  Mat kernel() const { return basis_.leftCols(kernel_dimension()); }

  /// Stationary covariance.  Blocks on which no damping acts are copied from
  /// `initial` (zero when absent).
  Mat steady_state(const Mat* initial = nullptr) const {
    const Eigen::Index n = rates_.size();
    Mat init_t = initial ? Mat(basis_.transpose() * (*initial) * basis_) : Mat::Zero(n, n);
    Mat g(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        const double s = std::max(rates_(a), 0.0) + std::max(rates_(b), 0.0);
        g(a, b) = s > zero_tol_ ? y_tilde_(a, b) / s : init_t(a, b);
      }
    return basis_ * g * basis_.transpose();
  }

  /// Closed-form propagation over time t.
  Mat evolve(const Mat& gamma0, double t) const {
    detail::require(t >= 0.0, "evolution time must be non-negative");
    const Eigen::Index n = rates_.size();
    detail::require(gamma0.rows() == n && gamma0.cols() == n, "covariance size mismatch");
    Mat g = basis_.transpose() * gamma0 * basis_;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        const double s = std::max(rates_(a), 0.0) + std::max(rates_(b), 0.0);
        const double decay = std::exp(-s * t);
        const double growth = s * t > 1e-12 ? -std::expm1(-s * t) / s : t;
        g(a, b) = decay * g(a, b) + y_tilde_(a, b) * growth;
      }
    return basis_ * g * basis_.transpose();
  }

 private:
  Dissipator d_;
  double zero_tol_;
  Vec rates_;
  Mat basis_;
  Mat y_tilde_;
};

/// Steady state and a basis of the directions it does not determine.
struct SteadyState {
  Mat gamma;
  Mat undetermined;
};

inline SteadyState steady_state(const Dissipator& d, const Mat* initial = nullptr,
                                double zero_tol = 1e-10) {
  Propagator p(d, zero_tol);
  return {p.steady_state(initial), p.kernel()};
}

inline Mat evolve(const Dissipator& d, const Mat& gamma0, double t) {
  return Propagator(d).evolve(gamma0, t);
}

/// Damping rates (eigenvalues of X, ascending) with their modes.
struct DampingSpectrum {
  Vec rates;
  Mat modes;
};

inline DampingSpectrum damping_spectrum(const Dissipator& d, bool with_modes = true) {
  Eigen::SelfAdjointEigenSolver<Mat> es(d.X, with_modes ? Eigen::ComputeEigenvectors
                                                        : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition of X failed");
  return {es.eigenvalues(), with_modes ? Mat(es.eigenvectors()) : Mat()};
}

/// Basis of zero-damping modes, equal to ker X.
inline Mat zero_damping_modes(const Dissipator& d, double tol = 1e-10) {
  return Propagator(d, tol).kernel();
}

/// Zero-purity Majorana modes (columns) on the complement of ker X, where
/// the steady state does not depend on the initial condition.
inline Mat zero_purity_modes(const Propagator& p, const Mat& gamma, double purity_tol = 1e-6) {
  const Eigen::Index k = p.kernel_dimension();
  const Mat q = p.basis().rightCols(p.rates().size() - k);
  if (q.cols() == 0) return Mat(gamma.rows(), 0);
  const Mat g = q.transpose() * gamma * q;
  Eigen::SelfAdjointEigenSolver<Mat> es(g.transpose() * g);
  Eigen::Index n = 0;
  while (n < es.eigenvalues().size() && es.eigenvalues()(n) <= purity_tol) ++n;
  return q * es.eigenvectors().leftCols(n);
}

inline Mat zero_purity_modes(const Dissipator& d, const Mat& gamma, double damping_tol = 1e-10,
                             double purity_tol = 1e-6) {
  return zero_purity_modes(Propagator(d, damping_tol), gamma, purity_tol);
}

/// Counts of zero-damping and zero-purity Majorana modes.  Zero-purity
/// modes are counted on the complement of ker X only.
struct ModeCensus {
  int zero_damping = 0;
  int zero_purity = 0;
};

inline ModeCensus census(const Propagator& p, const Mat& gamma, double purity_tol = 1e-6) {
  return {static_cast<int>(p.kernel_dimension()),
          static_cast<int>(zero_purity_modes(p, gamma, purity_tol).cols())};
}

inline ModeCensus census(const Dissipator& d, const Mat& gamma, double damping_tol = 1e-10,
                         double purity_tol = 1e-6) {
  return census(Propagator(d, damping_tol), gamma, purity_tol);
}

/// Result of the decoupling check for an edge block p and bulk block q.
struct DecouplingReport {
  bool preconditions = false;  // no operator touches the p block
  double pp_drift = 0.0;       // max_t ||Gamma_pp(t) - Gamma_pp(0)||
  double pq_excess = 0.0;      // max_t of ||Gamma_pq(t)|| - bound(t), clipped at 0
};

inline DecouplingReport block_decoupling_check(const Dissipator& d,
                                               const std::vector<Eigen::Index>& edge,
                                               const Mat& gamma0,
                                               const std::vector<double>& times,
                                               double tol = 1e-12) {
  const Eigen::Index n = d.majoranas();
  std::vector<bool> in_edge(static_cast<std::size_t>(n), false);
  for (Eigen::Index i : edge) {
    detail::require(i >= 0 && i < n, "edge index out of range");
    in_edge[static_cast<std::size_t>(i)] = true;
  }
  std::vector<Eigen::Index> bulk;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!in_edge[static_cast<std::size_t>(i)]) bulk.push_back(i);

  DecouplingReport r;
  double touch = 0.0;
  for (Eigen::Index i : edge) touch = std::max({touch, max_abs(d.X.row(i)), max_abs(d.Y.row(i))});
  r.preconditions = touch <= tol;

  const Mat xqq = d.X(bulk, bulk);
  double gap = 0.0;
  if (!bulk.empty()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(xqq, Eigen::EigenvaluesOnly);
    gap = es.eigenvalues()(0);
  }
  const Mat pp0 = gamma0(edge, edge);
  const double pq0 = spectral_norm(gamma0(edge, bulk));
  Propagator prop(d);
  for (double t : times) {
    const Mat g = prop.evolve(gamma0, t);
    r.pp_drift = std::max(r.pp_drift, max_abs(Mat(g(edge, edge)) - pp0));
    const double bound = pq0 * std::exp(-gap * t);
    r.pq_excess = std::max(r.pq_excess, spectral_norm(g(edge, bulk)) - bound);
  }
  r.pq_excess = std::max(r.pq_excess, 0.0);
  return r;
}

}  // namespace quadlind
