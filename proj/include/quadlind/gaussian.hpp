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

// Gaussian description of quadratic fermionic Lindbladians.
//
// Majorana layout: for site n, index 2n holds i(a_n - a_n^dag) and index
// 2n+1 holds a_n + a_n^dag.  A linear Lindblad operator L = sum_a l_a c_a is
// stored as the complex coefficient vector l.

#include <algorithm>
#include <vector>

#include "quadlind/linalg.hpp"

namespace quadlind {

using OperatorSet = std::vector<CVec>;

inline Eigen::Index odd_index(Eigen::Index site) { return 2 * site; }
inline Eigen::Index even_index(Eigen::Index site) { return 2 * site + 1; }

/// Coefficient vector of a_site on `sites` modes.
inline CVec annihilator(Eigen::Index sites, Eigen::Index site) {
  CVec l = CVec::Zero(2 * sites);
  l(odd_index(site)) = cplx(0.0, -0.5);
  l(even_index(site)) = 0.5;
  return l;
}

/// Coefficient vector of a_site^dag on `sites` modes.
inline CVec creator(Eigen::Index sites, Eigen::Index site) {
  CVec l = CVec::Zero(2 * sites);
  l(odd_index(site)) = cplx(0.0, 0.5);
  l(even_index(site)) = 0.5;
  return l;
}

/// Majorana vector of gamma = sum_j alpha_j a_j + conj(alpha_j) a_j^dag.
inline Vec majorana_from_amplitudes(const CVec& alpha) {
  Vec g(2 * alpha.size());
  for (Eigen::Index j = 0; j < alpha.size(); ++j) {
    g(odd_index(j)) = alpha(j).imag();
    g(even_index(j)) = alpha(j).real();
  }
  return g;
}

/// Damping matrix X and pumping matrix Y of the linear Lindbladian.
struct Dissipator {
  Mat X;
  Mat Y;

  Eigen::Index majoranas() const { return X.rows(); }
  Eigen::Index modes() const { return X.rows() / 2; }
};

/// Builds X = 2 Re M and Y = -4 Im M from M = sum_i conj(l_i) l_i^T.
inline Dissipator build_dissipator(const OperatorSet& ops, Eigen::Index majoranas) {
  detail::require(majoranas >= 0 && majoranas % 2 == 0, "majorana count must be even");
  CMat m = CMat::Zero(majoranas, majoranas);
  for (const CVec& l : ops) {
    detail::require(l.size() == majoranas, "operator length does not match majorana count");
    m.noalias() += l.conjugate() * l.transpose();
  }
  return {2.0 * m.real(), -4.0 * m.imag()};
}

inline Dissipator build_dissipator(const OperatorSet& ops) {
  detail::require(!ops.empty(), "empty operator set needs an explicit size");
  return build_dissipator(ops, ops.front().size());
}

inline Dissipator operator+(const Dissipator& a, const Dissipator& b) {
  detail::require(a.majoranas() == b.majoranas(), "dissipator size mismatch");
  return {a.X + b.X, a.Y + b.Y};
}

inline Dissipator operator*(double w, const Dissipator& d) { return {w * d.X, w * d.Y}; }

/// Checks that a matrix is a valid covariance matrix: real antisymmetric with
/// spectral norm at most one.
inline bool is_covariance(const Mat& gamma, double tol = 1e-10) {
  if (gamma.rows() % 2 != 0 || !is_antisymmetric(gamma, tol)) return false;
  return spectral_norm(gamma) <= 1.0 + tol;
}

/// Covariance matrix of the vacuum of every mode.
inline Mat vacuum_covariance(Eigen::Index sites) {
  Mat g = Mat::Zero(2 * sites, 2 * sites);
  for (Eigen::Index n = 0; n < sites; ++n) {
    g(odd_index(n), even_index(n)) = -1.0;
    g(even_index(n), odd_index(n)) = 1.0;
  }
  return g;
}

/// Purity spectrum: the N values eps^2 in [0, 1] of (i Gamma)^2, ascending.
/// A value of 1 marks a pure mode; 0 marks a fully mixed mode.
inline Vec purity_spectrum(const Mat& gamma) {
  detail::require(gamma.rows() == gamma.cols() && gamma.rows() % 2 == 0,
                  "covariance must be square with even size");
  Eigen::SelfAdjointEigenSolver<Mat> es(gamma.transpose() * gamma, Eigen::EigenvaluesOnly);
  const Vec& w = es.eigenvalues();
  const Eigen::Index n = gamma.rows() / 2;
  Vec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = 0.5 * (w(2 * i) + w(2 * i + 1));
  return out.cwiseMax(0.0);
}

/// Quadratic Hamiltonian whose ground state reproduces Gamma, with its
/// single-particle energies eps >= 0.
struct FictitiousHamiltonian {
  Mat h;
  Vec energies;
};

inline FictitiousHamiltonian fictitious_hamiltonian(const Mat& gamma, double tol = 1e-10) {
  detail::require(is_antisymmetric(gamma, tol), "covariance must be antisymmetric");
  return {gamma, purity_spectrum(gamma).cwiseSqrt()};
}

/// Parent Hamiltonian of a pure steady state: the pumping matrix Y.
inline Mat parent_hamiltonian(const Dissipator& d) { return d.Y; }

enum class PurityClass { PureCapable, Mixed };

/// Residuals of the two matrix conditions for a pure steady state.
struct PurityResiduals {
  double commutator;  // ||[X, Y]||
  double square;      // ||X^2 + Y^2 / 4||
};

inline PurityResiduals purity_residuals(const Dissipator& d) {
  return {max_abs(d.X * d.Y - d.Y * d.X), max_abs(d.X * d.X + 0.25 * d.Y * d.Y)};
}

/// Largest pairwise anticommutator |{L_i, L_j}| = 2 |l_i . l_j|.
inline double max_anticommutator(const OperatorSet& ops) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i; j < ops.size(); ++j)
      worst = std::max(worst, 2.0 * std::abs(ops[i].cwiseProduct(ops[j]).sum()));
  return worst;
}

/// Operators that mutually anticommute (including with themselves) admit a
/// pure steady state.
inline PurityClass purity_class(const OperatorSet& ops, double tol = 1e-10) {
  return max_anticommutator(ops) <= tol ? PurityClass::PureCapable : PurityClass::Mixed;
}

}  // namespace quadlind
