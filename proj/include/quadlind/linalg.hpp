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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "quadlind/error.hpp"

namespace quadlind {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Mat2c = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Largest absolute entry.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_antisymmetric(const Mat& m, double tol) {
  return m.rows() == m.cols() && max_abs(m + m.transpose()) <= tol;
}

inline bool is_symmetric(const Mat& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.transpose()) <= tol;
}

/// Spectral norm of a real matrix.
inline double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

/// Orthonormal basis of the columns of `a` (thin, via QR with pivoting).
inline Mat orthonormalize(const Mat& a, double tol = 1e-10) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  qr.setThreshold(tol);
  const Eigen::Index r = qr.rank();
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), r);
  return q;
}

/// Orthonormal complement of the column span of an orthonormal `q`.
inline Mat orthogonal_complement(const Mat& q) {
  const Eigen::Index n = q.rows();
  if (q.cols() == 0) return Mat::Identity(n, n);
  Mat p = Mat::Identity(n, n) - q * q.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(p);
  const Eigen::Index k = n - q.cols();
  return es.eigenvectors().rightCols(k);
}

/// Solves the 2x2 Hermitian Lyapunov problem x g + g x = y.
inline Mat2c solve_lyapunov2(const Mat2c& x, const Mat2c& y) {
  Eigen::SelfAdjointEigenSolver<Mat2c> es(x);
  const Mat2c& u = es.eigenvectors();
  Mat2c yt = u.adjoint() * y * u;
  Mat2c gt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double s = es.eigenvalues()(a) + es.eigenvalues()(b);
      gt(a, b) = s > 0.0 ? yt(a, b) / s : cplx(0.0);
    }
  return u * gt * u.adjoint();
}

}  // namespace quadlind
