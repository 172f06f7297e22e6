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

// Momentum-space blocks and band topology of steady states.
//
// For a translation-invariant model the Majorana-space matrices reduce to
// 2x2 blocks per momentum, A(k) = sum_d e^{i k.d} A_{0,d}, with the flavor
// order (i(a - a^dag), a + a^dag).  The steady state block Gamma(k) is
// anti-Hermitian and i Gamma(k) = t + n.sigma.

#include <cmath>
#include <functional>
#include <vector>

#include "quadlind/models.hpp"

namespace quadlind {

/// Rank-one block conj(w_k) w_k^T of a single stencil.
inline Mat2c coupling_block(const BlochStencil& s, double kx, double ky = 0.0) {
  const Symbol sym = symbol(s, kx, ky);
  Eigen::Vector2cd w(0.5 * kI * (sym.v - sym.u), 0.5 * (sym.u + sym.v));
  return w.conjugate() * w.transpose();
}

struct BlochBlocks {
  Mat2c X;
  Mat2c Y;
  Mat2c gamma;
};

/// X(k), Y(k) and the steady-state block Gamma(k) of a model.
inline BlochBlocks bloch_blocks(const ModelInstance& m, double kx, double ky = 0.0) {
  detail::require(m.vortices.empty(), "momentum blocks need a translation-invariant model");
  BlochBlocks b{Mat2c::Zero(), Mat2c::Zero(), Mat2c::Zero()};
  for (const auto& f : m.families) {
    const Mat2c mk = coupling_block(f.stencil, kx, ky);
    const Mat2c mmk = coupling_block(f.stencil, -kx, -ky).conjugate();
    b.X += f.weight * (mk + mmk);
    b.Y += f.weight * 2.0 * kI * (mk - mmk);
  }
  b.gamma = solve_lyapunov2(b.X, b.Y);
  return b;
}

/// Real 4x4 blocks on the (k, -k) pair of a stencil obeying
/// conj(u_k) = u_{-k} and conj(v_k) = v_{-k}, written for L_k = v_k a_k^dag - u_k a_{-k}.
struct PairedBlocks {
  Eigen::Matrix4d X;
  Eigen::Matrix4d Y;
  Eigen::Matrix4d gamma;
};

inline PairedBlocks paired_blocks(cplx u, cplx v) {
  const double uu = std::norm(u);
  const double vv = std::norm(v);
  const double re = 2.0 * (std::conj(u) * v).real();
  const double im = 2.0 * (std::conj(u) * v).imag();
  Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d sz;
  sz << 1, 0, 0, -1;
  Eigen::Matrix2d isy;  // i sigma_y
  isy << 0, 1, -1, 0;
  PairedBlocks p;
  p.X << (uu + vv) * id, re * sz, re * sz, (uu + vv) * id;
  p.X *= 2.0;
  p.Y << (vv - uu) * isy, im * sz, -im * sz, (vv - uu) * isy;
  p.Y *= 4.0;
  p.gamma << (vv - uu) * isy, im * sz, -im * sz, (vv - uu) * isy;
  p.gamma /= (uu + vv);
  return p;
}

/// Decomposition i Gamma(k) = t + n.sigma.
struct BlochVector {
  Vec3 n;
  double t;
};

inline BlochVector bloch_vector(const Mat2c& gamma) {
  const Mat2c h = kI * gamma;
  BlochVector b;
  b.n = Vec3(h(1, 0).real(), h(1, 0).imag(), 0.5 * (h(0, 0) - h(1, 1)).real());
  b.t = 0.5 * (h(0, 0) + h(1, 1)).real();
  return b;
}

/// Purity of the k block: mean of the squared eigenvalues of i Gamma(k).
inline double block_purity(const Mat2c& gamma) {
  const BlochVector b = bloch_vector(gamma);
  return b.n.squaredNorm() + b.t * b.t;
}

/// Momentum grid of `n` points starting at -pi.
inline std::vector<double> k_grid(int n) {
  detail::require(n >= 2, "momentum grid needs at least two points");
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = -kPi + 2.0 * kPi * i / n;
  return k;
}

/// Momentum-space formulas written for L_k = v_k a_k^dag - u_k a_{-k} with
/// unnormalized u_k, v_k give rates four times the eigenvalues of X(k).
inline constexpr double kPairedRateScale = 4.0;

/// Bulk gaps: the smallest damping rate and the smallest block purity.
/// Blocks with a vanishing damping rate are left out of the purity minimum,
/// since the dynamics does not determine them.
struct BulkGaps {
  double damping;
  double purity;
  double damping_at;  // kx of the damping minimum

  double paired_damping() const { return kPairedRateScale * damping; }
};

inline BulkGaps bulk_gaps(const ModelInstance& m, int grid, double zero_tol = 1e-12) {
  BulkGaps g{1e300, 1e300, 0.0};
  const auto ks = k_grid(grid);
  const std::vector<double> kys = m.dim == 2 ? ks : std::vector<double>{0.0};
  for (double ky : kys)
    for (double kx : ks) {
      const BlochBlocks b = bloch_blocks(m, kx, ky);
      Eigen::SelfAdjointEigenSolver<Mat2c> es(b.X, Eigen::EigenvaluesOnly);
      const double d = es.eigenvalues()(0);
      if (d < g.damping) {
        g.damping = d;
        g.damping_at = kx;
      }
      if (d > zero_tol) g.purity = std::min(g.purity, block_purity(b.gamma));
    }
  if (g.purity > 1e299) g.purity = 0.0;
  return g;
}

/// Unit vector of the spectrally flattened block.
inline Vec3 flatten(const Mat2c& gamma, double gap_tol = 1e-8, double k = 0.0) {
  const BlochVector b = bloch_vector(gamma);
  const double r = b.n.norm();
  if (r <= gap_tol || std::abs(b.t) >= r - gap_tol) throw GapClosed("purity gap closes", k);
  return b.n / r;
}

using Field1D = std::function<Vec3(double)>;
using Field2D = std::function<Vec3(double, double)>;

namespace detail {

/// Flattened steady-state block; both the damping and the purity gap must stay open.
inline Vec3 gapped_direction(const ModelInstance& m, double kx, double ky, double gap_tol) {
  const BlochBlocks b = bloch_blocks(m, kx, ky);
  Eigen::SelfAdjointEigenSolver<Mat2c> es(b.X, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) <= gap_tol) throw GapClosed("damping gap closes", kx);
  return flatten(b.gamma, gap_tol, kx);
}

}  // namespace detail

/// Flattened steady-state field of a model (1D uses kx only).
inline Field1D steady_field(const ModelInstance& m, double gap_tol = 1e-8) {
  return [m, gap_tol](double k) { return detail::gapped_direction(m, k, 0.0, gap_tol); };
}

inline Field2D steady_field_2d(const ModelInstance& m, double gap_tol = 1e-8) {
  return [m, gap_tol](double kx, double ky) { return detail::gapped_direction(m, kx, ky, gap_tol); };
}

struct WindingResult {
  int winding;
  int grid;
  double axis_leak;  // max |a.n(k)| over the grid
};

/// Winding of n(k) in the plane normal to the chiral axis (2 = z), from the
/// angle theta = arg(n_y + i n_x).  The grid is doubled until no step
/// exceeds pi/4.
inline WindingResult winding_number(const Field1D& field, int grid = 256, double chiral_tol = 1e-8,
                                    int max_grid = 1 << 16) {
  for (int g = grid; g <= max_grid; g *= 2) {
    const auto ks = k_grid(g);
    double total = 0.0;
    double leak = 0.0;
    double worst_step = 0.0;
    Vec3 first = field(ks[0]);
    Vec3 prev = first;
    leak = std::abs(prev(2));
    for (int i = 1; i <= g; ++i) {
      const Vec3 cur = i < g ? field(ks[static_cast<std::size_t>(i)]) : first;
      leak = std::max(leak, std::abs(cur(2)));
      const double step = std::arg(cplx(cur(1), cur(0)) / cplx(prev(1), prev(0)));
      worst_step = std::max(worst_step, std::abs(step));
      total += step;
      prev = cur;
    }
    if (leak > chiral_tol) throw InvalidArgument("field leaves the plane normal to the chiral axis");
    if (worst_step < kPi / 4) return {static_cast<int>(std::lround(total / (2.0 * kPi))), g, leak};
  }
  throw NumericalError("winding did not converge under grid refinement");
}

inline WindingResult winding_number(const ModelInstance& m, int grid = 256, double gap_tol = 1e-8,
                                    double chiral_tol = 1e-8) {
  detail::require(m.dim == 1, "winding number needs a 1D model");
  return winding_number(steady_field(m, gap_tol), grid, chiral_tol);
}

/// Lower-band eigenvector of n.sigma.
inline Eigen::Vector2cd lower_state(const Vec3& n) {
  Mat2c h;
  h << n(2), cplx(n(0), -n(1)), cplx(n(0), n(1)), -n(2);
  Eigen::SelfAdjointEigenSolver<Mat2c> es(h);
  return es.eigenvectors().col(0);
}

struct ChernResult {
  int chern;
  int grid;
};

/// Lattice Chern number from gauge-invariant link variables of the lower
/// band of n(k).sigma, refined until two successive grids agree.
inline ChernResult chern_number(const Field2D& field, int grid = 64, int max_grid = 1024) {
  auto at_grid = [&](int g) {
    const auto ks = k_grid(g);
    std::vector<Eigen::Vector2cd> psi(static_cast<std::size_t>(g * g));
    for (int j = 0; j < g; ++j)
      for (int i = 0; i < g; ++i)
        psi[static_cast<std::size_t>(i + g * j)] =
            lower_state(field(ks[static_cast<std::size_t>(i)], ks[static_cast<std::size_t>(j)]));
    auto at = [&](int i, int j) -> const Eigen::Vector2cd& {
      return psi[static_cast<std::size_t>((i % g) + g * (j % g))];
    };
    auto link = [](const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
      const cplx o = a.dot(b);
      return std::abs(o) > 1e-14 ? o / std::abs(o) : cplx(1.0);
    };
    double total = 0.0;
    for (int j = 0; j < g; ++j)
      for (int i = 0; i < g; ++i) {
        const cplx u1 = link(at(i, j), at(i + 1, j));
        const cplx u2 = link(at(i + 1, j), at(i + 1, j + 1));
        const cplx u3 = link(at(i, j + 1), at(i + 1, j + 1));
        const cplx u4 = link(at(i, j), at(i, j + 1));
        total += std::arg(u1 * u2 * std::conj(u3) * std::conj(u4));
      }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
  };
  int prev = at_grid(grid);
  for (int g = 2 * grid; g <= max_grid; g *= 2) {
    const int cur = at_grid(g);
    if (cur == prev) return {cur, g};
    prev = cur;
  }
  throw NumericalError("Chern number did not converge under grid refinement");
}

inline ChernResult chern_number(const ModelInstance& m, int grid = 64, double gap_tol = 1e-8) {
  detail::require(m.dim == 2, "Chern number needs a 2D model");
  return chern_number(steady_field_2d(m, gap_tol), grid);
}

/// A zero of a complex field on the Brillouin zone with its phase winding.
struct FieldZero {
  double kx;
  double ky;
  int winding;
};

/// Locates zeros of u(k) by the phase circulation around each cell of a
/// grid shifted off the high-symmetry points.
inline std::vector<FieldZero> windings_around_zeros(
    const std::function<cplx(double, double)>& u, int grid = 128) {
  detail::require(grid >= 4, "zero search needs a grid of at least 4");
  const double h = 2.0 * kPi / grid;
  const double shift = 0.5 * h * (1.0 + 1.0 / std::sqrt(7.0));
  std::vector<cplx> val(static_cast<std::size_t>(grid * grid));
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i)
      val[static_cast<std::size_t>(i + grid * j)] = u(-kPi + shift + i * h, -kPi + shift + j * h);
  auto at = [&](int i, int j) { return val[static_cast<std::size_t>((i % grid) + grid * (j % grid))]; };
  std::vector<FieldZero> zeros;
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) {
      const cplx c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      double circ = 0.0;
      for (int e = 0; e < 4; ++e) circ += std::arg(c[(e + 1) % 4] / c[e]);
      const int w = static_cast<int>(std::lround(circ / (2.0 * kPi)));
      if (w != 0) zeros.push_back({-kPi + shift + (i + 0.5) * h, -kPi + shift + (j + 0.5) * h, w});
    }
  return zeros;
}

enum class SymmetryClass { BDI, D };

/// Time reversal holds when Delta_k = conj(u_k) v_k - conj(u_{-k}) v_{-k}
/// is real up to one global phase; particle-hole symmetry always holds.
inline SymmetryClass classify_symmetry(const BlochStencil& s, int grid = 64, double tol = 1e-8) {
  const auto ks = k_grid(grid);
  const std::vector<double> kys = s.dim == 2 ? ks : std::vector<double>{0.0};
  std::vector<cplx> delta;
  double scale = 0.0;
  cplx ref = 0.0;
  for (double ky : kys)
    for (double kx : ks) {
      const Symbol p = symbol(s, kx, ky);
      const Symbol m = symbol(s, -kx, -ky);
      const cplx d = std::conj(p.u) * p.v - std::conj(m.u) * m.v;
      delta.push_back(d);
      if (std::abs(d) > scale) {
        scale = std::abs(d);
        ref = d / std::abs(d);
      }
    }
  if (scale == 0.0) return SymmetryClass::BDI;
  for (const cplx& d : delta)
    if (std::abs((d * std::conj(ref)).imag()) > tol * scale) return SymmetryClass::D;
  return SymmetryClass::BDI;
}

inline SymmetryClass classify_symmetry(const ModelInstance& m, int grid = 64, double tol = 1e-8) {
  for (const auto& f : m.families)
    if (classify_symmetry(f.stencil, grid, tol) == SymmetryClass::D) return SymmetryClass::D;
  return SymmetryClass::BDI;
}

/// Largest anticommutator ||{sigma_z, Gamma(k)}|| over a 1D grid.
inline double chiral_residual(const ModelInstance& m, int grid = 256) {
  Mat2c sz;
  sz << 1, 0, 0, -1;
  double worst = 0.0;
  for (double k : k_grid(grid)) {
    const Mat2c g = bloch_blocks(m, k).gamma;
    worst = std::max(worst, max_abs(sz * g + g * sz));
  }
  return worst;
}

/// Residuals of a symmetry g acting on Majorana space as S.  Antiunitary
/// symmetries flip the sign of Y and of the steady state.
struct SymmetryResiduals {
  double damping;
  double pumping;
  double steady_state;
};

inline SymmetryResiduals symmetry_transform_check(const Dissipator& d, const Mat& gamma,
                                                  const Mat& s, bool antiunitary) {
  const double sign = antiunitary ? -1.0 : 1.0;
  return {max_abs(s * d.X * s.transpose() - d.X), max_abs(sign * s * d.Y * s.transpose() - d.Y),
          max_abs(sign * s * gamma * s.transpose() - gamma)};
}

/// Majorana representation of time reversal with a_j -> a_j.
inline Mat time_reversal_matrix(Eigen::Index sites) {
  Vec diag(2 * sites);
  for (Eigen::Index j = 0; j < sites; ++j) {
    diag(odd_index(j)) = -1.0;
    diag(even_index(j)) = 1.0;
  }
  return diag.asDiagonal();
}

/// Unit vector (Re Delta, -Im Delta, xi) / |.| of a BdG block.
inline Vec3 bdg_vector(cplx delta, double xi) {
  Vec3 n(delta.real(), -delta.imag(), xi);
  const double r = n.norm();
  if (r == 0.0) throw GapClosed("BdG vector vanishes", 0.0);
  return n / r;
}

/// Spinless p + ip superconductor: xi = mu - 2 cos kx - 2 cos ky,
/// Delta = sin kx + i sin ky.
inline Field2D p_ip_field(double mu) {
  return [mu](double kx, double ky) {
    return bdg_vector(cplx(std::sin(kx), std::sin(ky)), mu - 2.0 * std::cos(kx) - 2.0 * std::cos(ky));
  };
}

/// BdG vector of a pure-capable stencil,
/// (2 Re(u conj(v)), 2 Im(u conj(v)), |u|^2 - |v|^2) / (|u|^2 + |v|^2).
inline Field2D pure_state_field(const BlochStencil& s) {
  return [s](double kx, double ky) {
    const Symbol p = symbol(s, kx, ky);
    const cplx c = std::conj(p.u) * p.v;
    const double nn = std::norm(p.u) + std::norm(p.v);
    if (nn == 0.0) throw GapClosed("symbol vanishes", kx);
    return Vec3(2.0 * c.real() / nn, 2.0 * c.imag() / nn, (std::norm(p.u) - std::norm(p.v)) / nn);
  };
}

}  // namespace quadlind
