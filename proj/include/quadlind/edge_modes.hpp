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

// Zero-damping edge modes of the form alpha_j = e^{i phi/2} beta^{m_j} with
// real beta.  A mode anticommutes with every bulk operator iff
//   sum_r (e^{-i phi} u(r) + v(r)) beta^r = 0.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "quadlind/dynamics.hpp"
#include "quadlind/models.hpp"

namespace quadlind {

/// Roots of sum_j a_j z^j (a_0 first) from the companion matrix.
inline std::vector<cplx> polynomial_roots(std::vector<cplx> a) {
  while (!a.empty() && std::abs(a.back()) == 0.0) a.pop_back();
  const int deg = static_cast<int>(a.size()) - 1;
  if (deg < 1) return {};
  CMat comp = CMat::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -a[static_cast<std::size_t>(i)] / a.back();
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  auto eval = [&](cplx z, cplx& dz) {
    cplx p = 0.0;
    dz = 0.0;
    for (int j = deg; j >= 0; --j) {
      dz = dz * z + p;
      p = p * z + a[static_cast<std::size_t>(j)];
    }
    return p;
  };
  for (cplx& z : roots)
    for (int it = 0; it < 8; ++it) {
      cplx dz;
      const cplx p = eval(z, dz);
      if (std::abs(dz) == 0.0) break;
      z -= p / dz;
    }
  return roots;
}

/// One edge solution: phase and real decay factors (beta_x[, beta_y]).
struct EdgeSolution {
  double phi = 0.0;
  std::vector<double> beta;
  double residual = 0.0;
};

/// Real, nonzero roots beta of the 1D edge condition at phase phi.
inline std::vector<EdgeSolution> solve_beta(const BlochStencil& s, double phi, double tol = 1e-9) {
  detail::require(s.dim == 1, "solve_beta needs a 1D stencil");
  const auto coeffs = edge_coefficients(s, phi);
  int lo = coeffs.front().dx;
  int hi = lo;
  double scale = 0.0;
  for (const auto& c : coeffs) {
    lo = std::min(lo, c.dx);
    hi = std::max(hi, c.dx);
    scale += std::abs(c.c);
  }
  std::vector<cplx> poly(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& c : coeffs) poly[static_cast<std::size_t>(c.dx - lo)] += c.c;
  // Drop trailing low-order zeros; they only give beta = 0.
  std::size_t first = 0;
  while (first < poly.size() && std::abs(poly[first]) <= tol * scale) ++first;
  if (first == poly.size()) throw InvalidArgument("edge condition vanishes identically");
  std::vector<cplx> reduced(poly.begin() + static_cast<std::ptrdiff_t>(first), poly.end());
  std::vector<EdgeSolution> out;
  for (const cplx& z : polynomial_roots(reduced)) {
    if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z))) continue;
    const double b = z.real();
    if (std::abs(b) <= tol) continue;
    cplx p = 0.0;
    for (const auto& c : coeffs) p += c.c * std::pow(b, c.dx);
    const double res = std::abs(p) / scale;
    if (res > 1e3 * tol) continue;
    out.push_back({phi, {b}, res});
  }
  std::sort(out.begin(), out.end(),
            [](const EdgeSolution& a, const EdgeSolution& b) { return a.beta[0] < b.beta[0]; });
  return out;
}

/// Edge solutions over a set of phases (0 and pi cover real stencils).
inline std::vector<EdgeSolution> edge_solutions(const BlochStencil& s,
                                                const std::vector<double>& phases = {0.0, kPi}) {
  std::vector<EdgeSolution> out;
  for (double phi : phases)
    for (auto& e : solve_beta(s, phi)) out.push_back(std::move(e));
  return out;
}

namespace detail {

/// Real bivariate polynomial with nonnegative exponents.
struct Poly2 {
  std::map<std::pair<int, int>, double> c;

  double eval(double x, double y) const {
    double s = 0.0;
    for (const auto& [e, a] : c) s += a * std::pow(x, e.first) * std::pow(y, e.second);
    return s;
  }
  double dx(double x, double y) const {
    double s = 0.0;
    for (const auto& [e, a] : c)
      if (e.first > 0) s += a * e.first * std::pow(x, e.first - 1) * std::pow(y, e.second);
    return s;
  }
  double dy(double x, double y) const {
    double s = 0.0;
    for (const auto& [e, a] : c)
      if (e.second > 0) s += a * e.second * std::pow(x, e.first) * std::pow(y, e.second - 1);
    return s;
  }
  /// Coefficients in x at fixed y, lowest order first.
  std::vector<cplx> in_x(double y) const {
    int deg = 0;
    for (const auto& [e, a] : c) deg = std::max(deg, e.first);
    std::vector<cplx> out(static_cast<std::size_t>(deg + 1), 0.0);
    for (const auto& [e, a] : c) out[static_cast<std::size_t>(e.first)] += a * std::pow(y, e.second);
    return out;
  }
  bool zero(double tol) const {
    for (const auto& [e, a] : c)
      if (std::abs(a) > tol) return false;
    return true;
  }
};

inline std::vector<double> real_roots(const std::vector<cplx>& a) {
  std::vector<double> out;
  for (const cplx& z : polynomial_roots(a))
    if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z)) && std::abs(z.real()) > 1e-12)
      out.push_back(z.real());
  return out;
}

}  // namespace detail

/// Real solutions (beta_x, beta_y) of the 2D edge condition at phase phi.
/// Real roots of the real part are followed along a logarithmic scan in
/// beta_y; sign changes of the imaginary part are polished by Newton steps.
inline std::vector<EdgeSolution> solve_beta_2d(const BlochStencil& s, double phi,
                                               double tol = 1e-9, int scan = 4000) {
  detail::require(s.dim == 2, "solve_beta_2d needs a 2D stencil");
  const auto coeffs = edge_coefficients(s, phi);
  int lx = 0, ly = 0;
  double scale = 0.0;
  for (const auto& c : coeffs) {
    lx = std::min(lx, c.dx);
    ly = std::min(ly, c.dy);
    scale += std::abs(c.c);
  }
  detail::Poly2 re, im;
  for (const auto& c : coeffs) {
    re.c[{c.dx - lx, c.dy - ly}] += c.c.real();
    im.c[{c.dx - lx, c.dy - ly}] += c.c.imag();
  }
  if (im.zero(tol * scale) || re.zero(tol * scale))
    throw InvalidArgument("edge condition is real; solutions form a continuum");

  auto residual = [&](double x, double y) {
    cplx p = 0.0;
    for (const auto& c : coeffs) p += c.c * std::pow(x, c.dx) * std::pow(y, c.dy);
    return std::abs(p) / scale;
  };
  auto polish = [&](double& x, double& y) {
    for (int it = 0; it < 50; ++it) {
      const double f = re.eval(x, y), g = im.eval(x, y);
      Eigen::Matrix2d j;
      j << re.dx(x, y), re.dy(x, y), im.dx(x, y), im.dy(x, y);
      if (std::abs(j.determinant()) < 1e-300) break;
      const Eigen::Vector2d step = j.fullPivLu().solve(Eigen::Vector2d(f, g));
      x -= step(0);
      y -= step(1);
      if (step.norm() < 1e-15 * (1.0 + std::abs(x) + std::abs(y))) break;
    }
  };

  std::vector<EdgeSolution> out;
  auto add = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y) || std::abs(x) < 1e-10 || std::abs(y) < 1e-10) return;
    if (residual(x, y) > 1e3 * tol) return;
    for (const auto& e : out)
      if (std::abs(e.beta[0] - x) < 1e-7 * (1 + std::abs(x)) &&
          std::abs(e.beta[1] - y) < 1e-7 * (1 + std::abs(y)))
        return;
    out.push_back({phi, {x, y}, residual(x, y)});
  };

  for (int sign : {-1, 1}) {
    std::vector<double> prev_x;
    std::vector<double> prev_g;
    double prev_y = 0.0;
    for (int i = 0; i <= scan; ++i) {
      const double y = sign * std::pow(10.0, -3.0 + 6.0 * i / scan);
      std::vector<double> xs = detail::real_roots(re.in_x(y));
      std::vector<double> gs;
      for (double x : xs) gs.push_back(im.eval(x, y));
      if (i > 0 && xs.size() == prev_x.size()) {
        for (std::size_t a = 0; a < xs.size(); ++a) {
          std::size_t best = 0;
          for (std::size_t b = 1; b < prev_x.size(); ++b)
            if (std::abs(prev_x[b] - xs[a]) < std::abs(prev_x[best] - xs[a])) best = b;
          if (gs[a] == 0.0 || (gs[a] > 0) != (prev_g[best] > 0)) {
            const double w = std::abs(prev_g[best]) / (std::abs(prev_g[best]) + std::abs(gs[a]));
            double x = prev_x[best] + w * (xs[a] - prev_x[best]);
            double yy = prev_y + w * (y - prev_y);
            polish(x, yy);
            add(x, yy);
          }
        }
      }
      prev_x = std::move(xs);
      prev_g = std::move(gs);
      prev_y = y;
    }
  }
  std::sort(out.begin(), out.end(), [](const EdgeSolution& a, const EdgeSolution& b) {
    return std::make_pair(a.beta[1], a.beta[0]) < std::make_pair(b.beta[1], b.beta[0]);
  });
  return out;
}

/// Majorana vector of the edge mode on a chain or a cylinder (open along x).
/// Amplitudes are referenced to the edge the mode decays from.
inline Vec edge_mode(const EdgeSolution& e, const Lattice& lat) {
  detail::require(!e.beta.empty() && e.beta.size() <= 2, "edge solution has no decay factors");
  const double bx = e.beta[0];
  const double by = e.beta.size() > 1 ? e.beta[1] : 1.0;
  detail::require(std::abs(std::abs(by) - 1.0) < 1e-9 || lat.by == Boundary::Open,
                  "periodic direction needs |beta_y| = 1");
  const int ref = std::abs(bx) <= 1.0 ? 0 : lat.width - 1;
  CVec alpha(lat.sites());
  const cplx phase = std::exp(0.5 * kI * e.phi);
  for (int y = 0; y < lat.height; ++y)
    for (int x = 0; x < lat.width; ++x)
      alpha(lat.index(x, y)) = phase * std::pow(bx, x - ref) * std::pow(by, y);
  Vec g = majorana_from_amplitudes(alpha);
  return g / g.norm();
}

/// Weight of a Majorana vector on each site.
inline Vec site_weights(const Vec& mode) {
  Vec w(mode.size() / 2);
  for (Eigen::Index j = 0; j < w.size(); ++j)
    w(j) = mode(odd_index(j)) * mode(odd_index(j)) + mode(even_index(j)) * mode(even_index(j));
  return w;
}

/// Rotates a set of modes (columns) into eigenvectors of a site observable,
/// ordered by its expectation value.
inline Mat localize_modes(const Mat& modes, const Vec& site_observable) {
  if (modes.cols() == 0) return modes;
  Vec diag(2 * site_observable.size());
  for (Eigen::Index j = 0; j < site_observable.size(); ++j)
    diag(odd_index(j)) = diag(even_index(j)) = site_observable(j);
  const Mat restricted = modes.transpose() * diag.asDiagonal() * modes;
  Eigen::SelfAdjointEigenSolver<Mat> es(restricted);
  return modes * es.eigenvectors();
}

/// Column positions x of every site.
inline Vec column_positions(const Lattice& lat) {
  Vec x(lat.sites());
  for (int i = 0; i < lat.sites(); ++i) x(i) = lat.x_of(i);
  return x;
}

struct LocalizationFit {
  double xi = 0.0;  // amplitude decay length in sites
  double r2 = 0.0;
  int edge = 0;     // 0 left, 1 right
};

/// Fits log amplitude against distance from the peak column along x.
inline LocalizationFit fit_localization(const Vec& mode, const Lattice& lat, double floor = 1e-12) {
  const Vec w = site_weights(mode);
  Vec col = Vec::Zero(lat.width);
  for (int i = 0; i < lat.sites(); ++i) col(lat.x_of(i)) += w(i);
  Eigen::Index peak;
  const double top = col.maxCoeff(&peak);
  LocalizationFit fit;
  fit.edge = peak < lat.width / 2 ? 0 : 1;
  std::vector<double> xs, ys;
  const int dir = fit.edge == 0 ? 1 : -1;
  for (int x = static_cast<int>(peak); x >= 0 && x < lat.width; x += dir) {
    const double a = std::sqrt(col(x) / top);
    if (a < floor) break;
    xs.push_back(std::abs(x - static_cast<int>(peak)));
    ys.push_back(std::log(a));
  }
  if (xs.size() < 3) throw NumericalError("mode too localized to fit a decay length");
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  Mat a(n, 2);
  Vec b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = xs[static_cast<std::size_t>(i)];
    b(i) = ys[static_cast<std::size_t>(i)];
  }
  const Vec coef = a.colPivHouseholderQr().solve(b);
  if (coef(1) >= 0.0) throw NumericalError("mode is not localized");
  fit.xi = -1.0 / coef(1);
  const double mean = b.mean();
  const double ss_tot = (b.array() - mean).square().sum();
  const double ss_res = (a * coef - b).squaredNorm();
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

/// Bulk-edge inequality: zero-damping plus zero-purity Majorana modes at an
/// interface bound the jump of the winding number.
struct BulkEdgeReport {
  int zero_damping;
  int zero_purity;
  int winding_jump;
  bool holds;
};

inline BulkEdgeReport bulk_edge_check(int winding_jump, const ModeCensus& c) {
  const int jump = std::abs(winding_jump);
  return {c.zero_damping, c.zero_purity, jump, c.zero_damping + c.zero_purity >= jump};
}

}  // namespace quadlind
