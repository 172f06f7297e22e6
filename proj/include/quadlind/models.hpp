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

// Model zoo and finite realizations on lattices.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "quadlind/gaussian.hpp"
#include "quadlind/lattice.hpp"
#include "quadlind/stencil.hpp"

namespace quadlind {

/// One translation-invariant family of Lindblad operators.  The family
/// enters the dissipator with the given weight.
struct Family {
  BlochStencil stencil;
  double weight = 1.0;
};

/// A vortex in the phase of the annihilation part:
/// u_ij -> u_ij f(|r_j - center|) exp(-i winding phi_j).
struct Vortex {
  double x = 0.0;
  double y = 0.0;
  int winding = 1;
};

/// Radial amplitude profile of a vortex core.
struct CoreProfile {
  /// Zero width gives a point core: f(0) = 0 and f = 1 elsewhere.
  double width = 0.0;

  double operator()(double r) const {
    if (width <= 0.0) return r < 1e-12 ? 0.0 : 1.0;
    return std::tanh(r / width);
  }
};

/// How operators near open edges are placed.
enum class Placement {
  /// Keep an operator only when the model footprint around its center fits.
  FullSupport,
  /// Keep every operator centered on the lattice and drop terms that fall off.
  Truncate,
};

struct ModelInstance {
  std::string name;
  std::map<std::string, double> params;
  int dim = 1;
  std::vector<Family> families;
  std::vector<Vortex> vortices;
  CoreProfile core;

  /// Footprint radius per axis, shared by all families.
  std::array<double, 2> radius() const {
    std::array<double, 2> r{0.0, 0.0};
    for (const auto& f : families) {
      const auto fr = f.stencil.radius();
      r[0] = std::max(r[0], fr[0]);
      r[1] = std::max(r[1], fr[1]);
    }
    return r;
  }

  void validate() const {
    detail::require(dim == 1 || dim == 2, "model dimension must be 1 or 2");
    detail::require(!families.empty(), "model has no operator families");
    for (const auto& f : families) {
      f.stencil.validate();
      detail::require(f.stencil.dim == dim, "family dimension mismatch");
      detail::require(f.weight >= 0.0, "family weight must be non-negative");
    }
    detail::require(vortices.empty() || dim == 2, "vortices need a 2D model");
  }
};

// ---------------------------------------------------------------- zoo

/// Bond-centered pair operator L_n = [(a_n^dag + a_{n+r}^dag) + (a_n - a_{n+r})] / 2.
inline BlochStencil pair_stencil(int reach) {
  BlochStencil s;
  s.dim = 1;
  s.terms = {{0, 0, 0.5, 0.5}, {reach, 0, -0.5, 0.5}};
  s.center = {0.5 * reach, 0.0};
  return s;
}

/// Dissipative Kitaev wire with a pure, fully paired steady state.
inline ModelInstance kitaev_wire() {
  return {"kitaev", {}, 1, {{pair_stencil(1), 1.0}}, {}, {}};
}

/// L_n = [kappa a_n^dag + (a_{n+1}^dag + a_{n-1}^dag) + (a_{n+1} - a_{n-1})] / sqrt(4 + kappa^2).
inline ModelInstance three_site_wire(double kappa) {
  BlochStencil s;
  s.dim = 1;
  s.terms = {{-1, 0, -1.0, 1.0}, {0, 0, 0.0, kappa}, {1, 0, 1.0, 1.0}};
  return {"three_site", {{"kappa", kappa}}, 1, {{s.scaled(1.0 / std::sqrt(4.0 + kappa * kappa)), 1.0}},
          {}, {}};
}

/// Coherent zigzag combination L = (L1 + kappa L2) / sqrt(1 + kappa + kappa^2).
inline ModelInstance zigzag_coherent(double kappa) {
  const double norm = std::sqrt(1.0 + kappa + kappa * kappa);
  detail::require(norm > 0.0, "degenerate normalization");
  BlochStencil s;
  s.dim = 1;
  s.terms = {{0, 0, 0.5 * (1.0 + kappa), 0.5 * (1.0 + kappa)},
             {1, 0, -0.5, 0.5},
             {2, 0, -0.5 * kappa, 0.5 * kappa}};
  s.center = {1.0, 0.0};
  return {"zigzag_coherent", {{"kappa", kappa}}, 1, {{s.scaled(1.0 / norm), 1.0}}, {}, {}};
}

/// Competing zigzag channels: (D[L1] + kappa D[L2]) / (1 + kappa).
inline ModelInstance zigzag_competing(double kappa) {
  detail::require(kappa >= 0.0, "competing weights need kappa >= 0");
  return {"zigzag_competing",
          {{"kappa", kappa}},
          1,
          {{pair_stencil(1), 1.0 / (1.0 + kappa)}, {pair_stencil(2), kappa / (1.0 + kappa)}},
          {},
          {}};
}

/// Five-site cross on the square lattice with on-site creation weight `mass`.
inline ModelInstance cross_2d(double mass) {
  BlochStencil s;
  s.dim = 2;
  s.terms = {{0, 0, 0.0, mass},           {1, 0, 1.0, 1.0},  {-1, 0, -1.0, 1.0},
             {0, 1, cplx(0.0, 1.0), 1.0}, {0, -1, cplx(0.0, -1.0), 1.0}};
  return {"cross_2d", {{"beta", mass}}, 2, {{s, 1.0}}, {}, {}};
}

/// Adds vortices to a 2D model.
inline ModelInstance with_vortices(ModelInstance m, std::vector<Vortex> vortices,
                                   CoreProfile core = {}) {
  detail::require(m.dim == 2, "vortices need a 2D model");
  m.vortices = std::move(vortices);
  m.core = core;
  return m;
}

/// Two unit vortices at separation d centered on the lattice, along x.
inline ModelInstance vortex_pair(double mass, const Lattice& lat, int separation,
                                 CoreProfile core = {}) {
  detail::require(separation > 0 && separation < lat.width, "vortex separation out of range");
  const int cy = lat.height / 2;
  const int left = (lat.width - 1 - separation) / 2;
  return with_vortices(cross_2d(mass),
                       {{double(left), double(cy), 1}, {double(left + separation), double(cy), 1}},
                       core);
}

/// Restricts a 2D model to the k_y sector `ky`, giving a 1D model along x.
inline ModelInstance cylinder_reduce(const ModelInstance& m, double ky) {
  detail::require(m.dim == 2, "cylinder reduction needs a 2D model");
  detail::require(m.vortices.empty(), "cylinder reduction needs a translation-invariant model");
  ModelInstance out;
  out.name = m.name + "_sector";
  out.params = m.params;
  out.params["ky"] = ky;
  out.dim = 1;
  for (const auto& f : m.families) {
    BlochStencil s;
    s.dim = 1;
    s.center = {f.stencil.center[0], 0.0};
    for (const auto& t : f.stencil.terms) {
      const cplx phase = std::exp(kI * (ky * t.dy));
      auto it = std::find_if(s.terms.begin(), s.terms.end(),
                             [&](const StencilTerm& e) { return e.dx == t.dx; });
      if (it == s.terms.end())
        s.terms.push_back({t.dx, 0, t.u * phase, t.v * phase});
      else {
        it->u += t.u * phase;
        it->v += t.v * phase;
      }
    }
    out.families.push_back({s, f.weight});
  }
  return out;
}

// ----------------------------------------------------- finite realization

namespace detail {

inline bool placement_fits(double c, double r, int extent) {
  return c - r >= -1e-9 && c + r <= extent - 1 + 1e-9;
}

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace detail

/// Lindblad operator stored by its nonzero Majorana coefficients.
struct SparseOperator {
  std::vector<std::pair<Eigen::Index, cplx>> entries;

  CVec dense(Eigen::Index majoranas) const {
    CVec l = CVec::Zero(majoranas);
    for (const auto& [a, c] : entries) l(a) += c;
    return l;
  }
};

/// Lindblad operators of the model on a finite lattice, in sparse form.
inline std::vector<SparseOperator> realize_sparse(const ModelInstance& m, const Lattice& lat,
                                                  Placement placement = Placement::FullSupport) {
  m.validate();
  lat.validate();
  detail::require(m.dim == lat.dim() || (m.dim == 2 && lat.height > 1),
                  "lattice dimension does not match model");
  const auto rad = m.radius();
  std::vector<SparseOperator> ops;

  auto texture = [&](int x, int y) {
    cplx f = 1.0;
    for (const auto& vx : m.vortices) {
      const double dx = x - vx.x;
      const double dy = y - vx.y;
      f *= m.core(std::hypot(dx, dy)) * std::exp(-kI * double(vx.winding) * std::atan2(dy, dx));
    }
    return f;
  };
  auto fits = [&](double c, double r, int extent) {
    return detail::placement_fits(c, placement == Placement::FullSupport ? r : 0.0, extent);
  };

  for (const auto& fam : m.families) {
    const double amp = std::sqrt(fam.weight);
    if (amp == 0.0) continue;
    const auto& st = fam.stencil;
    for (int py = 0; py < lat.height; ++py)
      for (int px = 0; px < lat.width; ++px) {
        if (lat.bx == Boundary::Open && !fits(px + st.center[0], rad[0], lat.width)) continue;
        if (m.dim == 2 && lat.by == Boundary::Open && !fits(py + st.center[1], rad[1], lat.height))
          continue;
        SparseOperator op;
        for (const auto& t : st.terms) {
          int x = px + t.dx;
          int y = py + t.dy;
          if (lat.bx == Boundary::Periodic) x = detail::wrap(x, lat.width);
          if (lat.by == Boundary::Periodic) y = detail::wrap(y, lat.height);
          if (x < 0 || x >= lat.width || y < 0 || y >= lat.height) continue;
          const Eigen::Index j = lat.index(x, y);
          const cplx u = amp * (m.vortices.empty() ? t.u : t.u * texture(x, y));
          const cplx v = amp * t.v;
          // a = (c_even - i c_odd) / 2, a^dag = (c_even + i c_odd) / 2
          op.entries.push_back({odd_index(j), 0.5 * kI * (v - u)});
          op.entries.push_back({even_index(j), 0.5 * (u + v)});
        }
        if (!op.entries.empty()) ops.push_back(std::move(op));
      }
  }
  return ops;
}

/// Lindblad operators of the model on a finite lattice.
inline OperatorSet realize(const ModelInstance& m, const Lattice& lat,
                          Placement placement = Placement::FullSupport) {
  OperatorSet out;
  for (const auto& op : realize_sparse(m, lat, placement))
    out.push_back(op.dense(2 * Eigen::Index(lat.sites())));
  return out;
}

/// Dissipator of sparse operators, accumulated entry by entry.
inline Dissipator build_dissipator(const std::vector<SparseOperator>& ops, Eigen::Index majoranas) {
  CMat m = CMat::Zero(majoranas, majoranas);
  for (const auto& op : ops)
    for (const auto& [a, ca] : op.entries)
      for (const auto& [b, cb] : op.entries) m(a, b) += std::conj(ca) * cb;
  return {2.0 * m.real(), -4.0 * m.imag()};
}

inline Dissipator finite_dissipator(const ModelInstance& m, const Lattice& lat,
                                    Placement placement = Placement::FullSupport) {
  return build_dissipator(realize_sparse(m, lat, placement), 2 * Eigen::Index(lat.sites()));
}

}  // namespace quadlind
