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

// Translation-invariant linear Lindblad operators
//   L_i = sum_r u(r) a_{i+r} + v(r) a_{i+r}^dag
// and their momentum symbols u_k = sum_r u(r) e^{i k.r}, v_k likewise.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "quadlind/linalg.hpp"

namespace quadlind {

struct StencilTerm {
  int dx = 0;
  int dy = 0;
  cplx u{0.0, 0.0};
  cplx v{0.0, 0.0};
};

struct BlochStencil {
  int dim = 1;
  std::vector<StencilTerm> terms;
  /// Symmetry center relative to the reference site (0.5 for bond-centered).
  std::array<double, 2> center{0.0, 0.0};

  BlochStencil scaled(double s) const {
    BlochStencil out = *this;
    for (auto& t : out.terms) {
      t.u *= s;
      t.v *= s;
    }
    return out;
  }

  /// Largest distance of a term from the symmetry center along each axis.
  std::array<double, 2> radius() const {
    std::array<double, 2> r{0.0, 0.0};
    for (const auto& t : terms) {
      r[0] = std::max(r[0], std::abs(t.dx - center[0]));
      r[1] = std::max(r[1], std::abs(t.dy - center[1]));
    }
    return r;
  }

  void validate() const {
    detail::require(dim == 1 || dim == 2, "stencil dimension must be 1 or 2");
    detail::require(!terms.empty(), "stencil has no terms");
    if (dim == 1)
      for (const auto& t : terms) detail::require(t.dy == 0, "1D stencil with y offset");
  }
};

struct Symbol {
  cplx u;
  cplx v;
};

inline Symbol symbol(const BlochStencil& s, double kx, double ky = 0.0) {
  Symbol out{0.0, 0.0};
  for (const auto& t : s.terms) {
    const cplx phase = std::exp(kI * (kx * t.dx + ky * t.dy));
    out.u += t.u * phase;
    out.v += t.v * phase;
  }
  return out;
}

/// Sum of e^{-i phi} u(r) + v(r) over terms sharing the same offset.
struct EdgeCoefficient {
  int dx;
  int dy;
  cplx c;
};

inline std::vector<EdgeCoefficient> edge_coefficients(const BlochStencil& s, double phi) {
  std::vector<EdgeCoefficient> out;
  const cplx rot = std::exp(-kI * phi);
  for (const auto& t : s.terms) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const EdgeCoefficient& e) { return e.dx == t.dx && e.dy == t.dy; });
    if (it == out.end())
      out.push_back({t.dx, t.dy, rot * t.u + t.v});
    else
      it->c += rot * t.u + t.v;
  }
  return out;
}

}  // namespace quadlind
