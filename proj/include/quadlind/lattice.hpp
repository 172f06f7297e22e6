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

#include <array>
#include <string>

#include "quadlind/error.hpp"

namespace quadlind {

enum class Boundary { Open, Periodic };

/// Rectangular lattice of width x height sites; a chain has height 1.
/// Site (x, y) has index x + width * y.
struct Lattice {
  int width = 1;
  int height = 1;
  Boundary bx = Boundary::Open;
  Boundary by = Boundary::Open;

  static Lattice chain(int n, Boundary b = Boundary::Open) { return {n, 1, b, Boundary::Open}; }
  static Lattice square(int w, int h, Boundary b = Boundary::Open) { return {w, h, b, b}; }
  /// Open along x, periodic along y.
  static Lattice cylinder(int w, int h) { return {w, h, Boundary::Open, Boundary::Periodic}; }

  int sites() const { return width * height; }
  int index(int x, int y) const { return x + width * y; }
  int x_of(int i) const { return i % width; }
  int y_of(int i) const { return i / width; }
  int dim() const { return height == 1 ? 1 : 2; }

  void validate() const {
    detail::require(width >= 1 && height >= 1, "lattice extents must be positive");
  }
};

}  // namespace quadlind
