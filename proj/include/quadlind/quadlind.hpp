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

#include "quadlind/bloch.hpp"
#include "quadlind/braiding.hpp"
#include "quadlind/dynamics.hpp"
#include "quadlind/edge_modes.hpp"
#include "quadlind/gaussian.hpp"
#include "quadlind/lattice.hpp"
#include "quadlind/meanfield.hpp"
#include "quadlind/models.hpp"
#include "quadlind/stencil.hpp"
#include "quadlind/version.hpp"
