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

// Run configuration, model registry and value ranges.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "quadlind/quadlind.hpp"
#include "table.hpp"

namespace qlcli {

namespace ql = quadlind;

/// Every knob a task reads.  Defaults of zero or empty are resolved per
/// model by `normalize`.
struct RunConfig {
  std::string task;
  std::string model = "three_site";
  std::vector<std::string> params;  // name=value
  std::vector<std::string> ranges;  // name=start:stop:step or name=v1,v2,...
  std::string observable = "bulk";  // bulk, localization, vortex-rate
  std::string kind = "auto";        // auto, winding, chern
  int grid = 0;                     // 0: 256 in 1D, 64 in 2D
  std::string lattice;              // WxH; empty: task default
  std::string boundary = "open";    // open, periodic, cylinder
  std::string placement = "auto";   // auto, full, truncate
  int separation = 16;
  double core_width = -1.0;        // negative: 0 for vortex, 1.5 for braid
  double radius = 2.5;
  double dt = 8.0;
  std::vector<double> times{800.0};
  int count = 8;
  double tol = 1e-10;
  std::string recipe;
  std::string format = "csv";
  std::string out = "-";
  int jobs = 0;
};

// ---------------------------------------------------------------- models

struct ModelSpec {
  int dim;
  std::map<std::string, double> defaults;
};

inline const std::map<std::string, ModelSpec>& model_specs() {
  static const std::map<std::string, ModelSpec> specs{
      {"kitaev", {1, {}}},
      {"three_site", {1, {{"kappa", 1.0}}}},
      {"zigzag_coherent", {1, {{"kappa", 0.5}}}},
      {"zigzag_competing", {1, {{"kappa", 0.5}}}},
      {"cross_2d", {2, {{"beta", 2.0}}}},
  };
  return specs;
}

inline const ModelSpec& model_spec(const std::string& name) {
  const auto it = model_specs().find(name);
  if (it == model_specs().end()) throw ConfigError("unknown model '" + name + "'");
  return it->second;
}

inline ql::ModelInstance make_model(const std::string& name, const std::map<std::string, double>& p) {
  model_spec(name);
  if (name == "kitaev") return ql::kitaev_wire();
  if (name == "three_site") return ql::three_site_wire(p.at("kappa"));
  if (name == "zigzag_coherent") return ql::zigzag_coherent(p.at("kappa"));
  if (name == "zigzag_competing") return ql::zigzag_competing(p.at("kappa"));
  return ql::cross_2d(p.at("beta"));
}

inline double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) throw ConfigError("bad number '" + text + "' for " + what);
  return v;
}

inline std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected name=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

/// Model parameters: defaults overridden by name=value pairs; unknown names
/// are rejected.
inline std::map<std::string, double> model_params(const RunConfig& c) {
  std::map<std::string, double> p = model_spec(c.model).defaults;
  for (const auto& a : c.params) {
    const auto [k, v] = split_assignment(a);
    if (!p.count(k)) throw ConfigError("model '" + c.model + "' has no parameter '" + k + "'");
    p[k] = parse_number(v, k);
  }
  return p;
}

/// Values of start:stop:step (inclusive of stop) or a comma list.  Values
/// are start + i step, never accumulated.
inline std::vector<double> parse_values(const std::string& spec, const std::string& what) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("range for " + what + " must be start:stop:step");
    const double a = parse_number(parts[0], what), b = parse_number(parts[1], what), s = parse_number(parts[2], what);
    if (s <= 0.0 || b < a) throw ConfigError("range for " + what + " needs step > 0 and stop >= start");
    const long n = std::lround(std::floor((b - a) / s + 1e-9)) + 1;
    if (n > 1000000) throw ConfigError("range for " + what + " is too long");
    for (long i = 0; i < n; ++i) {
      const double v = a + s * double(i);
      out.push_back(std::abs(v) < 1e-14 * s ? 0.0 : v);
    }
  } else {
    for (const auto& t : split(spec, ',')) out.push_back(parse_number(t, what));
  }
  if (out.empty()) throw ConfigError("empty range for " + what);
  return out;
}

struct Range {
  std::string name;
  std::vector<double> values;
};

inline std::vector<Range> parse_ranges(const RunConfig& c, const std::set<std::string>& allowed) {
  std::vector<Range> out;
  std::set<std::string> seen;
  for (const auto& r : c.ranges) {
    const auto [k, v] = split_assignment(r);
    if (!allowed.count(k)) throw ConfigError("cannot sweep '" + k + "' here");
    if (!seen.insert(k).second) throw ConfigError("'" + k + "' swept twice");
    out.push_back({k, parse_values(v, k)});
  }
  if (out.empty()) throw ConfigError("sweep needs at least one --range");
  return out;
}

// ---------------------------------------------------------------- geometry

/// Lattice spec with the task default filled in.
inline std::string lattice_spec(const RunConfig& c, int dim) {
  if (!c.lattice.empty()) return c.lattice;
  if (c.task == "braid") return "12x12";
  if (c.task == "vortex" || (c.task == "sweep" && c.observable == "vortex-rate")) return "35x35";
  return dim == 1 ? "60x1" : "21x21";
}

inline ql::Lattice make_lattice(const RunConfig& c, int dim) {
  const std::string spec = lattice_spec(c, dim);
  const auto parts = split(spec, 'x');
  if (parts.size() != 2) throw ConfigError("lattice must be WxH, got '" + spec + "'");
  const int w = static_cast<int>(parse_number(parts[0], "lattice width"));
  const int h = static_cast<int>(parse_number(parts[1], "lattice height"));
  if (w < 2 || h < 1 || double(w) * h > 4096.0) throw ConfigError("lattice '" + spec + "' out of range");
  if (dim == 1 && h != 1) throw ConfigError("a 1D model needs lattice height 1");
  if (dim == 2 && h < 2) throw ConfigError("a 2D model needs lattice height >= 2");
  ql::Lattice lat{w, h};
  if (c.boundary == "periodic") {
    lat.bx = ql::Boundary::Periodic;
    lat.by = dim == 2 ? ql::Boundary::Periodic : ql::Boundary::Open;
  } else if (c.boundary == "cylinder") {
    if (dim != 2) throw ConfigError("cylinder boundary needs a 2D model");
    lat.by = ql::Boundary::Periodic;
  }
  return lat;
}

inline ql::Placement placement(const RunConfig& c, bool vortices) {
  if (c.placement == "full") return ql::Placement::FullSupport;
  if (c.placement == "truncate") return ql::Placement::Truncate;
  return vortices ? ql::Placement::Truncate : ql::Placement::FullSupport;
}

inline double core_width_for(const RunConfig& c) {
  return c.core_width >= 0.0 ? c.core_width : (c.task == "braid" ? 1.5 : 0.0);
}

inline int grid_for(const RunConfig& c, int dim) { return c.grid > 0 ? c.grid : (dim == 1 ? 256 : 64); }

// ---------------------------------------------------------------- echo

/// Normalized configuration: only what the task reads, with defaults
/// resolved.  Output location and thread count do not enter.
inline json normalized(const RunConfig& c) {
  json j;
  j["task"] = c.task;
  if (c.task == "compare") return j;
  const ModelSpec& spec = model_spec(c.model);
  j["model"] = c.model;
  json p = json::object();
  for (const auto& [k, v] : model_params(c)) p[k] = v;
  j["params"] = p;
  j["tol"] = c.tol;
  if (!c.recipe.empty()) j["recipe"] = c.recipe;
  const std::string& t = c.task;
  if (t == "sweep") {
    json r = json::array();
    for (const auto& s : c.ranges) {
      const auto [k, v] = split_assignment(s);
      r.push_back({{"name", k}, {"values", parse_values(v, k)}});
    }
    j["ranges"] = r;
    j["observable"] = c.observable;
  }
  if (t == "invariant" || (t == "sweep" && c.observable == "bulk")) j["grid"] = grid_for(c, spec.dim);
  if (t == "invariant") j["kind"] = c.kind;
  if (t == "spectrum" || t == "vortex" || t == "braid" || (t == "sweep" && c.observable != "bulk")) {
    j["lattice"] = lattice_spec(c, spec.dim);
    j["boundary"] = c.boundary;
    j["placement"] = c.placement;
  }
  if (t == "vortex" || (t == "sweep" && c.observable == "vortex-rate")) {
    j["separation"] = c.separation;
    j["core_width"] = core_width_for(c);
  }
  if (t == "vortex") j["count"] = c.count;
  if (t == "braid") {
    j["radius"] = c.radius;
    j["core_width"] = core_width_for(c);
    j["dt"] = c.dt;
    j["times"] = c.times;
  }
  return j;
}

inline std::string config_hash(const json& normalized_config) { return sha256_hex(normalized_config.dump()); }

}  // namespace qlcli
