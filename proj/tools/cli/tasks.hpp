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

// Tasks: each turns a run configuration into a result table.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "runconfig.hpp"

namespace qlcli {

using Row = std::vector<Cell>;

/// Evaluates rows 0..n-1 on `jobs` threads; the output order is the index
/// order regardless of scheduling.  The first failure is rethrown.
inline std::vector<Row> parallel_rows(std::size_t n, int jobs, const std::function<Row(std::size_t)>& fn) {
  std::vector<Row> rows(n);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(n, jobs > 0 ? std::size_t(jobs) : hw);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        rows[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

inline Cell int_or_empty(const std::function<int()>& f) {
  try {
    return static_cast<long long>(f());
  } catch (const ql::GapClosed&) {
    return std::monostate{};
  }
}

// ---------------------------------------------------------------- spectrum

/// Damping rates (eigenvalues of X) and purity values (eigenvalues of
/// Gamma^T Gamma) of the steady state reached from the fully mixed state.
inline Table task_spectrum(const RunConfig& c) {
  const auto m = make_model(c.model, model_params(c));
  const ql::Lattice lat = make_lattice(c, m.dim);
  const ql::Dissipator d = ql::finite_dissipator(m, lat, placement(c, false));
  const ql::Propagator p(d, c.tol);
  const ql::Mat g = p.steady_state();
  Eigen::SelfAdjointEigenSolver<ql::Mat> es(g.transpose() * g, Eigen::EigenvaluesOnly);
  Table t{{{"index", "int"}, {"damping", "float"}, {"purity", "float"}}, {}};
  for (Eigen::Index i = 0; i < p.rates().size(); ++i)
    t.rows.push_back({static_cast<long long>(i), p.rates()(i), std::max(0.0, es.eigenvalues()(i))});
  return t;
}

// ---------------------------------------------------------------- invariant

inline Table task_invariant(const RunConfig& c) {
  const auto m = make_model(c.model, model_params(c));
  const int grid = grid_for(c, m.dim);
  std::string kind = c.kind;
  if (kind == "auto") kind = m.dim == 1 ? "winding" : "chern";
  Table t{{{"kind", "string"}, {"sector", "string"}, {"value", "int"}, {"grid", "int"}}, {}};
  if (kind == "chern") {
    if (m.dim != 2) throw ConfigError("chern number needs a 2D model");
    const auto r = ql::chern_number(m, grid);
    t.rows.push_back({kind, std::string("bz"), static_cast<long long>(r.chern), static_cast<long long>(r.grid)});
  } else if (m.dim == 1) {
    const auto r = ql::winding_number(m, grid);
    t.rows.push_back({kind, std::string("k"), static_cast<long long>(r.winding), static_cast<long long>(r.grid)});
  } else {
    for (const auto& [label, ky] : {std::pair{"ky=0", 0.0}, std::pair{"ky=pi", ql::kPi}}) {
      const auto r = ql::winding_number(ql::cylinder_reduce(m, ky), grid);
      t.rows.push_back({kind, std::string(label), static_cast<long long>(r.winding), static_cast<long long>(r.grid)});
    }
  }
  return t;
}

// ---------------------------------------------------------------- edge modes

/// Real decay factors of edge-mode candidates per operator family.
inline Table task_edge_modes(const RunConfig& c) {
  const auto m = make_model(c.model, model_params(c));
  Table t{{{"family", "int"}, {"phi", "float"}, {"beta_x", "float"}, {"beta_y", "float"}, {"residual", "float"}}, {}};
  for (std::size_t f = 0; f < m.families.size(); ++f)
    for (double phi : {0.0, ql::kPi}) {
      const auto sols = m.dim == 1 ? ql::solve_beta(m.families[f].stencil, phi) : ql::solve_beta_2d(m.families[f].stencil, phi);
      for (const auto& s : sols)
        t.rows.push_back({static_cast<long long>(f), phi, s.beta[0], s.beta.size() > 1 ? Cell(s.beta[1]) : Cell(), s.residual});
    }
  return t;
}

// ---------------------------------------------------------------- vortices

inline ql::ModelInstance vortex_model(const RunConfig& c, double beta, int separation, const ql::Lattice& lat) {
  if (c.model != "cross_2d") throw ConfigError("vortices need model cross_2d");
  if (separation < 1 || separation >= lat.width) throw ConfigError("separation out of range for the lattice");
  return ql::vortex_pair(beta, lat, separation, {core_width_for(c)});
}

/// Lowest damping rates and purity values of a two-vortex lattice; the
/// undamped block starts in a pure pairing of its modes.
inline Table task_vortex(const RunConfig& c) {
  if (c.model != "cross_2d") throw ConfigError("vortices need model cross_2d");
  const auto p = model_params(c);
  const ql::Lattice lat = make_lattice(c, 2);
  const auto m = vortex_model(c, p.at("beta"), c.separation, lat);
  const ql::Dissipator d = ql::finite_dissipator(m, lat, placement(c, true));
  const ql::Propagator prop(d, c.tol);
  const ql::Mat k = prop.kernel();
  ql::Mat init = ql::Mat::Zero(d.majoranas(), d.majoranas());
  for (Eigen::Index i = 0; i + 1 < k.cols(); i += 2)
    init += k.col(i) * k.col(i + 1).transpose() - k.col(i + 1) * k.col(i).transpose();
  const ql::Mat g = prop.steady_state(&init);
  Eigen::SelfAdjointEigenSolver<ql::Mat> es(g.transpose() * g, Eigen::EigenvaluesOnly);
  Table t{{{"index", "int"}, {"damping", "float"}, {"purity", "float"}}, {}};
  const Eigen::Index n = std::min<Eigen::Index>(c.count, prop.rates().size());
  for (Eigen::Index i = 0; i < n; ++i)
    t.rows.push_back({static_cast<long long>(i), prop.rates()(i), std::max(0.0, es.eigenvalues()(i))});
  return t;
}

// ---------------------------------------------------------------- braiding

/// Half exchange of two vortices: leakage of the transported undamped block
/// and its holonomy, one row per total time.
inline Table task_braid(const RunConfig& c) {
  if (c.model != "cross_2d") throw ConfigError("braiding needs model cross_2d");
  if (c.dt <= 0.0 || c.times.empty()) throw ConfigError("braid needs dt > 0 and at least one time");
  const auto p = model_params(c);
  const ql::Lattice lat = make_lattice(c, 2);
  const ql::Schedule sched = ql::vortex_exchange_schedule(p.at("beta"), lat, c.radius, {core_width_for(c)});
  const ql::Propagator p0(sched(0.0), c.tol);
  if (p0.kernel_dimension() != 2)
    throw ql::NumericalError("exchange needs exactly two undamped modes, found " + std::to_string(p0.kernel_dimension()));
  const ql::Mat free = p0.basis().leftCols(2);
  const ql::Mat g0 = p0.steady_state() + free.col(0) * free.col(1).transpose() - free.col(1) * free.col(0).transpose();
  Table t{{{"time", "float"}, {"steps", "int"}, {"leakage", "float"}, {"h00", "float"}, {"h01", "float"},
           {"h10", "float"}, {"h11", "float"}},
          {}};
  t.rows = parallel_rows(c.times.size(), c.jobs, [&](std::size_t i) {
    const double total = c.times[i];
    const int steps = std::max(1, static_cast<int>(std::lround(total / c.dt)));
    const auto r = ql::adiabatic_evolve(sched, 2, g0, total, steps);
    return Row{total, static_cast<long long>(steps), r.leakage, r.holonomy(0, 0), r.holonomy(0, 1), r.holonomy(1, 0),
               r.holonomy(1, 1)};
  });
  return t;
}

// ---------------------------------------------------------------- sweeps

/// Cartesian product of the ranges, first range outermost.
inline std::vector<std::vector<double>> grid_points(const std::vector<Range>& ranges) {
  std::vector<std::vector<double>> pts{{}};
  for (const auto& r : ranges) {
    std::vector<std::vector<double>> next;
    for (const auto& p : pts)
      for (double v : r.values) {
        next.push_back(p);
        next.back().push_back(v);
      }
    pts = std::move(next);
  }
  return pts;
}

inline Row bulk_row(const ql::ModelInstance& m, int grid) {
  const ql::BulkGaps g = ql::bulk_gaps(m, grid);
  Row row{g.paired_damping(), g.purity};
  if (m.dim == 1) {
    row.push_back(int_or_empty([&] { return ql::winding_number(m, grid).winding; }));
  } else {
    row.push_back(int_or_empty([&] { return ql::chern_number(m, grid).chern; }));
    for (double ky : {0.0, ql::kPi})
      row.push_back(int_or_empty([&] { return ql::winding_number(ql::cylinder_reduce(m, ky), 4 * grid).winding; }));
  }
  return row;
}

/// Largest fitted decay length per edge among the undamped modes of an
/// open chain.
inline Row localization_row(const RunConfig& c, const ql::ModelInstance& m) {
  const ql::Lattice lat = make_lattice(c, 1);
  const ql::Mat k = ql::zero_damping_modes(ql::finite_dissipator(m, lat, placement(c, false)), c.tol);
  double xi[2] = {-1.0, -1.0}, r2[2] = {0.0, 0.0};
  if (k.cols() > 0) {
    const ql::Mat loc = ql::localize_modes(k, ql::column_positions(lat));
    for (Eigen::Index i = 0; i < loc.cols(); ++i) {
      try {
        const auto f = ql::fit_localization(loc.col(i), lat);
        if (f.xi > xi[f.edge]) {
          xi[f.edge] = f.xi;
          r2[f.edge] = f.r2;
        }
      } catch (const ql::NumericalError&) {
        // single-site or delocalized mode
      }
    }
  }
  Row row{static_cast<long long>(k.cols())};
  for (int e = 0; e < 2; ++e) {
    row.push_back(xi[e] > 0.0 ? Cell(xi[e]) : Cell());
    row.push_back(xi[e] > 0.0 ? Cell(r2[e]) : Cell());
  }
  return row;
}

inline Table task_sweep(const RunConfig& c) {
  const ModelSpec& spec = model_spec(c.model);
  std::set<std::string> allowed;
  for (const auto& [k, v] : spec.defaults) allowed.insert(k);
  if (c.observable == "vortex-rate") allowed.insert("separation");
  const auto ranges = parse_ranges(c, allowed);
  const auto base = model_params(c);
  Table t;
  for (const auto& r : ranges) t.columns.push_back({r.name, "float"});
  if (c.observable == "bulk") {
    for (const char* n : {"delta_d", "delta_p"}) t.columns.push_back({n, "float"});
    if (spec.dim == 1) {
      t.columns.push_back({"nu", "int"});
    } else {
      for (const char* n : {"chern", "nu_ky0", "nu_kypi"}) t.columns.push_back({n, "int"});
    }
  } else if (c.observable == "localization") {
    if (spec.dim != 1) throw ConfigError("localization sweep needs a 1D model");
    for (const char* n : {"zero_modes", "xi_left", "r2_left", "xi_right", "r2_right"})
      t.columns.push_back({n, n == std::string("zero_modes") ? "int" : "float"});
  } else if (c.observable == "vortex-rate") {
    if (c.model != "cross_2d") throw ConfigError("vortex-rate sweep needs model cross_2d");
    for (const char* n : {"rate_0", "rate_1", "rate_2"}) t.columns.push_back({n, "float"});
  } else {
    throw ConfigError("unknown observable '" + c.observable + "'");
  }
  const auto pts = grid_points(ranges);
  const int grid = grid_for(c, spec.dim);
  t.rows = parallel_rows(pts.size(), c.jobs, [&](std::size_t i) {
    auto params = base;
    int separation = c.separation;
    Row row;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      const double v = pts[i][r];
      if (ranges[r].name == "separation") {
        if (v != std::floor(v)) throw ConfigError("separation must be an integer");
        separation = static_cast<int>(v);
      } else {
        params[ranges[r].name] = v;
      }
      row.push_back(v);
    }
    Row tail;
    if (c.observable == "bulk") {
      tail = bulk_row(make_model(c.model, params), grid);
    } else if (c.observable == "localization") {
      tail = localization_row(c, make_model(c.model, params));
    } else {
      const ql::Lattice lat = make_lattice(c, 2);
      const auto m = vortex_model(c, params.at("beta"), separation, lat);
      const ql::Vec rates = ql::damping_spectrum(ql::finite_dissipator(m, lat, placement(c, true)), false).rates;
      tail = {rates(0), rates(1), rates(2)};
    }
    row.insert(row.end(), tail.begin(), tail.end());
    return row;
  });
  return t;
}

// ---------------------------------------------------------------- recipes

/// Named configurations behind the figure tables.
inline const std::map<std::string, std::function<void(RunConfig&)>>& recipes() {
  static const std::map<std::string, std::function<void(RunConfig&)>> r{
      {"fig-1d-example1",
       [](RunConfig& c) {
         c.task = "sweep", c.model = "three_site", c.observable = "bulk", c.ranges = {"kappa=0:4:0.05"};
       }},
      {"fig-1d-example1-edge",
       [](RunConfig& c) {
         c.task = "sweep", c.model = "three_site", c.observable = "localization", c.ranges = {"kappa=1:1.9:0.1"};
       }},
      {"fig-1d-example2",
       [](RunConfig& c) {
         c.task = "sweep", c.model = "zigzag_coherent", c.observable = "bulk", c.ranges = {"kappa=0:3:0.05"};
       }},
      {"fig-1d-example2-edge",
       [](RunConfig& c) {
         c.task = "sweep", c.model = "zigzag_coherent", c.observable = "localization", c.ranges = {"kappa=0.1:0.9:0.1"};
       }},
      {"fig-1d-example3",
       [](RunConfig& c) {
         c.task = "sweep", c.model = "zigzag_competing", c.observable = "bulk", c.ranges = {"kappa=0:3:0.05"};
       }},
      {"fig-2d-cross",
       [](RunConfig& c) {
         c.task = "sweep", c.model = "cross_2d", c.observable = "bulk", c.ranges = {"beta=-5:5:0.25"};
       }},
      {"fig-vortex-rates",
       [](RunConfig& c) {
         c.task = "sweep", c.model = "cross_2d", c.observable = "vortex-rate",
         c.ranges = {"beta=2.8:3.2:0.2", "separation=4:16:2"};
       }},
      {"fig-vortex-spectrum",
       [](RunConfig& c) {
         c.task = "vortex", c.model = "cross_2d", c.params = {"beta=2"}, c.separation = 16, c.count = 16;
       }},
  };
  return r;
}

/// Replaces the task fields of `c` by the named recipe; output options
/// are kept.
inline RunConfig apply_recipe(const RunConfig& c) {
  const auto it = recipes().find(c.recipe);
  if (it == recipes().end()) throw ConfigError("unknown recipe '" + c.recipe + "'");
  RunConfig r;
  r.recipe = c.recipe;
  r.format = c.format;
  r.out = c.out;
  r.jobs = c.jobs;
  it->second(r);
  return r;
}

inline Table run_task(const RunConfig& c) {
  if (c.task == "spectrum") return task_spectrum(c);
  if (c.task == "invariant") return task_invariant(c);
  if (c.task == "edge-modes") return task_edge_modes(c);
  if (c.task == "vortex") return task_vortex(c);
  if (c.task == "braid") return task_braid(c);
  if (c.task == "sweep") return task_sweep(c);
  throw ConfigError("unknown task '" + c.task + "'");
}

}  // namespace qlcli
