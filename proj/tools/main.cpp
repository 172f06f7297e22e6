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

// Command line front end: one subcommand per task, shared options, strict
// config files and tabular CSV / JSON output.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "cli/tasks.hpp"

namespace {

using qlcli::json;

/// Accepts a JSON object of option values or TOML / INI text.
class AnyConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return from_json(text);
    std::istringstream rest(text);
    return CLI::ConfigTOML::from_config(rest);
  }

 private:
  static std::string scalar(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    throw CLI::ConversionError("config key '" + key + "' must hold a scalar or a list of scalars");
  }

  static std::vector<CLI::ConfigItem> from_json(const std::string& text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("JSON config must be an object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      CLI::ConfigItem item;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v, key));
      } else {
        item.inputs.push_back(scalar(value, key));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

void write_table(const qlcli::RunConfig& c, const qlcli::Meta& meta, const qlcli::Table& t) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (c.out != "-") {
    file.open(c.out);
    if (!file) throw qlcli::IoError("cannot write " + c.out);
    out = &file;
  }
  if (c.format == "json") {
    qlcli::write_json(*out, meta, t);
  } else {
    qlcli::write_csv(*out, meta, t);
  }
  out->flush();
  if (!*out) throw qlcli::IoError("write failed for " + c.out);
}

int compare_files(const std::string& expected, const std::string& actual, double rtol, double atol) {
  const auto diffs = qlcli::compare_csv(qlcli::read_csv(expected), qlcli::read_csv(actual), rtol, atol);
  for (const auto& d : diffs) std::cout << d << "\n";
  std::cout << (diffs.empty() ? "match" : "mismatch") << ": " << actual << " vs " << expected << "\n";
  return diffs.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  namespace ql = quadlind;
  CLI::App app{"quadlind: damping spectra, steady states and invariants of quadratic Lindbladians"};
  app.set_version_flag("--version", ql::kVersion);
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.config_formatter(std::make_shared<AnyConfig>());
  app.set_config("--config", "", "TOML, INI or JSON file with option values");
  app.allow_config_extras(CLI::config_extras_mode::error);

  qlcli::RunConfig c;
  std::vector<std::string> model_names;
  for (const auto& [name, spec] : qlcli::model_specs()) model_names.push_back(name);
  app.add_option("--model", c.model, "Model name")->check(CLI::IsMember(model_names))->capture_default_str();
  app.add_option("--param", c.params, "Model parameter name=value (repeatable)");
  app.add_option("--range", c.ranges, "Swept value name=start:stop:step or name=v1,v2 (repeatable)");
  app.add_option("--observable", c.observable, "Sweep observable")
      ->check(CLI::IsMember({"bulk", "localization", "vortex-rate"}))
      ->capture_default_str();
  app.add_option("--kind", c.kind, "Invariant kind")->check(CLI::IsMember({"auto", "winding", "chern"}))->capture_default_str();
  app.add_option("--grid", c.grid, "Momentum grid (default 256 in 1D, 64 in 2D)")->check(CLI::Range(2, 1 << 16));
  app.add_option("--lattice", c.lattice, "Finite lattice WxH");
  app.add_option("--boundary", c.boundary, "Boundary conditions")
      ->check(CLI::IsMember({"open", "periodic", "cylinder"}))
      ->capture_default_str();
  app.add_option("--placement", c.placement, "Operator placement at open edges")
      ->check(CLI::IsMember({"auto", "full", "truncate"}))
      ->capture_default_str();
  app.add_option("--separation", c.separation, "Vortex separation in sites")->capture_default_str();
  app.add_option("--core-width", c.core_width, "Vortex core width (negative: task default)")->capture_default_str();
  app.add_option("--radius", c.radius, "Exchange radius")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--dt", c.dt, "Exchange time step")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--times", c.times, "Exchange total times")->delimiter(',')->check(CLI::PositiveNumber);
  app.add_option("--count", c.count, "Number of lowest modes listed")->check(CLI::Range(1, 1 << 20))->capture_default_str();
  app.add_option("--tol", c.tol, "Zero-rate tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "Output file, - for stdout")->capture_default_str();
  app.add_option("--jobs", c.jobs, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  app.add_subcommand("spectrum", "Damping rates and steady-state purities on a finite lattice");
  app.add_subcommand("sweep", "Observable over a grid of parameter values");
  app.add_subcommand("invariant", "Winding or Chern number of the steady state");
  app.add_subcommand("edge-modes", "Real decay factors solving the edge condition");
  app.add_subcommand("vortex", "Lowest rates and purities of a two-vortex lattice");
  app.add_subcommand("braid", "Adiabatic half exchange of two vortices");
  auto* reproduce = app.add_subcommand("reproduce", "Run a named figure recipe");
  std::vector<std::string> recipe_names;
  for (const auto& [name, fn] : qlcli::recipes()) recipe_names.push_back(name);
  reproduce->add_option("recipe", c.recipe, "Recipe name")->required()->check(CLI::IsMember(recipe_names));
  auto* list = app.add_subcommand("recipes", "List figure recipes");
  auto* compare = app.add_subcommand("compare", "Compare two CSV tables within tolerances");
  std::string expected, actual;
  double rtol = 1e-9, atol = 1e-12;
  compare->add_option("expected", expected, "Reference table")->required();
  compare->add_option("actual", actual, "Table under test")->required();
  compare->add_option("--rtol", rtol, "Relative tolerance")->capture_default_str();
  compare->add_option("--atol", atol, "Absolute tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    if (sub == list) {
      for (const auto& n : recipe_names) std::cout << n << "\n";
      return 0;
    }
    if (sub == compare) return compare_files(expected, actual, rtol, atol);
    if (sub == reproduce) {
      c = qlcli::apply_recipe(c);
    } else {
      c.task = sub->get_name();
    }
    const json norm = qlcli::normalized(c);
    const qlcli::Table table = qlcli::run_task(c);
    const qlcli::Meta meta{"quadlind", ql::kVersion, norm, qlcli::config_hash(norm)};
    write_table(c, meta, table);
    std::cerr << c.task << ": " << table.rows.size() << " rows, config sha256:" << meta.config_hash << "\n";
    return 0;
  } catch (const qlcli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ql::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ql::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const qlcli::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
