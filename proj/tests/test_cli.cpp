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

// Command line tasks checked against closed forms and invariants.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cli/tasks.hpp"

namespace {

using namespace qlcli;

double num(const Cell& c) { return std::get<double>(c); }

bool empty(const Cell& c) { return std::holds_alternative<std::monostate>(c); }

long long integer(const Cell& c) { return std::get<long long>(c); }

Table recipe(const std::string& name) {
  RunConfig c;
  c.recipe = name;
  return run_task(apply_recipe(c));
}

TEST(Ranges, InclusiveWithoutAccumulation) {
  const auto v = parse_values("0:4:0.05", "kappa");
  ASSERT_EQ(v.size(), 81u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_NEAR(v.back(), 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(v[37], 37 * 0.05);
  EXPECT_EQ(parse_values("1:1.9:0.1", "kappa").size(), 10u);
  EXPECT_EQ(parse_values("1,2.5,3", "kappa"), (std::vector<double>{1.0, 2.5, 3.0}));
  EXPECT_THROW(parse_values("1:0:0.1", "kappa"), ConfigError);
  EXPECT_THROW(parse_values("1:2", "kappa"), ConfigError);
  EXPECT_THROW(parse_values("a,b", "kappa"), ConfigError);
}

TEST(Config, ParametersValidated) {
  RunConfig c;
  c.model = "three_site";
  EXPECT_EQ(model_params(c).at("kappa"), 1.0);
  c.params = {"kappa=2.5"};
  EXPECT_EQ(model_params(c).at("kappa"), 2.5);
  c.params = {"beta=1"};
  EXPECT_THROW(model_params(c), ConfigError);
  c.params = {"kappa"};
  EXPECT_THROW(model_params(c), ConfigError);
  c.model = "nonexistent";
  EXPECT_THROW(model_params(c), ConfigError);
}

TEST(Config, HashIgnoresOutputOptions) {
  RunConfig a;
  a.task = "invariant";
  RunConfig b = a;
  b.out = "somewhere.csv";
  b.jobs = 7;
  b.format = "json";
  EXPECT_EQ(config_hash(normalized(a)), config_hash(normalized(b)));
  b.params = {"kappa=1.5"};
  EXPECT_NE(config_hash(normalized(a)), config_hash(normalized(b)));
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Config, LatticeChecks) {
  RunConfig c;
  c.task = "spectrum";
  EXPECT_EQ(make_lattice(c, 1).width, 60);
  c.lattice = "5x3";
  EXPECT_THROW(make_lattice(c, 1), ConfigError);
  c.boundary = "cylinder";
  const auto lat = make_lattice(c, 2);
  EXPECT_EQ(lat.bx, quadlind::Boundary::Open);
  EXPECT_EQ(lat.by, quadlind::Boundary::Periodic);
  c.lattice = "5by3";
  EXPECT_THROW(make_lattice(c, 2), ConfigError);
}

TEST(Parallel, OrderIndependentOfThreads) {
  auto fn = [](std::size_t i) { return Row{static_cast<long long>(i * i)}; };
  const auto one = parallel_rows(50, 1, fn);
  const auto many = parallel_rows(50, 4, fn);
  ASSERT_EQ(one.size(), 50u);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(integer(one[i][0]), integer(many[i][0]));
  EXPECT_THROW(parallel_rows(10, 3,
                             [](std::size_t i) -> Row {
                               if (i == 6) throw quadlind::NumericalError("row failed");
                               return {};
                             }),
               quadlind::NumericalError);
}

TEST(Output, CsvAndJsonEncodings) {
  Table t{{{"x", "float"}, {"n", "int"}, {"s", "string"}}, {{0.1, 3LL, std::string("a")}, {Cell(), 4LL, std::string("b")}}};
  const Meta meta{"quadlind", "0", json{{"task", "demo"}}, "00"};
  std::ostringstream csv, js;
  write_csv(csv, meta, t);
  write_json(js, meta, t);
  EXPECT_NE(csv.str().find("# columns: x:float,n:int,s:string\nx,n,s\n0.1,3,a\nnan,4,b\n"), std::string::npos);
  const json doc = json::parse(js.str());
  EXPECT_EQ(doc["columns"].size(), 3u);
  EXPECT_TRUE(doc["rows"][1][0].is_null());
  EXPECT_EQ(doc["rows"][0][1], 3);
}

TEST(Output, CompareTolerances) {
  CsvData a{{"x", "y"}, {{"1.0", "nan"}, {"2.0", "a"}}};
  CsvData b = a;
  b.rows[0][0] = "1.0000000001";
  EXPECT_TRUE(compare_csv(a, b, 1e-9, 0.0).empty());
  b.rows[0][0] = "1.001";
  EXPECT_EQ(compare_csv(a, b, 1e-9, 0.0).size(), 1u);
  b = a;
  b.rows[1][1] = "b";
  EXPECT_EQ(compare_csv(a, b, 1.0, 1.0).size(), 1u);
  b = a;
  b.rows.pop_back();
  EXPECT_EQ(compare_csv(a, b, 1.0, 1.0).size(), 1u);
}

TEST(Recipes, ThreeSiteBulkSweep) {
  const Table t = recipe("fig-1d-example1");
  ASSERT_EQ(t.rows.size(), 81u);
  const auto ks = quadlind::k_grid(256);
  for (const auto& row : t.rows) {
    const double kappa = num(row[0]);
    double form = 1e300;
    for (double k : ks) form = std::min(form, (8.0 + 2.0 * kappa * kappa + 8.0 * kappa * std::cos(k)) / (4.0 + kappa * kappa));
    EXPECT_NEAR(num(row[1]), form, 1e-10) << kappa;
    EXPECT_NEAR(num(row[2]), 1.0, 1e-10) << kappa;
    if (std::abs(kappa - 2.0) < 1e-9) {
      EXPECT_TRUE(empty(row[3]));
    } else {
      EXPECT_EQ(integer(row[3]), kappa < 2.0 ? 2 : 0) << kappa;
    }
  }
}

TEST(Recipes, ThreeSiteLocalization) {
  const Table t = recipe("fig-1d-example1-edge");
  ASSERT_EQ(t.rows.size(), 10u);
  for (const auto& row : t.rows) {
    const double kappa = num(row[0]);
    EXPECT_EQ(integer(row[1]), 4);
    EXPECT_NEAR(num(row[2]) * -std::log(kappa / 2.0), 1.0, 0.05) << kappa;
  }
}

TEST(Recipes, CoherentZigzagLocalization) {
  for (const auto& row : recipe("fig-1d-example2-edge").rows) {
    const double kappa = num(row[0]);
    EXPECT_NEAR(num(row[4]) * -std::log(kappa), 1.0, 0.05) << kappa;
  }
}

TEST(Recipes, CompetingZigzagFlatRate) {
  const Table t = recipe("fig-1d-example3");
  ASSERT_EQ(t.rows.size(), 61u);
  for (const auto& row : t.rows) EXPECT_NEAR(num(row[1]), 2.0, 1e-10);
}

// Each k_y sector of the cross model is the three-site wire at mass
// beta + 2 (k_y = 0) or beta - 2 (k_y = pi), which winds twice below 2.
TEST(Recipes, CrossModelSectors) {
  const Table t = recipe("fig-2d-cross");
  ASSERT_EQ(t.rows.size(), 41u);
  for (const auto& row : t.rows) {
    const double beta = num(row[0]);
    if (!empty(row[3])) EXPECT_EQ(integer(row[3]), 0) << beta;
    for (int s = 0; s < 2; ++s) {
      const double mass = std::abs(beta + (s == 0 ? 2.0 : -2.0));
      const Cell& nu = row[4 + std::size_t(s)];
      if (std::abs(mass - 2.0) < 1e-9) {
        EXPECT_TRUE(empty(nu)) << beta;
      } else {
        EXPECT_EQ(integer(nu), mass < 2.0 ? 2 : 0) << beta;
      }
    }
  }
}

TEST(Tasks, InvariantFailsAtGapClosing) {
  RunConfig c;
  c.task = "invariant";
  c.params = {"kappa=2"};
  EXPECT_THROW(run_task(c), quadlind::GapClosed);
  c.params = {"kappa=1"};
  EXPECT_EQ(integer(run_task(c).rows.at(0)[2]), 2);
}

TEST(Tasks, EdgeRootsOfThreeSiteWire) {
  RunConfig c;
  c.task = "edge-modes";
  c.params = {"kappa=1.5"};
  const Table t = run_task(c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_NEAR(num(t.rows[0][2]), -0.75, 1e-10);
  EXPECT_NEAR(num(t.rows[1][2]), -2.0 / 1.5, 1e-10);
}

TEST(Tasks, SpectrumOfKitaevChain) {
  RunConfig c;
  c.task = "spectrum";
  c.model = "kitaev";
  c.lattice = "10x1";
  const Table t = run_task(c);
  ASSERT_EQ(t.rows.size(), 20u);
  EXPECT_NEAR(num(t.rows[0][1]), 0.0, 1e-12);
  EXPECT_NEAR(num(t.rows[1][1]), 0.0, 1e-12);
  EXPECT_GT(num(t.rows[2][1]), 0.1);
  EXPECT_NEAR(num(t.rows[19][2]), 1.0, 1e-10);
}

TEST(Tasks, RejectsMismatchedRequests) {
  RunConfig c;
  c.task = "vortex";
  EXPECT_THROW(run_task(c), ConfigError);
  c.task = "sweep";
  c.ranges = {"beta=1:2:0.5"};
  EXPECT_THROW(run_task(c), ConfigError);
  c.ranges = {"kappa=1:2:0.5", "kappa=1"};
  EXPECT_THROW(run_task(c), ConfigError);
  c.ranges = {"kappa=1"};
  c.observable = "localization";
  c.model = "cross_2d";
  EXPECT_THROW(run_task(c), ConfigError);
}

}  // namespace
