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

// Result tables and their CSV / JSON encodings.

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qlcli {

using json = nlohmann::json;

/// Bad configuration (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File system failure (exit code 4).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Empty cells mark values that are undefined for a row, such as an
/// invariant at a gap closing.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Column {
  std::string name;
  std::string type;  // float, int or string
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Meta {
  std::string tool;
  std::string version;
  json config;
  std::string config_hash;
};

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "nan";
}

inline json cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double x = std::get<double>(c);
    return std::isfinite(x) ? json(x) : json(nullptr);
  }
  if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

/// SHA-256 of a string, hex encoded.
inline std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("hashing failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

inline std::string schema(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    s += (i ? "," : "") + t.columns[i].name + ":" + t.columns[i].type;
  return s;
}

inline void write_csv(std::ostream& out, const Meta& meta, const Table& t) {
  out << "# tool: " << meta.tool << " " << meta.version << "\n";
  out << "# config_hash: sha256:" << meta.config_hash << "\n";
  out << "# config: " << meta.config.dump() << "\n";
  out << "# columns: " << schema(t) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i].name;
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << "\n";
  }
}

inline void write_json(std::ostream& out, const Meta& meta, const Table& t) {
  json doc;
  doc["meta"] = {{"tool", meta.tool},
                 {"version", meta.version},
                 {"config", meta.config},
                 {"config_hash", "sha256:" + meta.config_hash},
                 {"schema", schema(t)}};
  json cols = json::array();
  for (const auto& c : t.columns) cols.push_back(c.name);
  doc["columns"] = cols;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (const auto& c : r) row.push_back(cell_json(c));
    rows.push_back(row);
  }
  doc["rows"] = rows;
  out << doc.dump(1) << "\n";
}

/// Header and rows of a CSV artifact, with the metadata block skipped.
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline CsvData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  CsvData d;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      d.header = split(line, ',');
      have_header = true;
    } else {
      d.rows.push_back(split(line, ','));
    }
  }
  if (!have_header) throw IoError(path + " has no header row");
  return d;
}

/// Compares two CSV artifacts cell by cell; numbers within
/// atol + rtol |expected|, other cells exactly.  Returns the differences.
inline std::vector<std::string> compare_csv(const CsvData& expected, const CsvData& actual, double rtol,
                                            double atol) {
  std::vector<std::string> diffs;
  if (expected.header != actual.header) {
    diffs.push_back("header differs");
    return diffs;
  }
  if (expected.rows.size() != actual.rows.size()) {
    diffs.push_back("row count " + std::to_string(actual.rows.size()) + " != " + std::to_string(expected.rows.size()));
    return diffs;
  }
  for (std::size_t r = 0; r < expected.rows.size(); ++r) {
    const auto& a = expected.rows[r];
    const auto& b = actual.rows[r];
    if (a.size() != b.size()) {
      diffs.push_back("row " + std::to_string(r) + " width differs");
      continue;
    }
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (a[c] == b[c]) continue;
      char* ea = nullptr;
      char* eb = nullptr;
      const double x = std::strtod(a[c].c_str(), &ea);
      const double y = std::strtod(b[c].c_str(), &eb);
      const bool numeric = !a[c].empty() && !b[c].empty() && *ea == '\0' && *eb == '\0';
      if (numeric && std::isfinite(x) && std::isfinite(y) && std::abs(x - y) <= atol + rtol * std::abs(x)) continue;
      diffs.push_back("row " + std::to_string(r) + " column " + expected.header[c] + ": " + b[c] + " != " + a[c]);
    }
  }
  return diffs;
}

}  // namespace qlcli
