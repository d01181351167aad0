// Copyright 2026 The seqent Authors
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

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "seqent/errors.hpp"
#include "seqent/explore.hpp"

namespace seqent {

/// A table cell: real, integer flag/count, or text. Missing reals are NaN.
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, so every double round-trips; NaN as "nan".
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// RFC 4180: fields containing a comma, quote, CR or LF are quoted and
/// embedded quotes doubled.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

/// Header row then one line per row, each terminated by "\n".
inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw Error("write_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << '\n';
  }
}

/// {"columns": [...], "rows": [{column: value, ...}, ...]} with keys in
/// column order; NaN becomes null.
inline nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json doc;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& c = row[i];
      if (const auto* d = std::get_if<double>(&c))
        obj[t.columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
      else if (const auto* n = std::get_if<long long>(&c))
        obj[t.columns[i]] = *n;
      else
        obj[t.columns[i]] = std::get<std::string>(c);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

inline void write_json(std::ostream& os, const Table& t) { os << to_json(t).dump(2) << '\n'; }

/// Scan rows with columns: axis params (axis order), I1, I2, S1, S2, C1, C2,
/// minI, minS, minC, dvI, dvS, dvC, ppt_min_eig, purity, status.
inline Table scan_to_table(const ScanTable& scan) {
  Table t;
  for (const auto& a : scan.spec.axes) t.columns.emplace_back(to_string(a.param));
  for (const char* c : {"I1", "I2", "S1", "S2", "C1", "C2", "minI", "minS", "minC", "dvI", "dvS", "dvC",
                        "ppt_min_eig", "purity", "status"})
    t.columns.emplace_back(c);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const auto val = [&](const std::optional<double>& v) { return Cell{v ? *v : nan}; };
  constexpr CriterionKind kinds[] = {CriterionKind::MutualInfo, CriterionKind::CondProbSum,
                                     CriterionKind::Pearson};
  for (const auto& r : scan.rows) {
    std::vector<Cell> row;
    for (double x : r.axis_values) row.emplace_back(x);
    const auto& c = r.point.criteria;
    for (CriterionKind k : kinds)
      for (const auto& v : c.of(k)) row.push_back(val(v));
    for (CriterionKind k : kinds) row.push_back(val(c.min_of(k)));
    for (CriterionKind k : kinds) row.emplace_back(static_cast<long long>(c.double_violation(k)));
    row.emplace_back(r.point.ppt_min_eig);
    row.emplace_back(r.point.purity);
    row.emplace_back(r.point.status());
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace seqent
