// Copyright 2026 The Vizref Authors.
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

#include "vizref/data_query.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "vizref/errors.h"
#include "vizref/text.h"

namespace vizref {

DataQuery BuildDataQuery(std::span<const Entity> entities, const KnowledgeOntology& ontology) {
  DataQuery q;
  auto first = [&](auto pred) -> std::optional<std::string> {
    for (const Entity& e : entities) {
      if (pred(e)) return e.slot;
    }
    return std::nullopt;
  };
  q.group_by = first([&](const Entity& e) { return ontology.KindOf(e.slot) == SlotKind::kTemporal; });
  if (!q.group_by) q.group_by = first([](const Entity& e) { return e.IsAxis(); });
  if (!q.group_by) {
    q.group_by = first(
        [&](const Entity& e) { return ontology.KindOf(e.slot) == SlotKind::kCategorical; });
  }
  for (const Entity& e : entities) {
    if (!e.value) continue;
    auto it = std::find_if(q.filters.begin(), q.filters.end(),
                           [&](const QueryFilter& f) { return f.slot == e.slot; });
    if (it == q.filters.end()) {
      q.filters.push_back({e.slot, {*e.value}});
    } else if (std::find(it->values.begin(), it->values.end(), *e.value) == it->values.end()) {
      it->values.push_back(*e.value);
    }
  }
  return q;
}

CrimeTable::CrimeTable(std::vector<std::string> columns,
                       std::vector<std::vector<std::string>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  for (auto& c : columns_) c = ToLower(c);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != columns_.size()) {
      throw FormatError("crime table row has " + std::to_string(rows_[i].size()) +
                            " fields, expected " + std::to_string(columns_.size()),
                        i + 2);
    }
  }
}

std::optional<std::size_t> CrimeTable::ColumnIndex(std::string_view slot) const {
  const std::string key = ToLower(slot);
  auto it = std::find(columns_.begin(), columns_.end(), key);
  if (it == columns_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns_.begin());
}

namespace {

bool ValueMatches(const std::string& cell, const std::vector<std::string>& values) {
  for (const std::string& v : values) {
    const std::string lowered = ToLower(v);
    if (cell == lowered || Singularize(cell) == Singularize(lowered)) return true;
  }
  return false;
}

}  // namespace

QueryResult CrimeTable::Execute(const DataQuery& query, const KnowledgeOntology* ontology) const {
  if (query.aggregate != "count") throw ArgumentError("unsupported aggregate " + query.aggregate);
  std::vector<std::pair<std::size_t, const QueryFilter*>> filters;
  for (const QueryFilter& f : query.filters) {
    auto col = ColumnIndex(f.slot);
    if (!col) throw ArgumentError("crime table has no column for slot " + f.slot);
    filters.emplace_back(*col, &f);
  }
  std::optional<std::size_t> group_col;
  if (query.group_by) {
    group_col = ColumnIndex(*query.group_by);
    if (!group_col) throw ArgumentError("crime table has no column for slot " + *query.group_by);
  }

  std::map<std::string, std::int64_t> tally;
  std::int64_t matched = 0;
  for (const auto& row : rows_) {
    const bool keep = std::all_of(filters.begin(), filters.end(), [&](const auto& f) {
      return ValueMatches(row[f.first], f.second->values);
    });
    if (!keep) continue;
    ++matched;
    if (group_col) ++tally[row[*group_col]];
  }

  QueryResult result;
  result.empty_result = !filters.empty() && matched == 0;
  if (!group_col) {
    result.rows.push_back({"total", matched});
    return result;
  }
  std::vector<std::string> order;
  if (ontology) {
    if (auto slot = ontology->IndexOf(*query.group_by)) {
      for (const std::string& term : ontology->slot(*slot).terms) {
        if (tally.count(term)) order.push_back(term);
      }
    }
  }
  for (const auto& [key, count] : tally) {
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
  }
  for (const std::string& key : order) result.rows.push_back({key, tally.at(key)});
  return result;
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CrimeTable ParseCrimeTable(std::string_view csv_text) {
  std::istringstream in{std::string(csv_text)};
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitCsvLine(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) {
      throw FormatError("crime table row has " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(header.size()),
                        line_no);
    }
    for (auto& f : fields) f = ToLower(f);
    rows.push_back(std::move(fields));
  }
  if (header.empty()) throw FormatError("crime table is empty", 0);
  return CrimeTable(std::move(header), std::move(rows));
}

CrimeTable LoadCrimeTable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open crime table " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCrimeTable(buffer.str());
}

}  // namespace vizref
