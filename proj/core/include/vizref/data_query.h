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

#ifndef VIZREF_DATA_QUERY_H_
#define VIZREF_DATA_QUERY_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/entity.h"
#include "vizref/ontology.h"

namespace vizref {

// Rows match when their column value is any of `values`.
struct QueryFilter {
  std::string slot;
  std::vector<std::string> values;

  friend bool operator==(const QueryFilter&, const QueryFilter&) = default;
};

struct DataQuery {
  std::vector<QueryFilter> filters;
  std::optional<std::string> group_by;
  std::string aggregate = "count";

  friend bool operator==(const DataQuery&, const DataQuery&) = default;
};

struct DataRow {
  std::string key;
  std::int64_t count = 0;

  friend bool operator==(const DataRow&, const DataRow&) = default;
};

struct QueryResult {
  std::vector<DataRow> rows;
  // Set when a filter excluded every row.
  bool empty_result = false;

  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// group_by: the first temporal entity, else the first axis entity, else the
// first categorical entity, else none (a single total row). Every entity
// with a value becomes an equality filter; values of one slot form a set.
DataQuery BuildDataQuery(std::span<const Entity> entities, const KnowledgeOntology& ontology);

// In-memory table of incidents; one lowercase column per ontology slot.
class CrimeTable {
 public:
  CrimeTable(std::vector<std::string> columns, std::vector<std::vector<std::string>> rows);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_.at(i); }
  std::optional<std::size_t> ColumnIndex(std::string_view slot) const;

  // Group keys follow the slot's term order in `ontology` when given, then
  // lexical order for values the ontology does not list.
  QueryResult Execute(const DataQuery& query, const KnowledgeOntology* ontology = nullptr) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

CrimeTable ParseCrimeTable(std::string_view csv_text);
CrimeTable LoadCrimeTable(const std::filesystem::path& path);

}  // namespace vizref

#endif  // VIZREF_DATA_QUERY_H_
