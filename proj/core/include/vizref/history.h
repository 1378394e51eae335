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

#ifndef VIZREF_HISTORY_H_
#define VIZREF_HISTORY_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vizref/frames.h"

namespace vizref {

// Visualizations currently on screen, oldest first.
class DialogueHistory {
 public:
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<VisualizationSpec>& entries() const { return entries_; }

  // Throws IntegrityError on a duplicate id.
  void Add(VisualizationSpec spec);
  // Returns false when the id is not on screen.
  bool Remove(std::string_view id);

  const VisualizationSpec* Find(std::string_view id) const;
  VisualizationSpec* FindMutable(std::string_view id);
  bool Contains(std::string_view id) const { return Find(id) != nullptr; }

  // Rank 1 is the most recent entry.
  const VisualizationSpec& AtRank(std::size_t rank) const;
  std::optional<std::size_t> RankOf(std::string_view id) const;

  friend bool operator==(const DialogueHistory&, const DialogueHistory&) = default;

 private:
  std::vector<VisualizationSpec> entries_;
};

// Everything the engine carries between turns.
struct DialogueState {
  DialogueHistory history;
  std::size_t turn = 0;
  std::size_t next_id = 1;

  // Zero-padded sequence number, never reused after a close.
  std::string AllocateId();

  friend bool operator==(const DialogueState&, const DialogueState&) = default;
};

std::string FormatSpecId(std::size_t sequence);

}  // namespace vizref

#endif  // VIZREF_HISTORY_H_
