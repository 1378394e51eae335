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

#include "vizref/history.h"

#include <algorithm>
#include <cstdio>

#include "vizref/errors.h"

namespace vizref {

void DialogueHistory::Add(VisualizationSpec spec) {
  if (Contains(spec.id)) throw IntegrityError("visualization id " + spec.id + " already on screen");
  entries_.push_back(std::move(spec));
}

bool DialogueHistory::Remove(std::string_view id) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const VisualizationSpec& s) { return s.id == id; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

const VisualizationSpec* DialogueHistory::Find(std::string_view id) const {
  for (const auto& s : entries_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

VisualizationSpec* DialogueHistory::FindMutable(std::string_view id) {
  for (auto& s : entries_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const VisualizationSpec& DialogueHistory::AtRank(std::size_t rank) const {
  if (rank == 0 || rank > entries_.size()) throw ArgumentError("history rank out of range");
  return entries_[entries_.size() - rank];
}

std::optional<std::size_t> DialogueHistory::RankOf(std::string_view id) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].id == id) return entries_.size() - i;
  }
  return std::nullopt;
}

std::string FormatSpecId(std::size_t sequence) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02zu", sequence);
  return buf;
}

std::string DialogueState::AllocateId() { return FormatSpecId(next_id++); }

}  // namespace vizref
