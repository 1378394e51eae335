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

#ifndef VIZREF_TEXT_H_
#define VIZREF_TEXT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vizref {

// Coarse universal POS inventory.
enum class Pos { kNoun, kVerb, kAdj, kAdv, kPron, kDet, kAdp, kNum, kConj, kPrt, kPunct, kX };

std::string_view PosName(Pos pos);
std::optional<Pos> ParsePos(std::string_view name);
// NOUN, ADJ, NUM and X carry slot content.
bool IsContentPos(Pos pos);

struct Token {
  std::string surface;
  Pos pos = Pos::kX;

  friend bool operator==(const Token&, const Token&) = default;
};

inline constexpr std::size_t kMaxUtteranceTokens = 20;

std::string ToLower(std::string_view s);

// Splits on whitespace and detaches punctuation. Word-internal apostrophes
// and hyphens stay attached ("let's", "08-3").
std::vector<std::string> Tokenize(std::string_view text);

// Closed-class lists plus suffix rules; default NOUN. Context free, so a word
// always receives the same tag.
Pos FallbackPosTag(std::string_view word);
std::vector<Token> TagTokens(std::span<const std::string> words);

struct Utterance {
  std::vector<Token> tokens;
  bool truncated = false;
  std::size_t original_length = 0;
};

// Tokenize, tag and cap at kMaxUtteranceTokens.
Utterance PrepareUtterance(std::string_view text);

std::string JoinSurface(std::span<const Token> tokens, std::size_t begin, std::size_t end);

// Half-open token range [begin, end).
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool Overlaps(const TokenSpan& other) const {
    return begin < other.end && other.begin < end;
  }
  bool Contains(const TokenSpan& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

}  // namespace vizref

#endif  // VIZREF_TEXT_H_
