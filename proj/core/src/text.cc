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

#include "vizref/text.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

namespace vizref {

namespace {

constexpr std::array<std::string_view, 12> kPosNames = {
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PRT", "PUNCT", "X"};

const std::unordered_map<std::string_view, Pos>& ClosedClass() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string_view, Pos>();
    auto add = [t](Pos pos, std::initializer_list<std::string_view> words) {
      for (auto w : words) t->emplace(w, pos);
    };
    add(Pos::kPron, {"i", "you", "we", "me", "us", "it", "they", "them", "he", "she",
                     "him", "her", "what", "who", "something", "anything", "everything"});
    add(Pos::kDet, {"the", "a", "an", "this", "that", "these", "those", "my", "your",
                    "our", "their", "its", "each", "every", "some", "any", "all",
                    "which", "no", "another"});
    add(Pos::kAdp, {"of", "for", "by", "in", "on", "at", "to", "with", "from", "over",
                    "across", "per", "around", "during", "between", "into", "about",
                    "like", "than", "involving", "behind", "under", "through"});
    add(Pos::kConj, {"and", "or", "but", "so", "because", "if", "while"});
    add(Pos::kPrt, {"not", "up", "down", "out", "off", "ahead", "'s"});
    add(Pos::kVerb,
        {"is", "are", "was", "were", "be", "been", "am", "do", "does", "did", "can",
         "could", "would", "will", "should", "may", "might", "must", "let's", "let",
         "have", "has", "had", "see", "show", "shows", "display", "give", "make",
         "create", "plot", "put", "pull", "compare", "break", "view", "close", "move",
         "maximize", "minimize", "bring", "get", "want", "need", "think", "guess",
         "wonder", "notice", "seems", "seem", "looks", "look", "happen", "happens",
         "tells", "says", "go", "going", "makes", "know", "remove", "open", "take"});
    add(Pos::kAdv, {"now", "just", "also", "too", "very", "really", "more", "most", "less",
                    "much", "then", "here", "there", "where", "when", "how", "why",
                    "again", "maybe", "actually", "probably", "definitely", "mostly",
                    "instead", "please", "well", "still", "only"});
    add(Pos::kNum, {"one", "two", "three", "ones"});
    add(Pos::kVerb, {"it's", "that's", "there's", "what's", "i'm", "i'd", "i'll",
                     "don't", "doesn't", "isn't", "can't", "we're", "you're"});
    add(Pos::kX, {"ok", "okay", "hmm", "um", "uh", "oh", "alright", "yes", "yeah",
                  "thanks", "wow"});
    return t;
  }();
  return *table;
}

// Words ending in ing/ed/ly that are nouns in this domain.
bool IsNounException(std::string_view w) {
  static constexpr std::array<std::string_view, 12> kNouns = {
      "parking", "morning", "evening", "spring", "trespassing", "gambling",
      "kidnapping", "shooting", "shootings", "building", "thing", "things"};
  return std::find(kNouns.begin(), kNouns.end(), w) != kNouns.end();
}

bool IsAdjectiveLy(std::string_view w) {
  static constexpr std::array<std::string_view, 7> kAdjectives = {
      "monthly", "weekly", "daily", "yearly", "hourly", "early", "nightly"};
  return std::find(kAdjectives.begin(), kAdjectives.end(), w) != kAdjectives.end();
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-' ||
         (static_cast<unsigned char>(c) >= 0x80);
}

}  // namespace

std::string_view PosName(Pos pos) { return kPosNames[static_cast<std::size_t>(pos)]; }

std::optional<Pos> ParsePos(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

bool IsContentPos(Pos pos) {
  return pos == Pos::kNoun || pos == Pos::kAdj || pos == Pos::kNum || pos == Pos::kX;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    // Trim apostrophes/hyphens hanging off the edges ("'cause", "north-").
    while (!current.empty() && (current.back() == '-' || current.back() == '\'')) {
      current.pop_back();
    }
    std::size_t lead = 0;
    while (lead < current.size() && (current[lead] == '-' || current[lead] == '\'')) ++lead;
    if (lead < current.size()) tokens.push_back(current.substr(lead));
    current.clear();
  };
  for (char c : text) {
    if (IsWordChar(c)) {
      current.push_back(c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      flush();
      tokens.emplace_back(1, c);
    }
  }
  flush();
  return tokens;
}

Pos FallbackPosTag(std::string_view word) {
  const std::string w = ToLower(word);
  if (w.empty()) return Pos::kX;
  if (w.size() == 1 && std::ispunct(static_cast<unsigned char>(w[0]))) return Pos::kPunct;
  auto it = ClosedClass().find(w);
  if (it != ClosedClass().end()) return it->second;
  if (std::all_of(w.begin(), w.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == ',';
      })) {
    return Pos::kNum;
  }
  if (std::isdigit(static_cast<unsigned char>(w[0]))) return Pos::kX;
  if (IsNounException(w)) return Pos::kNoun;
  if (IsAdjectiveLy(w)) return Pos::kAdj;
  if (EndsWith(w, "ly")) return Pos::kAdv;
  if (EndsWith(w, "ing") || EndsWith(w, "ed") || EndsWith(w, "ize")) return Pos::kVerb;
  if (EndsWith(w, "er") || EndsWith(w, "est") || EndsWith(w, "al") ||
      EndsWith(w, "ous") || EndsWith(w, "ful") || EndsWith(w, "ive") ||
      EndsWith(w, "ble")) {
    return Pos::kAdj;
  }
  return Pos::kNoun;
}

std::vector<Token> TagTokens(std::span<const std::string> words) {
  std::vector<Token> out;
  out.reserve(words.size());
  for (const std::string& w : words) out.push_back({w, FallbackPosTag(w)});
  return out;
}

Utterance PrepareUtterance(std::string_view text) {
  const std::vector<std::string> words = Tokenize(text);
  Utterance u;
  u.original_length = words.size();
  u.tokens = TagTokens(words);
  if (u.tokens.size() > kMaxUtteranceTokens) {
    u.tokens.resize(kMaxUtteranceTokens);
    u.truncated = true;
  }
  return u;
}

std::string JoinSurface(std::span<const Token> tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

}  // namespace vizref
