// Copyright 2026 The cipkit Authors.
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

#include "cipkit/lexicon.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cipkit/error.h"
#include "cipkit/utf8.h"

namespace cipkit {
namespace {

enum class EntryCheck { kOk, kTooShort, kInvalid };

EntryCheck CheckEntry(std::u32string_view scalars) {
  for (char32_t c : scalars) {
    if (utf8::IsWhitespace(c) || utf8::IsControl(c)) {
      return EntryCheck::kInvalid;
    }
  }
  if (scalars.size() < kMinIdiomLength) return EntryCheck::kTooShort;
  return EntryCheck::kOk;
}

std::uint64_t EdgeKey(std::uint32_t node, char32_t c) {
  return (static_cast<std::uint64_t>(node) << 21) | c;
}

}  // namespace

IdiomLexicon IdiomLexicon::FromList(const std::vector<std::string>& idioms) {
  IdiomLexicon lexicon;
  for (const auto& idiom : idioms) {
    if (lexicon.by_text_.count(idiom)) continue;
    const std::u32string scalars = utf8::Decode(idiom);
    switch (CheckEntry(scalars)) {
      case EntryCheck::kTooShort:
        throw ValidationError("idiom shorter than " +
                              std::to_string(kMinIdiomLength) +
                              " characters: '" + idiom + "'");
      case EntryCheck::kInvalid:
        throw ValidationError("idiom contains whitespace or control "
                              "characters: '" + idiom + "'");
      case EntryCheck::kOk:
        break;
    }
    const std::size_t index = lexicon.idioms_.size();
    lexicon.idioms_.push_back(idiom);
    lexicon.by_text_.emplace(idiom, index);
    lexicon.Insert(scalars, index);
  }
  return lexicon;
}

void IdiomLexicon::Insert(std::u32string_view scalars,
                          std::size_t idiom_index) {
  std::uint32_t node = kRoot;
  for (char32_t c : scalars) {
    const auto [it, inserted] = edges_.try_emplace(
        EdgeKey(node, c), static_cast<std::uint32_t>(terminal_.size()));
    if (inserted) terminal_.push_back(0);
    node = it->second;
  }
  terminal_[node] = idiom_index + 1;
}

bool IdiomLexicon::contains(std::string_view text) const {
  return by_text_.count(std::string(text)) > 0;
}

std::optional<std::size_t> IdiomLexicon::LongestMatchAt(
    std::u32string_view text, std::size_t pos) const {
  std::optional<std::size_t> best;
  std::uint32_t node = kRoot;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const auto it = edges_.find(EdgeKey(node, text[i]));
    if (it == edges_.end()) break;
    node = it->second;
    if (terminal_[node] != 0) best = terminal_[node] - 1;
  }
  return best;
}

IdiomLexicon ParseLexicon(std::string_view contents,
                          LexiconLoadReport* report) {
  // Validate the whole buffer first so the error names a file offset.
  utf8::Decode(contents);
  LexiconLoadReport local;
  std::vector<std::string> accepted;
  std::unordered_map<std::string, bool> seen;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    const std::string_view line = utf8::Trim(contents.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty()) continue;
    ++local.lines;
    switch (CheckEntry(utf8::Decode(line))) {
      case EntryCheck::kTooShort:
        ++local.too_short;
        continue;
      case EntryCheck::kInvalid:
        ++local.invalid;
        continue;
      case EntryCheck::kOk:
        break;
    }
    if (!seen.emplace(std::string(line), true).second) {
      ++local.duplicates;
      continue;
    }
    accepted.emplace_back(line);
  }
  if (report != nullptr) *report = local;
  return IdiomLexicon::FromList(accepted);
}

IdiomLexicon LoadLexicon(const std::filesystem::path& path,
                         LexiconLoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading lexicon " + path.string());
  return ParseLexicon(buffer.str(), report);
}

std::vector<IdiomOccurrence> DetectIdioms(std::u32string_view sentence,
                                          const IdiomLexicon& lexicon) {
  std::vector<IdiomOccurrence> found;
  if (lexicon.empty()) return found;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    const auto match = lexicon.LongestMatchAt(sentence, pos);
    if (!match) {
      ++pos;
      continue;
    }
    const std::string& idiom = lexicon.idioms()[*match];
    const std::size_t len = utf8::Length(idiom);
    found.push_back({idiom, pos, pos + len});
    pos += len;
  }
  return found;
}

std::vector<IdiomOccurrence> DetectIdioms(std::string_view sentence,
                                          const IdiomLexicon& lexicon) {
  return DetectIdioms(utf8::Decode(sentence), lexicon);
}

bool ContainsIdiom(std::string_view sentence, const IdiomLexicon& lexicon) {
  return !DetectIdioms(sentence, lexicon).empty();
}

}  // namespace cipkit
