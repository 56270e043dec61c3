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

#ifndef CIPKIT_LEXICON_H_
#define CIPKIT_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cipkit {

inline constexpr std::size_t kMinIdiomLength = 3;

// An idiom span inside a sentence. Offsets count Unicode scalar values,
// `end` is exclusive.
struct IdiomOccurrence {
  std::string idiom;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const IdiomOccurrence&,
                         const IdiomOccurrence&) = default;
};

// Immutable idiom list with a character trie for longest-match lookup.
// Safe to share between threads once constructed.
class IdiomLexicon {
 public:
  IdiomLexicon() = default;

  // Builds from already-validated idioms; duplicates collapse. Throws
  // ValidationError when an entry violates the idiom invariants.
  static IdiomLexicon FromList(const std::vector<std::string>& idioms);

  std::size_t size() const { return idioms_.size(); }
  bool empty() const { return idioms_.empty(); }
  bool contains(std::string_view text) const;
  const std::vector<std::string>& idioms() const { return idioms_; }

  // Index into idioms() of the longest idiom that starts at `pos`.
  std::optional<std::size_t> LongestMatchAt(std::u32string_view text,
                                            std::size_t pos) const;

 private:
  static constexpr std::uint32_t kRoot = 0;

  void Insert(std::u32string_view scalars, std::size_t idiom_index);

  std::vector<std::string> idioms_;  // insertion order
  std::unordered_map<std::string, std::size_t> by_text_;
  // (node << 21 | scalar) -> child node
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  // per node: idiom index + 1, or 0 when no idiom ends here
  std::vector<std::size_t> terminal_{0};
};

struct LexiconLoadReport {
  std::size_t lines = 0;
  std::size_t duplicates = 0;
  std::size_t too_short = 0;
  std::size_t invalid = 0;  // whitespace or control characters inside
};

// Reads one idiom per line (LF or CRLF, surrounding whitespace trimmed).
// Empty lines are ignored; short or malformed lines are skipped and counted.
// Throws IoError or DecodeError.
IdiomLexicon LoadLexicon(const std::filesystem::path& path,
                         LexiconLoadReport* report = nullptr);
IdiomLexicon ParseLexicon(std::string_view contents,
                          LexiconLoadReport* report = nullptr);

// Leftmost-longest greedy scan: at each position take the longest idiom
// starting there and continue after it. Results are sorted and disjoint.
std::vector<IdiomOccurrence> DetectIdioms(std::string_view sentence,
                                          const IdiomLexicon& lexicon);
std::vector<IdiomOccurrence> DetectIdioms(std::u32string_view sentence,
                                          const IdiomLexicon& lexicon);

bool ContainsIdiom(std::string_view sentence, const IdiomLexicon& lexicon);

}  // namespace cipkit

#endif  // CIPKIT_LEXICON_H_
