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

#ifndef CIPKIT_EDITDIFF_H_
#define CIPKIT_EDITDIFF_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cipkit/cip_pair.h"
#include "cipkit/corpus.h"
#include "cipkit/lexicon.h"
#include "json.hpp"

namespace cipkit {

enum class EditOp : char { kKeep = '=', kDelete = '-', kInsert = '+' };

struct EditRun {
  EditOp op;
  TokenSeq tokens;  // never empty

  friend bool operator==(const EditRun&, const EditRun&) = default;
};

// Maximal runs; adjacent runs never share an op.
using EditScript = std::vector<EditRun>;

// Recursive longest-common-run diff. The longest common contiguous token
// run becomes a Keep and both remainders are diffed recursively. Ties go
// to the earliest start in `source`, then in `target`. A region with no
// common token becomes Delete(source part) followed by Insert(target part).
EditScript Diff(const TokenSeq& source, const TokenSeq& target);

// Keep runs copy, Delete runs skip, Insert runs emit.
TokenSeq ApplyScript(const EditScript& script);
// Keep + Delete runs in order.
TokenSeq ScriptSource(const EditScript& script);

// "('-', '约翰'), ('+', '汤姆'), ('=', '踢'), ..." with each run's tokens
// joined by `joiner`.
std::string FormatScript(const EditScript& script,
                         std::string_view joiner = "");

// Token-level Levenshtein distance with unit costs.
std::size_t EditDistance(const TokenSeq& source, const TokenSeq& target);

struct Interpretation {
  std::string idiom;
  std::string text;

  friend bool operator==(const Interpretation&,
                         const Interpretation&) = default;
};

// Applies the <'-','+'> rule to Diff(tokenize(source), tokenize(target)):
// a Delete run directly followed by an Insert run yields (idiom, text)
// when the Delete side is exactly one lexicon idiom and the Insert side
// contains none. Insert tokens are concatenated without separators.
std::vector<Interpretation> ExtractInterpretations(
    std::string_view source, std::string_view target,
    const IdiomLexicon& lexicon, const Tokenizer& tokenizer);
std::vector<Interpretation> ExtractInterpretations(
    const CipPair& pair, const IdiomLexicon& lexicon,
    const Tokenizer& tokenizer);

inline constexpr std::size_t kMaxInterpretations = 3;

// Idiom -> at most three interpretations ordered by frequency, ties by
// first appearance.
class InterpretationDictionary {
 public:
  struct Entry {
    std::string text;
    std::size_t count = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  InterpretationDictionary() = default;

  // Aggregates extractions in input order. `workers` > 1 extracts in
  // parallel; the merge is sequential, so the result does not depend on it.
  static InterpretationDictionary Build(const std::vector<CipPair>& pairs,
                                        const IdiomLexicon& lexicon,
                                        const Tokenizer& tokenizer,
                                        std::size_t workers = 1);

  // Reads {"idiom": ["interp", ...], ...}; counts are unknown (0). Throws
  // ValidationError for entries that break the dictionary invariants.
  static InterpretationDictionary FromJson(const nlohmann::json& doc,
                                           const IdiomLexicon* lexicon = nullptr);
  static InterpretationDictionary Load(const std::filesystem::path& path,
                                       const IdiomLexicon* lexicon = nullptr);

  // {"idiom": ["interp", ...]} without counts.
  nlohmann::json ToJson() const;
  void Save(const std::filesystem::path& path) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Empty when the idiom has no entry.
  const std::vector<Entry>& Lookup(std::string_view idiom) const;
  const std::map<std::string, std::vector<Entry>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<Entry>> entries_;
};

}  // namespace cipkit

#endif  // CIPKIT_EDITDIFF_H_
