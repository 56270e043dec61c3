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

#ifndef CIPKIT_CORPUS_H_
#define CIPKIT_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cipkit/lexicon.h"

namespace cipkit {

// A zh-en pair from a machine translation corpus.
struct ParallelPair {
  std::string id;
  std::string zh;
  std::string en;

  friend bool operator==(const ParallelPair&, const ParallelPair&) = default;
};

using TokenSeq = std::vector<std::string>;

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual TokenSeq Tokenize(std::string_view sentence) const = 0;
};

// Deterministic idiom-aware character tokenizer:
//   - each detected idiom is one token (when a lexicon is attached),
//   - maximal runs of Latin letters/digits are one token,
//   - every other non-whitespace scalar is its own token,
//   - whitespace only separates.
// Joining the tokens gives the input with whitespace removed.
class CharTokenizer : public Tokenizer {
 public:
  CharTokenizer() = default;
  // `lexicon` must outlive the tokenizer.
  explicit CharTokenizer(const IdiomLexicon* lexicon) : lexicon_(lexicon) {}

  TokenSeq Tokenize(std::string_view sentence) const override;

 private:
  const IdiomLexicon* lexicon_ = nullptr;
};

inline TokenSeq Tokenize(std::string_view sentence,
                         const IdiomLexicon* lexicon = nullptr) {
  return CharTokenizer(lexicon).Tokenize(sentence);
}

std::string JoinTokens(const TokenSeq& tokens, std::string_view sep = "");

enum class CorpusFormat { kTsv, kJsonl };

// .jsonl / .json -> JSONL, anything else -> TSV.
CorpusFormat FormatFromPath(const std::filesystem::path& path);

struct MalformedRecord {
  std::size_t record = 0;  // 1-based line number
  std::string reason;
};

struct CorpusReadResult {
  std::vector<ParallelPair> pairs;
  std::vector<MalformedRecord> malformed;
};

// Parses `id<TAB>zh<TAB>en` or {"id","zh","en"} lines. Malformed records
// (wrong field count, bad JSON, bad UTF-8, empty sides) are skipped and
// reported; they never abort the read.
CorpusReadResult ReadCorpus(std::istream& in, CorpusFormat format);
CorpusReadResult ReadCorpusFile(const std::filesystem::path& path);

void WriteCorpus(std::ostream& out, const std::vector<ParallelPair>& pairs,
                 CorpusFormat format);
void WriteCorpusFile(const std::filesystem::path& path,
                     const std::vector<ParallelPair>& pairs,
                     CorpusFormat format);

struct CorpusSplit {
  std::vector<ParallelPair> d1;  // no idiom in zh
  std::vector<ParallelPair> d2;  // zh contains at least one idiom
  std::vector<MalformedRecord> malformed;
};

// Routes each pair by ContainsIdiom(zh). Order is preserved within each
// part. `workers` > 1 classifies in parallel.
CorpusSplit SplitCorpus(const std::vector<ParallelPair>& corpus,
                        const IdiomLexicon& lexicon, std::size_t workers = 1);

// Streams `in` through the classifier, carrying malformed-record reports.
CorpusSplit SplitCorpus(std::istream& in, CorpusFormat format,
                        const IdiomLexicon& lexicon, std::size_t workers = 1);

}  // namespace cipkit

#endif  // CIPKIT_CORPUS_H_
