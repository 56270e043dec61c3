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

#ifndef CIPKIT_EVAL_H_
#define CIPKIT_EVAL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cipkit/cip_pair.h"
#include "cipkit/corpus.h"
#include "cipkit/lexicon.h"
#include "json.hpp"

namespace cipkit {

inline constexpr int kBleuMaxOrder = 4;

// Corpus BLEU-4 in [0, 100]: clipped n-gram precisions pooled over the
// corpus, uniform geometric mean, brevity penalty exp(1 - r/c) when c < r.
// Any pooled precision of zero (including 0/0) gives 0. No smoothing.
// Throws ValidationError on empty or mismatched input.
double Bleu(const std::vector<TokenSeq>& candidates,
            const std::vector<TokenSeq>& references);

// Macro-averaged per-sentence ROUGE-N F1 in [0, 1]. A sentence with no
// candidate or no reference n-grams scores 0.
double RougeN(const std::vector<TokenSeq>& candidates,
              const std::vector<TokenSeq>& references, int n);

struct ProportionResult {
  double percentage = 0.0;  // paraphrased / total * 100
  std::size_t paraphrased = 0;
  std::size_t total = 0;
  std::vector<std::size_t> skipped;  // indices of idiom-free sources
};

// Share of source idiom occurrences whose idiom string no longer appears
// in the corresponding output. Throws ValidationError on length mismatch
// or when no source carries an idiom.
ProportionResult ParaphraseProportion(const std::vector<std::string>& sources,
                                      const std::vector<std::string>& outputs,
                                      const IdiomLexicon& lexicon);

struct EvalReport {
  std::optional<double> bleu;      // needs references
  std::optional<double> rouge1_f;  // needs references
  std::optional<double> rouge2_f;  // needs references
  double proportion = 0.0;
  std::size_t n_sentences = 0;
  std::vector<std::size_t> skipped;
};

// Scores `outputs` against `references` (when given) with `tokenizer`, and
// the paraphrase proportion against `sources`.
EvalReport Evaluate(const std::vector<std::string>& sources,
                    const std::vector<std::string>& outputs,
                    const std::vector<std::string>* references,
                    const IdiomLexicon& lexicon, const Tokenizer& tokenizer);

nlohmann::json ToJson(const EvalReport& report);

struct CorpusStats {
  std::size_t pairs = 0;
  std::size_t src_tokens = 0;
  std::size_t ref_tokens = 0;
  double src_avg_len = 0.0;
  double ref_avg_len = 0.0;
  std::size_t all_idioms = 0;
  std::size_t unique_idioms = 0;
  double avg_edit_distance = 0.0;
};

// Source idioms are detected with `lexicon`; lengths and edit distance use
// `tokenizer`. Throws ValidationError on empty input.
CorpusStats ComputeStats(const std::vector<CipPair>& pairs,
                         const IdiomLexicon& lexicon,
                         const Tokenizer& tokenizer);

nlohmann::json ToJson(const CorpusStats& stats);

}  // namespace cipkit

#endif  // CIPKIT_EVAL_H_
