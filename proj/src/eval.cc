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

#include "cipkit/eval.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "cipkit/editdiff.h"
#include "cipkit/error.h"

namespace cipkit {

using json = nlohmann::json;

namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts CountNgrams(const TokenSeq& tokens, int n) {
  NgramCounts counts;
  const auto order = static_cast<std::size_t>(n);
  if (tokens.size() < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < order; ++k) {
      if (k > 0) key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t ClippedOverlap(const NgramCounts& candidate,
                           const NgramCounts& reference) {
  std::size_t overlap = 0;
  for (const auto& [gram, count] : candidate) {
    const auto it = reference.find(gram);
    if (it != reference.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

std::size_t NgramTotal(std::size_t length, int n) {
  const auto order = static_cast<std::size_t>(n);
  return length >= order ? length - order + 1 : 0;
}

void CheckCorpus(std::size_t candidates, std::size_t references) {
  if (candidates != references) {
    throw ValidationError("candidate/reference count mismatch: " +
                          std::to_string(candidates) + " vs " +
                          std::to_string(references));
  }
  if (candidates == 0) throw ValidationError("empty corpus");
}

}  // namespace

double Bleu(const std::vector<TokenSeq>& candidates,
            const std::vector<TokenSeq>& references) {
  CheckCorpus(candidates.size(), references.size());
  std::size_t matches[kBleuMaxOrder] = {};
  std::size_t totals[kBleuMaxOrder] = {};
  std::size_t cand_len = 0;
  std::size_t ref_len = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    cand_len += candidates[i].size();
    ref_len += references[i].size();
    for (int n = 1; n <= kBleuMaxOrder; ++n) {
      matches[n - 1] += ClippedOverlap(CountNgrams(candidates[i], n),
                                       CountNgrams(references[i], n));
      totals[n - 1] += NgramTotal(candidates[i].size(), n);
    }
  }
  double log_sum = 0.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches[n]) / totals[n]);
  }
  const double brevity =
      cand_len < ref_len
          ? std::exp(1.0 - static_cast<double>(ref_len) / cand_len)
          : 1.0;
  return 100.0 * brevity * std::exp(log_sum / kBleuMaxOrder);
}

double RougeN(const std::vector<TokenSeq>& candidates,
              const std::vector<TokenSeq>& references, int n) {
  CheckCorpus(candidates.size(), references.size());
  if (n < 1) throw ValidationError("ROUGE order must be >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::size_t cand_total = NgramTotal(candidates[i].size(), n);
    const std::size_t ref_total = NgramTotal(references[i].size(), n);
    if (cand_total == 0 || ref_total == 0) continue;
    const auto overlap = static_cast<double>(ClippedOverlap(
        CountNgrams(candidates[i], n), CountNgrams(references[i], n)));
    const double precision = overlap / cand_total;
    const double recall = overlap / ref_total;
    if (precision + recall > 0.0) {
      sum += 2.0 * precision * recall / (precision + recall);
    }
  }
  return sum / candidates.size();
}

ProportionResult ParaphraseProportion(const std::vector<std::string>& sources,
                                      const std::vector<std::string>& outputs,
                                      const IdiomLexicon& lexicon) {
  if (sources.size() != outputs.size()) {
    throw ValidationError("source/output count mismatch: " +
                          std::to_string(sources.size()) + " vs " +
                          std::to_string(outputs.size()));
  }
  ProportionResult result;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto idioms = DetectIdioms(sources[i], lexicon);
    if (idioms.empty()) {
      result.skipped.push_back(i);
      continue;
    }
    for (const auto& o : idioms) {
      ++result.total;
      if (outputs[i].find(o.idiom) == std::string::npos) ++result.paraphrased;
    }
  }
  if (result.total == 0) {
    throw ValidationError("no source sentence contains an idiom");
  }
  result.percentage = 100.0 * static_cast<double>(result.paraphrased) /
                      static_cast<double>(result.total);
  return result;
}

EvalReport Evaluate(const std::vector<std::string>& sources,
                    const std::vector<std::string>& outputs,
                    const std::vector<std::string>* references,
                    const IdiomLexicon& lexicon, const Tokenizer& tokenizer) {
  EvalReport report;
  const ProportionResult proportion =
      ParaphraseProportion(sources, outputs, lexicon);
  report.proportion = proportion.percentage;
  report.skipped = proportion.skipped;
  report.n_sentences = outputs.size();
  if (references != nullptr) {
    if (references->size() != outputs.size()) {
      throw ValidationError("reference/output count mismatch: " +
                            std::to_string(references->size()) + " vs " +
                            std::to_string(outputs.size()));
    }
    std::vector<TokenSeq> cands, refs;
    cands.reserve(outputs.size());
    refs.reserve(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      cands.push_back(tokenizer.Tokenize(outputs[i]));
      refs.push_back(tokenizer.Tokenize((*references)[i]));
    }
    report.bleu = Bleu(cands, refs);
    report.rouge1_f = RougeN(cands, refs, 1);
    report.rouge2_f = RougeN(cands, refs, 2);
  }
  return report;
}

json ToJson(const EvalReport& report) {
  auto optional = [](const std::optional<double>& v) -> json {
    return v ? json(*v) : json(nullptr);
  };
  return {{"bleu", optional(report.bleu)},
          {"rouge1_f", optional(report.rouge1_f)},
          {"rouge2_f", optional(report.rouge2_f)},
          {"proportion", report.proportion},
          {"n_sentences", report.n_sentences},
          {"skipped", report.skipped}};
}

CorpusStats ComputeStats(const std::vector<CipPair>& pairs,
                         const IdiomLexicon& lexicon,
                         const Tokenizer& tokenizer) {
  if (pairs.empty()) throw ValidationError("no pairs to summarize");
  CorpusStats stats;
  stats.pairs = pairs.size();
  std::set<std::string> unique;
  std::size_t distance_sum = 0;
  for (const auto& p : pairs) {
    const TokenSeq src = tokenizer.Tokenize(p.source);
    const TokenSeq ref = tokenizer.Tokenize(p.target);
    stats.src_tokens += src.size();
    stats.ref_tokens += ref.size();
    distance_sum += EditDistance(src, ref);
    for (const auto& o : DetectIdioms(p.source, lexicon)) {
      ++stats.all_idioms;
      unique.insert(o.idiom);
    }
  }
  const auto n = static_cast<double>(stats.pairs);
  stats.unique_idioms = unique.size();
  stats.src_avg_len = static_cast<double>(stats.src_tokens) / n;
  stats.ref_avg_len = static_cast<double>(stats.ref_tokens) / n;
  stats.avg_edit_distance = static_cast<double>(distance_sum) / n;
  return stats;
}

json ToJson(const CorpusStats& stats) {
  return {{"sentence_pairs", stats.pairs},
          {"source_tokens", stats.src_tokens},
          {"source_avg_sentence_length", stats.src_avg_len},
          {"all_idioms", stats.all_idioms},
          {"unique_idioms", stats.unique_idioms},
          {"reference_tokens", stats.ref_tokens},
          {"reference_avg_sentence_length", stats.ref_avg_len},
          {"avg_edit_distance", stats.avg_edit_distance}};
}

}  // namespace cipkit
