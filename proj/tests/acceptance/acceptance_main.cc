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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cipkit/corpus.h"
#include "cipkit/editdiff.h"
#include "cipkit/eval.h"
#include "cipkit/inputs.h"
#include "cipkit/paraphrase.h"
#include "cipkit/pseudo_cip.h"
#include "cipkit/review_store.h"
#include "test_util.h"

namespace cipkit {
namespace {

using testing::FixtureLexicon;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

// --- golden diff -----------------------------------------------------------

Outcome GoldenDiff() {
  const auto start = Clock::now();
  const std::vector<std::pair<char, std::vector<std::string>>> expected = {
      {'-', {"约翰"}},
      {'+', {"汤姆"}},
      {'=', {"踢"}},
      {'-', {"了"}},
      {'=', {"我", "一脚"}},
      {'+', {"吧"}},
      {'=', {"，", "所以", "我"}},
      {'-', {"以牙还牙"}},
      {'+', {"也", "踢了", "他", "一脚"}},
      {'=', {"."}}};
  const EditScript script =
      Diff(testing::kKickSourceTokens, testing::kKickTargetTokens);
  bool runs_ok = script.size() == expected.size();
  for (std::size_t i = 0; runs_ok && i < script.size(); ++i) {
    runs_ok = static_cast<char>(script[i].op) == expected[i].first &&
              script[i].tokens == expected[i].second;
  }
  // Expected rendering of the script.
  const std::string printed =
      "('-', '约翰'), ('+', '汤姆'), ('=', '踢'), ('-', '了'), ('=', '我一脚'), "
      "('+', '吧'), ('=', '，所以我'), ('-', '以牙还牙'), ('+', '也踢了他一脚'), "
      "('=', '.')";
  const bool text_ok = FormatScript(script) == printed;

  const CharTokenizer tok(&FixtureLexicon());
  const bool char_ok =
      FormatScript(Diff(tok.Tokenize(testing::kKickSource),
                        tok.Tokenize(testing::kKickTarget))) == printed;
  const auto found = ExtractInterpretations(
      testing::kKickSource, testing::kKickTarget, FixtureLexicon(), tok);
  const bool extract_ok =
      found == std::vector<Interpretation>{{"以牙还牙", "也踢了他一脚"}};
  const double secs = SecondsSince(start);
  return {runs_ok && text_ok && char_ok && extract_ok && secs < 1.0,
          "runs=" + std::string(runs_ok ? "exact" : "MISMATCH") +
              " printed=" + (text_ok ? "exact" : "MISMATCH") +
              " char_tokens=" + (char_ok ? "exact" : "MISMATCH") +
              " extraction=" + (extract_ok ? "exact" : "MISMATCH") +
              " time=" + Fmt(secs) + "s (<1s)"};
}

// --- Mend golden -------------------------------------------------------------

Outcome MendGolden() {
  const auto dict =
      InterpretationDictionary::FromJson({{"亡羊补牢", {"现在改正"}}});
  DictionaryParaphraser backend(FixtureLexicon(), dict);
  const std::string out = backend.Paraphrase(testing::kMendSource).text;
  const double proportion =
      ParaphraseProportion({testing::kMendSource}, {out}, FixtureLexicon())
          .percentage;
  const bool ok = out == testing::kMendTarget && proportion == 100.0;
  return {ok, "output " + std::string(out == testing::kMendTarget
                                          ? "matches"
                                          : "differs: " + out) +
                  ", proportion=" + Fmt(proportion) + " (expected 100)"};
}

// --- metric identities -----------------------------------------------------

std::string RandomSentence(std::mt19937& rng, std::size_t min_len,
                           std::size_t max_len) {
  static const std::vector<std::string> filler = {
      "他", "们", "今", "天", "的", "很", "好", "说", "在", "家", "，", "。", "BLEU", "42"};
  const auto& idioms = testing::FixtureIdioms();
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::string s;
  const std::size_t n = len(rng);
  const std::size_t at = rng() % n;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == at || rng() % 6 == 0) {
      s += idioms[rng() % idioms.size()];
    } else {
      s += filler[rng() % filler.size()];
    }
  }
  return s;
}

Outcome MetricIdentities() {
  std::mt19937 rng(1001);
  const CharTokenizer tok(&FixtureLexicon());
  int bad = 0;
  double worst_bleu = 0.0;
  for (int f = 0; f < 100; ++f) {
    const int m = 1 + static_cast<int>(rng() % 8);
    std::vector<std::string> sents;
    std::vector<TokenSeq> toks;
    for (int i = 0; i < m; ++i) {
      sents.push_back(RandomSentence(rng, 4, 30));
      toks.push_back(tok.Tokenize(sents.back()));
    }
    const double bleu = Bleu(toks, toks);
    worst_bleu = std::max(worst_bleu, std::abs(bleu - 100.0));
    const bool ok = std::abs(bleu - 100.0) <= 1e-9 &&
                    RougeN(toks, toks, 1) == 1.0 && RougeN(toks, toks, 2) == 1.0 &&
                    ParaphraseProportion(sents, sents, FixtureLexicon()).percentage ==
                        0.0;
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(100 - bad) + "/100 fixtures hold; max |bleu-100|=" +
                        Fmt(worst_bleu)};
}

// --- oracle equivalence ----------------------------------------------------

double BruteRouge(const std::vector<TokenSeq>& cands,
                  const std::vector<TokenSeq>& refs, int n) {
  double sum = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::vector<TokenSeq> c, r;
    for (int k = 0; k + n <= static_cast<int>(cands[i].size()); ++k) {
      c.emplace_back(cands[i].begin() + k, cands[i].begin() + k + n);
    }
    for (int k = 0; k + n <= static_cast<int>(refs[i].size()); ++k) {
      r.emplace_back(refs[i].begin() + k, refs[i].begin() + k + n);
    }
    if (c.empty() || r.empty()) continue;
    const std::size_t c_total = c.size(), r_total = r.size();
    std::size_t hit = 0;
    for (const auto& g : c) {
      auto it = std::find(r.begin(), r.end(), g);
      if (it != r.end()) {
        ++hit;
        r.erase(it);
      }
    }
    const double p = static_cast<double>(hit) / c_total;
    const double rc = static_cast<double>(hit) / r_total;
    if (p + rc > 0.0) sum += 2.0 * p * rc / (p + rc);
  }
  return sum / cands.size();
}

// Full-matrix Wagner-Fischer.
std::size_t OracleDistance(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

Outcome OracleEquivalence() {
  std::mt19937 rng(2024);
  const std::vector<std::string> alphabet = {"的", "了", "我", "他", "a", "b", "亡羊补牢"};
  int rouge_ok = 0, dist_ok = 0, replay_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const TokenSeq a = testing::RandomTokens(rng, 20, alphabet);
    const TokenSeq b = testing::RandomTokens(rng, 20, alphabet);
    if (RougeN({a}, {b}, 1) == BruteRouge({a}, {b}, 1) &&
        RougeN({a}, {b}, 2) == BruteRouge({a}, {b}, 2)) {
      ++rouge_ok;
    }
    if (EditDistance(a, b) == OracleDistance(a, b)) ++dist_ok;
    const EditScript s = Diff(a, b);
    if (ApplyScript(s) == b && ScriptSource(s) == a) ++replay_ok;
  }
  return {rouge_ok == 1000 && dist_ok == 1000 && replay_ok == 1000,
          "rouge " + std::to_string(rouge_ok) + "/1000, edit_distance " +
              std::to_string(dist_ok) + "/1000, diff replay " +
              std::to_string(replay_ok) + "/1000"};
}

// --- pipeline --------------------------------------------------------------

Outcome Pipeline() {
  const auto start = Clock::now();
  std::mt19937 rng(50);
  std::vector<ParallelPair> corpus;
  std::map<std::string, std::string> table;
  std::set<std::string> planted;
  const auto& idioms = testing::FixtureIdioms();
  for (int i = 0; i < 50; ++i) {
    const std::string id = "s" + std::to_string(i);
    const std::string en = "sentence " + std::to_string(i);
    std::string zh = "第" + std::to_string(i) + "句";
    const bool has_idiom = i % 5 == 0 || i % 7 == 0;
    const std::string idiom = idioms[rng() % idioms.size()];
    if (has_idiom) zh += idiom;
    zh += "。";
    corpus.push_back({id, zh, en});
    const bool echo = has_idiom && i % 3 == 0;
    if (echo) planted.insert(id);
    table[en] = "第" + std::to_string(i) + "句" + (echo ? idiom : "普通话") + "。";
  }
  const CorpusSplit split = SplitCorpus(corpus, FixtureLexicon(), 4);
  bool split_ok = split.d1.size() + split.d2.size() == corpus.size();
  std::size_t d1 = 0, d2 = 0;
  for (const auto& p : corpus) {
    const bool has = ContainsIdiom(p.zh, FixtureLexicon());
    const auto& side = has ? split.d2 : split.d1;
    split_ok = split_ok && std::find(side.begin(), side.end(), p) != side.end();
    (has ? d2 : d1)++;
  }
  split_ok = split_ok && split.d1.size() == d1 && split.d2.size() == d2;

  const BuildResult built =
      BuildPseudoPairs(split.d2, MockTranslator(table), FixtureLexicon(), 4);
  bool clean = true;
  std::set<std::string> flagged;
  for (const auto& p : built.pairs) {
    if (p.status == PairStatus::kFlagged) {
      flagged.insert(p.id);
    } else if (ContainsIdiom(p.target, FixtureLexicon())) {
      clean = false;
    }
  }
  const bool flags_ok = flagged == planted && built.report.flagged == planted.size();
  const double secs = SecondsSince(start);
  return {split_ok && clean && flags_ok && built.report.errors.empty() && secs < 5.0,
          "d1=" + std::to_string(split.d1.size()) + " d2=" +
              std::to_string(split.d2.size()) + " split=" +
              (split_ok ? "correct" : "WRONG") + " non-flagged idiom-free=" +
              (clean ? "yes" : "NO") + " flagged=" + std::to_string(flagged.size()) +
              "/planted=" + std::to_string(planted.size()) +
              (flags_ok ? " (exact)" : " (MISMATCH)") + " time=" + Fmt(secs) +
              "s (<5s)"};
}

// --- infill round trip -----------------------------------------------------

Outcome InfillRoundTrip() {
  std::mt19937 rng(500);
  int identity_ok = 0, simplify_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const std::string s = RandomSentence(rng, 1, 15);
    bool ok = true;
    for (const auto& occ : DetectIdioms(s, FixtureLexicon())) {
      const InfillInput in = BuildInfillInput(s, occ);
      ok = ok && ApplyInfill(s, occ, occ.idiom) == s &&
           in.masked_source.find(kMaskToken) != std::string::npos;
    }
    if (ok) ++identity_ok;
    const SimplifyResult r = RecursiveSimplify(
        s, FixtureLexicon(), [](const InfillInput&) { return std::string("某事"); });
    if (!r.flagged && !ContainsIdiom(r.text, FixtureLexicon())) ++simplify_ok;
  }
  return {identity_ok == 500 && simplify_ok == 500,
          "mask/refill identity " + std::to_string(identity_ok) +
              "/500, idiom-free after simplify " + std::to_string(simplify_ok) +
              "/500"};
}

// --- durability ------------------------------------------------------------

Outcome Durability() {
  testing::TempDir dir;
  testing::WriteDataset(dir / "data.jsonl", 30, 6);
  int tick = 0;
  auto clock = [&tick] { return "2026-01-01T00:00:" + std::to_string(tick++) + "Z"; };
  std::string exported;
  std::size_t conflicts = 0, rejected = 0, applied = 0;
  {
    ReviewStore store(dir / "data.jsonl", dir / "log.jsonl", FixtureLexicon(),
                      clock);
    std::mt19937 rng(100);
    for (int op = 0; op < 100; ++op) {
      char id[8];
      std::snprintf(id, sizeof(id), "p%03d", static_cast<int>(rng() % 30));
      const CipPair cur = store.Get(id);
      // Every fourth op uses a stale version to force a conflict.
      const bool stale = op % 4 == 3 && cur.version > 0;
      const std::uint64_t version = stale ? cur.version - 1 : cur.version;
      try {
        if (rng() % 2 == 0) {
          const bool idiom = rng() % 5 == 0;
          const std::string target =
              idiom ? std::string("他画蛇添足") : "改写" + std::to_string(op);
          store.SubmitRevision(id, target, "ann", version, idiom && rng() % 2);
        } else {
          store.Approve(id, "ann", version);
        }
        ++applied;
      } catch (const ConflictError&) {
        ++conflicts;
      } catch (const RejectedError&) {
        ++rejected;
      }
    }
    exported = store.ExportJsonl();
  }
  ReviewStore replayed(dir / "data.jsonl", dir / "log.jsonl", FixtureLexicon());
  const bool identical = replayed.ExportJsonl() == exported;
  std::size_t approved = 0;
  bool clean = true;
  for (const auto& p : replayed.List("approved", 0, 1000).pairs) {
    ++approved;
    if (ContainsIdiom(p.target, FixtureLexicon())) clean = false;
  }
  return {identical && clean && conflicts > 0 && approved > 0,
          "ops=100 applied=" + std::to_string(applied) + " conflicts=" +
              std::to_string(conflicts) + " rejected=" + std::to_string(rejected) +
              " approved=" + std::to_string(approved) + " replay export " +
              (identical ? "byte-identical" : "DIFFERS") +
              (clean ? ", approved idiom-free" : ", APPROVED PAIR HAS IDIOM")};
}

// --- released dataset (conditional) ----------------------------------------

Outcome ReleasedDataset() {
  const char* path = std::getenv("CIPKIT_RELEASED_DATASET");
  if (path == nullptr || *path == '\0') {
    return {true, "not evaluated: CIPKIT_RELEASED_DATASET is not set"};
  }
  const auto pairs = ReadCipJsonlFile(path);
  std::optional<IdiomLexicon> lexicon;
  if (const char* lex = std::getenv("CIPKIT_RELEASED_LEXICON"); lex && *lex) {
    lexicon = LoadLexicon(lex);
  } else {
    lexicon = LexiconFromPairs(pairs);
  }
  const CharTokenizer tok(&*lexicon);
  const CorpusStats stats = ComputeStats(pairs, *lexicon, tok);
  return {stats.pairs == 115530 && stats.unique_idioms == 8421,
          "pairs=" + std::to_string(stats.pairs) + " (expected 115530) unique_idioms=" +
              std::to_string(stats.unique_idioms) + " (expected 8421)"};
}

}  // namespace
}  // namespace cipkit

int main() {
  const std::vector<std::pair<std::string, std::function<cipkit::Outcome()>>>
      criteria = {{"golden_diff", cipkit::GoldenDiff},
                  {"mend_golden", cipkit::MendGolden},
                  {"metric_identities", cipkit::MetricIdentities},
                  {"oracle_equivalence", cipkit::OracleEquivalence},
                  {"pipeline_property", cipkit::Pipeline},
                  {"infill_round_trip", cipkit::InfillRoundTrip},
                  {"annotation_durability", cipkit::Durability},
                  {"released_dataset_stats", cipkit::ReleasedDataset}};
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    cipkit::Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << '\n';
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
