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

#include "cipkit/editdiff.h"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "cipkit/error.h"
#include "cipkit/parallel.h"

namespace cipkit {

using json = nlohmann::json;

namespace {

class ScriptBuilder {
 public:
  ScriptBuilder(const TokenSeq& source, const TokenSeq& target)
      : source_(source), target_(target) {
    std::unordered_map<std::string, int> ids;
    auto intern = [&ids](const TokenSeq& seq) {
      std::vector<int> out;
      out.reserve(seq.size());
      for (const auto& t : seq) {
        out.push_back(ids.try_emplace(t, static_cast<int>(ids.size()))
                          .first->second);
      }
      return out;
    };
    src_ = intern(source);
    tgt_ = intern(target);
  }

  EditScript Run() {
    Recurse(0, src_.size(), 0, tgt_.size());
    return std::move(script_);
  }

 private:
  struct Match {
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::size_t len = 0;
  };

  // Longest common contiguous run in src_[s0,s1) x tgt_[t0,t1).
  Match Longest(std::size_t s0, std::size_t s1, std::size_t t0,
                std::size_t t1) const {
    Match best;
    const std::size_t width = t1 - t0;
    std::vector<std::size_t> prev(width + 1, 0), cur(width + 1, 0);
    for (std::size_t i = s0; i < s1; ++i) {
      for (std::size_t j = t0; j < t1; ++j) {
        const std::size_t k = j - t0 + 1;
        cur[k] = src_[i] == tgt_[j] ? prev[k - 1] + 1 : 0;
        const std::size_t len = cur[k];
        if (len == 0) continue;
        const std::size_t si = i + 1 - len;
        const std::size_t tj = j + 1 - len;
        if (len > best.len ||
            (len == best.len &&
             (si < best.src || (si == best.src && tj < best.tgt)))) {
          best = {si, tj, len};
        }
      }
      std::swap(prev, cur);
    }
    return best;
  }

  void Recurse(std::size_t s0, std::size_t s1, std::size_t t0,
               std::size_t t1) {
    const Match m = (s0 < s1 && t0 < t1) ? Longest(s0, s1, t0, t1) : Match{};
    if (m.len == 0) {
      Emit(EditOp::kDelete, source_, s0, s1);
      Emit(EditOp::kInsert, target_, t0, t1);
      return;
    }
    Recurse(s0, m.src, t0, m.tgt);
    Emit(EditOp::kKeep, source_, m.src, m.src + m.len);
    Recurse(m.src + m.len, s1, m.tgt + m.len, t1);
  }

  void Emit(EditOp op, const TokenSeq& from, std::size_t begin,
            std::size_t end) {
    if (begin == end) return;
    if (script_.empty() || script_.back().op != op) {
      script_.push_back({op, {}});
    }
    auto& tokens = script_.back().tokens;
    tokens.insert(tokens.end(), from.begin() + begin, from.begin() + end);
  }

  const TokenSeq& source_;
  const TokenSeq& target_;
  std::vector<int> src_;
  std::vector<int> tgt_;
  EditScript script_;
};

}  // namespace

EditScript Diff(const TokenSeq& source, const TokenSeq& target) {
  return ScriptBuilder(source, target).Run();
}

TokenSeq ApplyScript(const EditScript& script) {
  TokenSeq out;
  for (const auto& run : script) {
    if (run.op != EditOp::kDelete) {
      out.insert(out.end(), run.tokens.begin(), run.tokens.end());
    }
  }
  return out;
}

TokenSeq ScriptSource(const EditScript& script) {
  TokenSeq out;
  for (const auto& run : script) {
    if (run.op != EditOp::kInsert) {
      out.insert(out.end(), run.tokens.begin(), run.tokens.end());
    }
  }
  return out;
}

std::string FormatScript(const EditScript& script, std::string_view joiner) {
  std::string out;
  for (std::size_t i = 0; i < script.size(); ++i) {
    if (i > 0) out += ", ";
    out += "('";
    out += static_cast<char>(script[i].op);
    out += "', '";
    out += JoinTokens(script[i].tokens, joiner);
    out += "')";
  }
  return out;
}

std::size_t EditDistance(const TokenSeq& source, const TokenSeq& target) {
  std::vector<std::size_t> prev(target.size() + 1), cur(target.size() + 1);
  for (std::size_t j = 0; j <= target.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= source.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= target.size(); ++j) {
      const std::size_t sub =
          prev[j - 1] + (source[i - 1] == target[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[target.size()];
}

std::vector<Interpretation> ExtractInterpretations(
    std::string_view source, std::string_view target,
    const IdiomLexicon& lexicon, const Tokenizer& tokenizer) {
  const EditScript script =
      Diff(tokenizer.Tokenize(source), tokenizer.Tokenize(target));
  std::vector<Interpretation> found;
  for (std::size_t i = 0; i + 1 < script.size(); ++i) {
    if (script[i].op != EditOp::kDelete ||
        script[i + 1].op != EditOp::kInsert) {
      continue;
    }
    std::string deleted = JoinTokens(script[i].tokens);
    if (!lexicon.contains(deleted)) continue;
    std::string inserted = JoinTokens(script[i + 1].tokens);
    if (ContainsIdiom(inserted, lexicon)) continue;
    found.push_back({std::move(deleted), std::move(inserted)});
  }
  return found;
}

std::vector<Interpretation> ExtractInterpretations(
    const CipPair& pair, const IdiomLexicon& lexicon,
    const Tokenizer& tokenizer) {
  return ExtractInterpretations(pair.source, pair.target, lexicon, tokenizer);
}

InterpretationDictionary InterpretationDictionary::Build(
    const std::vector<CipPair>& pairs, const IdiomLexicon& lexicon,
    const Tokenizer& tokenizer, std::size_t workers) {
  std::vector<std::vector<Interpretation>> extracted(pairs.size());
  ParallelFor(pairs.size(), workers, [&](std::size_t i) {
    extracted[i] = ExtractInterpretations(pairs[i], lexicon, tokenizer);
  });

  InterpretationDictionary dict;
  for (const auto& per_pair : extracted) {
    for (const auto& interp : per_pair) {
      auto& entries = dict.entries_[interp.idiom];
      auto it = std::find_if(entries.begin(), entries.end(),
                             [&](const Entry& e) { return e.text == interp.text; });
      if (it == entries.end()) {
        entries.push_back({interp.text, 1});
      } else {
        ++it->count;
      }
    }
  }
  for (auto& [idiom, entries] : dict.entries_) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) {
                       return a.count > b.count;
                     });
    if (entries.size() > kMaxInterpretations) {
      entries.resize(kMaxInterpretations);
    }
  }
  return dict;
}

InterpretationDictionary InterpretationDictionary::FromJson(
    const json& doc, const IdiomLexicon* lexicon) {
  if (!doc.is_object()) {
    throw ValidationError("dictionary must be a JSON object");
  }
  InterpretationDictionary dict;
  for (const auto& [idiom, list] : doc.items()) {
    if (!list.is_array()) {
      throw ValidationError("dictionary entry for '" + idiom +
                            "' is not an array");
    }
    if (list.size() > kMaxInterpretations) {
      throw ValidationError("dictionary entry for '" + idiom + "' has " +
                            std::to_string(list.size()) +
                            " interpretations (max 3)");
    }
    auto& entries = dict.entries_[idiom];
    for (const auto& item : list) {
      if (!item.is_string() || item.get<std::string>().empty()) {
        throw ValidationError("interpretation of '" + idiom +
                              "' must be a non-empty string");
      }
      const std::string text = item.get<std::string>();
      if (lexicon != nullptr && ContainsIdiom(text, *lexicon)) {
        throw ValidationError("interpretation '" + text + "' of '" + idiom +
                              "' contains an idiom");
      }
      entries.push_back({text, 0});
    }
  }
  return dict;
}

InterpretationDictionary InterpretationDictionary::Load(
    const std::filesystem::path& path, const IdiomLexicon* lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dictionary " + path.string());
  try {
    return FromJson(json::parse(in), lexicon);
  } catch (const json::parse_error& e) {
    throw ValidationError("dictionary " + path.string() + ": " + e.what());
  }
}

json InterpretationDictionary::ToJson() const {
  json doc = json::object();
  for (const auto& [idiom, entries] : entries_) {
    json list = json::array();
    for (const auto& e : entries) list.push_back(e.text);
    doc[idiom] = std::move(list);
  }
  return doc;
}

void InterpretationDictionary::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << ToJson().dump(2) << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

const std::vector<InterpretationDictionary::Entry>&
InterpretationDictionary::Lookup(std::string_view idiom) const {
  static const std::vector<Entry> kNone;
  const auto it = entries_.find(std::string(idiom));
  return it == entries_.end() ? kNone : it->second;
}

}  // namespace cipkit
