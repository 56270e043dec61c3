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

#include "cipkit/pseudo_cip.h"

#include <fstream>
#include <optional>
#include <unordered_set>

#include "cipkit/error.h"
#include "cipkit/parallel.h"

namespace cipkit {

using json = nlohmann::json;

MockTranslator MockTranslator::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open translation table " + path.string());
  json table;
  try {
    table = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("translation table " + path.string() + ": " +
                          e.what());
  }
  if (!table.is_object()) {
    throw ValidationError("translation table must be a JSON object");
  }
  std::map<std::string, std::string> entries;
  for (const auto& [en, zh] : table.items()) {
    if (!zh.is_string()) {
      throw ValidationError("translation for '" + en + "' is not a string");
    }
    entries.emplace(en, zh.get<std::string>());
  }
  return MockTranslator(std::move(entries));
}

std::string MockTranslator::Translate(std::string_view english) const {
  const auto it = table_.find(std::string(english));
  if (it == table_.end()) {
    throw RemoteError("mock translator has no entry for '" +
                      std::string(english) + "'");
  }
  if (it->second.empty()) throw RemoteError("mock translation is empty");
  return it->second;
}

std::string HttpTranslator::Translate(std::string_view english) const {
  std::string zh = PostTextField(endpoint_, english, "translation", timeout_);
  if (zh.empty()) {
    throw RemoteError(endpoint_.scheme_host_port + endpoint_.path +
                      ": empty translation");
  }
  return zh;
}

std::unique_ptr<Translator> MakeTranslator(std::string_view descriptor) {
  if (descriptor.starts_with("mock:")) {
    return std::make_unique<MockTranslator>(
        MockTranslator::FromFile(std::string(descriptor.substr(5))));
  }
  if (descriptor.starts_with("http:")) {
    std::string url(descriptor.substr(5));
    // Accept both "http:http://host/x" and "http://host/x".
    if (url.starts_with("//")) url = "http:" + url;
    return std::make_unique<HttpTranslator>(url);
  }
  throw ValidationError("translator must be mock:<table.json> or "
                        "http:<url>, got '" + std::string(descriptor) + "'");
}

BuildResult BuildPseudoPairs(const std::vector<ParallelPair>& d2,
                             const Translator& translator,
                             const IdiomLexicon& lexicon,
                             std::size_t max_inflight) {
  struct Slot {
    std::optional<CipPair> pair;
    std::string error;
  };
  std::vector<Slot> slots(d2.size());
  ParallelFor(d2.size(), max_inflight, [&](std::size_t i) {
    const ParallelPair& in = d2[i];
    Slot& slot = slots[i];
    CipPair pair;
    pair.id = in.id;
    pair.source = in.zh;
    pair.idioms = DetectIdioms(in.zh, lexicon);
    if (pair.idioms.empty()) {
      slot.error = "source contains no idiom";
      return;
    }
    try {
      pair.target = translator.Translate(in.en);
    } catch (const std::exception& e) {
      slot.error = e.what();
      return;
    }
    pair.status = ContainsIdiom(pair.target, lexicon) ? PairStatus::kFlagged
                                                      : PairStatus::kMachine;
    slot.pair = std::move(pair);
  });

  BuildResult result;
  result.report.input = d2.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].pair) {
      result.report.errors.push_back({d2[i].id, std::move(slots[i].error)});
      continue;
    }
    if (slots[i].pair->status == PairStatus::kFlagged) ++result.report.flagged;
    result.pairs.push_back(std::move(*slots[i].pair));
  }
  result.report.built = result.pairs.size();
  return result;
}

DedupResult Deduplicate(std::vector<CipPair> pairs) {
  DedupResult result;
  std::unordered_set<std::string> seen;
  for (auto& p : pairs) {
    if (!seen.insert(p.source).second) {
      result.removed_ids.push_back(p.id);
      continue;
    }
    result.pairs.push_back(std::move(p));
  }
  return result;
}

json ToJson(const BuildReport& report) {
  json errors = json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"id", e.id}, {"reason", e.reason}});
  }
  return {{"input", report.input},
          {"built", report.built},
          {"flagged", report.flagged},
          {"flagged_fraction", report.flagged_fraction()},
          {"errors", std::move(errors)}};
}

}  // namespace cipkit
