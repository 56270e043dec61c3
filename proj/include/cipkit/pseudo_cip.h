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

#ifndef CIPKIT_PSEUDO_CIP_H_
#define CIPKIT_PSEUDO_CIP_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cipkit/cip_pair.h"
#include "cipkit/corpus.h"
#include "cipkit/http_client.h"
#include "cipkit/lexicon.h"

namespace cipkit {

// English -> Chinese machine translation. Implementations must be safe to
// call from several threads at once.
class Translator {
 public:
  virtual ~Translator() = default;
  // Throws on failure; never returns an empty string for non-empty input.
  virtual std::string Translate(std::string_view english) const = 0;
};

// Table-driven translator for offline runs. Unknown sentences fail.
class MockTranslator : public Translator {
 public:
  explicit MockTranslator(std::map<std::string, std::string> table)
      : table_(std::move(table)) {}

  // Reads a JSON object {"<english>": "<chinese>", ...}.
  static MockTranslator FromFile(const std::filesystem::path& path);

  std::string Translate(std::string_view english) const override;

 private:
  std::map<std::string, std::string> table_;
};

// POST {"text": en} -> {"translation": zh}.
class HttpTranslator : public Translator {
 public:
  explicit HttpTranslator(std::string_view url,
                          std::chrono::seconds timeout = std::chrono::seconds(30))
      : endpoint_(ParseHttpUrl(url)), timeout_(timeout) {}

  std::string Translate(std::string_view english) const override;

 private:
  HttpEndpoint endpoint_;
  std::chrono::seconds timeout_;
};

// "mock:<table.json>" or "http:<url>".
std::unique_ptr<Translator> MakeTranslator(std::string_view descriptor);

struct PairError {
  std::string id;
  std::string reason;
};

struct BuildReport {
  std::size_t input = 0;
  std::size_t built = 0;    // machine + flagged
  std::size_t flagged = 0;  // translation still contains an idiom
  std::vector<PairError> errors;

  // flagged / built, in [0, 1]; 0 when nothing was built.
  double flagged_fraction() const {
    return built == 0 ? 0.0 : static_cast<double>(flagged) / built;
  }
};

struct BuildResult {
  std::vector<CipPair> pairs;
  BuildReport report;
};

// Translates every English side and pairs it with the original Chinese
// sentence. Up to `max_inflight` translations run concurrently; output
// order follows input order. Failed pairs (translator error, no idiom in
// the source) are reported, not emitted.
BuildResult BuildPseudoPairs(const std::vector<ParallelPair>& d2,
                             const Translator& translator,
                             const IdiomLexicon& lexicon,
                             std::size_t max_inflight = 1);

struct DedupResult {
  std::vector<CipPair> pairs;
  std::vector<std::string> removed_ids;
};

// Drops pairs whose source string was already seen; first one wins.
DedupResult Deduplicate(std::vector<CipPair> pairs);

nlohmann::json ToJson(const BuildReport& report);

}  // namespace cipkit

#endif  // CIPKIT_PSEUDO_CIP_H_
