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

#ifndef CIPKIT_CIP_PAIR_H_
#define CIPKIT_CIP_PAIR_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cipkit/lexicon.h"
#include "json.hpp"

namespace cipkit {

enum class PairStatus { kMachine, kRevised, kApproved, kFlagged };

std::string_view ToString(PairStatus status);
// Throws ValidationError for unknown names.
PairStatus ParseStatus(std::string_view name);

struct Revision {
  std::string timestamp;
  std::string annotator;
  std::string old_target;
  std::string new_target;

  friend bool operator==(const Revision&, const Revision&) = default;
};

// An idiom-bearing source sentence and its idiom-free paraphrase.
struct CipPair {
  std::string id;
  std::string source;
  std::string target;
  std::vector<IdiomOccurrence> idioms;  // detected in source
  PairStatus status = PairStatus::kMachine;
  std::vector<Revision> revisions;  // append-only
  std::uint64_t version = 0;

  friend bool operator==(const CipPair&, const CipPair&) = default;
};

nlohmann::json OccurrenceToJson(const IdiomOccurrence& occurrence);
nlohmann::json OccurrencesToJson(const std::vector<IdiomOccurrence>& list);

// Full record: id, source, target, idioms, status, revisions.
nlohmann::json ToJson(const CipPair& pair);
// Exported form: id, source, target, idioms only.
nlohmann::json ToExportJson(const CipPair& pair);

// Accepts both forms. When `lexicon` is given, idioms are re-detected from
// the source; otherwise the record's "idioms" field is used. A missing
// status defaults to machine. Throws ValidationError.
CipPair CipPairFromJson(const nlohmann::json& record,
                        const IdiomLexicon* lexicon = nullptr);

std::vector<CipPair> ReadCipJsonl(std::istream& in,
                                  const IdiomLexicon* lexicon = nullptr);
std::vector<CipPair> ReadCipJsonlFile(const std::filesystem::path& path,
                                      const IdiomLexicon* lexicon = nullptr);

// A lexicon made of every idiom string named in the pairs' idiom lists.
IdiomLexicon LexiconFromPairs(const std::vector<CipPair>& pairs);

}  // namespace cipkit

#endif  // CIPKIT_CIP_PAIR_H_
