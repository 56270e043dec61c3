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

#include "cipkit/cip_pair.h"

#include <fstream>
#include <istream>

#include "cipkit/error.h"

namespace cipkit {

using json = nlohmann::json;

std::string_view ToString(PairStatus status) {
  switch (status) {
    case PairStatus::kMachine:
      return "machine";
    case PairStatus::kRevised:
      return "revised";
    case PairStatus::kApproved:
      return "approved";
    case PairStatus::kFlagged:
      return "flagged";
  }
  return "machine";
}

PairStatus ParseStatus(std::string_view name) {
  if (name == "machine") return PairStatus::kMachine;
  if (name == "revised") return PairStatus::kRevised;
  if (name == "approved") return PairStatus::kApproved;
  if (name == "flagged") return PairStatus::kFlagged;
  throw ValidationError("unknown status '" + std::string(name) + "'");
}

json OccurrenceToJson(const IdiomOccurrence& occurrence) {
  return {{"idiom", occurrence.idiom},
          {"start", occurrence.start},
          {"end", occurrence.end}};
}

json OccurrencesToJson(const std::vector<IdiomOccurrence>& list) {
  json out = json::array();
  for (const auto& o : list) out.push_back(OccurrenceToJson(o));
  return out;
}

json ToExportJson(const CipPair& pair) {
  return {{"id", pair.id},
          {"source", pair.source},
          {"target", pair.target},
          {"idioms", OccurrencesToJson(pair.idioms)}};
}

json ToJson(const CipPair& pair) {
  json out = ToExportJson(pair);
  out["status"] = ToString(pair.status);
  json revisions = json::array();
  for (const auto& r : pair.revisions) {
    revisions.push_back({{"timestamp", r.timestamp},
                         {"annotator", r.annotator},
                         {"old_target", r.old_target},
                         {"new_target", r.new_target}});
  }
  out["revisions"] = std::move(revisions);
  return out;
}

namespace {

std::string RequireString(const json& record, const char* key) {
  if (!record.contains(key) || !record[key].is_string()) {
    throw ValidationError(std::string("missing string field '") + key + "'");
  }
  return record[key].get<std::string>();
}

}  // namespace

CipPair CipPairFromJson(const json& record, const IdiomLexicon* lexicon) {
  if (!record.is_object()) throw ValidationError("record is not an object");
  CipPair pair;
  pair.id = RequireString(record, "id");
  pair.source = RequireString(record, "source");
  pair.target = RequireString(record, "target");
  if (pair.id.empty()) throw ValidationError("empty id");
  if (lexicon != nullptr) {
    pair.idioms = DetectIdioms(pair.source, *lexicon);
  } else if (record.contains("idioms")) {
    try {
      for (const auto& o : record.at("idioms")) {
        pair.idioms.push_back({o.at("idiom").get<std::string>(),
                               o.at("start").get<std::size_t>(),
                               o.at("end").get<std::size_t>()});
      }
    } catch (const json::exception& e) {
      throw ValidationError("record " + pair.id +
                            ": malformed idioms field: " + e.what());
    }
  }
  if (record.contains("status")) {
    pair.status = ParseStatus(RequireString(record, "status"));
  }
  if (record.contains("revisions")) {
    try {
      for (const auto& r : record.at("revisions")) {
        pair.revisions.push_back({r.at("timestamp").get<std::string>(),
                                  r.at("annotator").get<std::string>(),
                                  r.at("old_target").get<std::string>(),
                                  r.at("new_target").get<std::string>()});
      }
    } catch (const json::exception& e) {
      throw ValidationError("record " + pair.id +
                            ": malformed revisions field: " + e.what());
    }
  }
  return pair;
}

std::vector<CipPair> ReadCipJsonl(std::istream& in,
                                  const IdiomLexicon* lexicon) {
  std::vector<CipPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      pairs.push_back(CipPairFromJson(json::parse(line), lexicon));
    } catch (const json::exception& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " +
                            e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  if (in.bad()) throw IoError("read failure at line " + std::to_string(line_no));
  return pairs;
}

std::vector<CipPair> ReadCipJsonlFile(const std::filesystem::path& path,
                                      const IdiomLexicon* lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadCipJsonl(in, lexicon);
}

IdiomLexicon LexiconFromPairs(const std::vector<CipPair>& pairs) {
  std::vector<std::string> idioms;
  for (const auto& p : pairs) {
    for (const auto& o : p.idioms) idioms.push_back(o.idiom);
  }
  return IdiomLexicon::FromList(idioms);
}

}  // namespace cipkit
