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

#include "cipkit/corpus.h"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "cipkit/error.h"
#include "cipkit/parallel.h"
#include "cipkit/utf8.h"
#include "json.hpp"

namespace cipkit {
namespace {

using json = nlohmann::json;

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

// Returns the reason the record is malformed, or nullopt on success.
std::optional<std::string> ParseRecord(std::string_view line,
                                       CorpusFormat format,
                                       ParallelPair* pair) {
  try {
    utf8::Decode(line);
  } catch (const DecodeError& e) {
    return std::string(e.what());
  }
  if (format == CorpusFormat::kTsv) {
    const auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      return "expected 3 tab-separated fields, got " +
             std::to_string(fields.size());
    }
    pair->id = std::string(utf8::Trim(fields[0]));
    pair->zh = std::string(utf8::Trim(fields[1]));
    pair->en = std::string(utf8::Trim(fields[2]));
  } else {
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      return std::string("bad JSON: ") + e.what();
    }
    if (!record.is_object()) return "record is not a JSON object";
    for (const char* key : {"id", "zh", "en"}) {
      if (!record.contains(key) || !record[key].is_string()) {
        return std::string("missing string field '") + key + "'";
      }
    }
    pair->id = std::string(utf8::Trim(record["id"].get<std::string>()));
    pair->zh = std::string(utf8::Trim(record["zh"].get<std::string>()));
    pair->en = std::string(utf8::Trim(record["en"].get<std::string>()));
  }
  if (pair->id.empty()) return "empty id";
  if (pair->zh.empty()) return "empty zh side";
  if (pair->en.empty()) return "empty en side";
  return std::nullopt;
}

void CheckTsvField(const std::string& field) {
  if (field.find_first_of("\t\r\n") != std::string::npos) {
    throw ValidationError("TSV field contains a tab or newline: '" + field +
                          "'");
  }
}

}  // namespace

TokenSeq CharTokenizer::Tokenize(std::string_view sentence) const {
  const std::u32string scalars = utf8::Decode(sentence);
  std::vector<IdiomOccurrence> idioms;
  if (lexicon_ != nullptr) idioms = DetectIdioms(scalars, *lexicon_);

  TokenSeq tokens;
  auto next_idiom = idioms.begin();
  std::size_t i = 0;
  while (i < scalars.size()) {
    if (next_idiom != idioms.end() && next_idiom->start == i) {
      tokens.push_back(next_idiom->idiom);
      i = next_idiom->end;
      ++next_idiom;
      continue;
    }
    const char32_t c = scalars[i];
    if (utf8::IsWhitespace(c)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (utf8::IsLatinAlnum(c)) {
      const std::size_t stop =
          next_idiom != idioms.end() ? next_idiom->start : scalars.size();
      while (j < stop && utf8::IsLatinAlnum(scalars[j])) ++j;
    }
    tokens.push_back(utf8::Encode(scalars.substr(i, j - i)));
    i = j;
  }
  return tokens;
}

std::string JoinTokens(const TokenSeq& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += sep;
    out += tokens[i];
  }
  return out;
}

CorpusFormat FormatFromPath(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".json" ? CorpusFormat::kJsonl
                                           : CorpusFormat::kTsv;
}

CorpusReadResult ReadCorpus(std::istream& in, CorpusFormat format) {
  CorpusReadResult result;
  std::string line;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ParallelPair pair;
    if (auto reason = ParseRecord(line, format, &pair)) {
      result.malformed.push_back({record, std::move(*reason)});
      continue;
    }
    result.pairs.push_back(std::move(pair));
  }
  if (in.bad()) throw IoError("read failure at record " + std::to_string(record));
  return result;
}

CorpusReadResult ReadCorpusFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path.string());
  return ReadCorpus(in, FormatFromPath(path));
}

void WriteCorpus(std::ostream& out, const std::vector<ParallelPair>& pairs,
                 CorpusFormat format) {
  for (const auto& p : pairs) {
    if (format == CorpusFormat::kTsv) {
      CheckTsvField(p.id);
      CheckTsvField(p.zh);
      CheckTsvField(p.en);
      out << p.id << '\t' << p.zh << '\t' << p.en << '\n';
    } else {
      out << json{{"id", p.id}, {"zh", p.zh}, {"en", p.en}}.dump() << '\n';
    }
  }
}

void WriteCorpusFile(const std::filesystem::path& path,
                     const std::vector<ParallelPair>& pairs,
                     CorpusFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCorpus(out, pairs, format);
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

CorpusSplit SplitCorpus(const std::vector<ParallelPair>& corpus,
                        const IdiomLexicon& lexicon, std::size_t workers) {
  std::vector<char> has_idiom(corpus.size(), 0);
  ParallelFor(corpus.size(), workers, [&](std::size_t i) {
    has_idiom[i] = ContainsIdiom(corpus[i].zh, lexicon) ? 1 : 0;
  });
  CorpusSplit split;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (has_idiom[i] ? split.d2 : split.d1).push_back(corpus[i]);
  }
  return split;
}

CorpusSplit SplitCorpus(std::istream& in, CorpusFormat format,
                        const IdiomLexicon& lexicon, std::size_t workers) {
  CorpusReadResult read = ReadCorpus(in, format);
  CorpusSplit split = SplitCorpus(read.pairs, lexicon, workers);
  split.malformed = std::move(read.malformed);
  return split;
}

}  // namespace cipkit
