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

#include "cipkit/inputs.h"

#include "cipkit/utf8.h"

namespace cipkit {
namespace {

// Byte range of a validated occurrence.
std::pair<std::size_t, std::size_t> CheckOccurrence(
    std::string_view source, const IdiomOccurrence& occurrence) {
  const std::size_t length = utf8::Length(source);
  if (occurrence.start >= occurrence.end || occurrence.end > length) {
    throw ValidationError("occurrence [" + std::to_string(occurrence.start) +
                          ", " + std::to_string(occurrence.end) +
                          ") out of bounds for a sentence of " +
                          std::to_string(length) + " characters");
  }
  const std::size_t begin = utf8::ByteOffset(source, occurrence.start);
  const std::size_t end = utf8::ByteOffset(source, occurrence.end);
  if (source.substr(begin, end - begin) != occurrence.idiom) {
    throw ValidationError("occurrence text '" + occurrence.idiom +
                          "' does not match the sentence at [" +
                          std::to_string(occurrence.start) + ", " +
                          std::to_string(occurrence.end) + ")");
  }
  return {begin, end};
}

std::string Splice(std::string_view source, std::size_t begin,
                   std::size_t end, std::string_view replacement) {
  std::string out;
  out.reserve(source.size() - (end - begin) + replacement.size());
  out.append(source.substr(0, begin));
  out.append(replacement);
  out.append(source.substr(end));
  return out;
}

}  // namespace

KnowledgeInput BuildKnowledgeInput(std::string_view source,
                                   const IdiomLexicon& lexicon,
                                   const InterpretationDictionary& dictionary) {
  const auto idioms = DetectIdioms(source, lexicon);
  if (idioms.empty()) {
    throw ValidationError("source contains no idiom; nothing to augment");
  }
  KnowledgeInput input;
  input.text.append(source);
  input.text += ' ';
  input.text.append(kSourceSeparator);
  input.text += ' ';
  for (std::size_t i = 0; i < idioms.size(); ++i) {
    if (i > 0) {
      input.text += ' ';
      input.text.append(kIdiomSeparator);
      input.text += ' ';
    }
    const auto& entries = dictionary.Lookup(idioms[i].idiom);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (k > 0) input.text += ' ';
      input.text += entries[k].text;
    }
  }
  return input;
}

InfillInput BuildInfillInput(std::string_view source,
                             const IdiomOccurrence& occurrence) {
  const auto [begin, end] = CheckOccurrence(source, occurrence);
  InfillInput input;
  input.masked_source = Splice(source, begin, end, kMaskToken);
  input.masked = occurrence;
  input.text.append(source);
  input.text += ' ';
  input.text.append(kSourceSeparator);
  input.text += ' ';
  input.text += input.masked_source;
  return input;
}

std::string ApplyInfill(std::string_view source,
                        const IdiomOccurrence& occurrence,
                        std::string_view span) {
  if (span.empty()) {
    throw ValidationError("empty infill span for '" + occurrence.idiom + "'");
  }
  const auto [begin, end] = CheckOccurrence(source, occurrence);
  return Splice(source, begin, end, span);
}

SimplifyResult RecursiveSimplify(std::string_view source,
                                 const IdiomLexicon& lexicon,
                                 const SpanProvider& provider) {
  SimplifyResult result;
  result.text = std::string(source);
  auto idioms = DetectIdioms(result.text, lexicon);
  const std::size_t cap = 2 * idioms.size();
  while (!idioms.empty()) {
    if (result.provider_calls == cap) {
      result.flagged = true;
      break;
    }
    const IdiomOccurrence& leftmost = idioms.front();
    std::string span;
    try {
      span = provider(BuildInfillInput(result.text, leftmost));
      ++result.provider_calls;
      result.text = ApplyInfill(result.text, leftmost, span);
    } catch (const std::exception& e) {
      throw SimplifyError("span provider failed on '" + leftmost.idiom +
                              "' after " +
                              std::to_string(result.provider_calls) +
                              " step(s): " + e.what(),
                          result.text, result.provider_calls);
    }
    idioms = DetectIdioms(result.text, lexicon);
  }
  return result;
}

}  // namespace cipkit
