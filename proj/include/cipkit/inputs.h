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

#ifndef CIPKIT_INPUTS_H_
#define CIPKIT_INPUTS_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "cipkit/editdiff.h"
#include "cipkit/error.h"
#include "cipkit/lexicon.h"

namespace cipkit {

inline constexpr std::string_view kSourceSeparator = "</s>";
inline constexpr std::string_view kIdiomSeparator = "<SEP>";
inline constexpr std::string_view kMaskToken = "<X>";

// "<source> </s> <block-1> <SEP> <block-2> ..." where each block is one
// idiom's interpretations joined by single spaces.
struct KnowledgeInput {
  std::string text;
};

// "<source> </s> <source with one idiom replaced by <X>>".
struct InfillInput {
  std::string text;
  std::string masked_source;
  IdiomOccurrence masked;
};

// Throws ValidationError when the source has no idiom. Idioms without a
// dictionary entry contribute an empty block so block count == idiom count.
KnowledgeInput BuildKnowledgeInput(std::string_view source,
                                   const IdiomLexicon& lexicon,
                                   const InterpretationDictionary& dictionary);

// Throws ValidationError when `occurrence` does not describe `source`.
InfillInput BuildInfillInput(std::string_view source,
                             const IdiomOccurrence& occurrence);

// Replaces the occurrence span with `span`. Throws ValidationError on an
// invalid occurrence or an empty span.
std::string ApplyInfill(std::string_view source,
                        const IdiomOccurrence& occurrence,
                        std::string_view span);

using SpanProvider = std::function<std::string(const InfillInput&)>;

struct SimplifyResult {
  std::string text;
  std::size_t provider_calls = 0;
  // Set when the iteration cap was hit with idioms still present.
  bool flagged = false;
};

// Thrown when the span provider fails; carries the text reached so far.
class SimplifyError : public Error {
 public:
  SimplifyError(const std::string& what, std::string partial,
                std::size_t steps)
      : Error(what), partial_(std::move(partial)), steps_(steps) {}
  const std::string& partial() const { return partial_; }
  std::size_t steps() const { return steps_; }

 private:
  std::string partial_;
  std::size_t steps_;
};

// Masks and refills the leftmost idiom until none remain, at most
// 2 x (initial idiom count) provider calls.
SimplifyResult RecursiveSimplify(std::string_view source,
                                 const IdiomLexicon& lexicon,
                                 const SpanProvider& provider);

}  // namespace cipkit

#endif  // CIPKIT_INPUTS_H_
