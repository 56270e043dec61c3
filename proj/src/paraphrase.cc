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

#include "cipkit/paraphrase.h"

#include <algorithm>

#include "cipkit/error.h"
#include "cipkit/utf8.h"

namespace cipkit {

ParaphraseResult DictionaryParaphraser::Paraphrase(
    std::string_view sentence) const {
  ParaphraseResult result;
  result.text = std::string(sentence);
  const auto idioms = DetectIdioms(sentence, lexicon_);
  // Right to left so earlier offsets stay valid.
  for (auto it = idioms.rbegin(); it != idioms.rend(); ++it) {
    const auto& entries = dictionary_.Lookup(it->idiom);
    if (entries.empty()) {
      result.untouched.push_back(*it);
      continue;
    }
    const std::size_t begin = utf8::ByteOffset(result.text, it->start);
    const std::size_t end = utf8::ByteOffset(result.text, it->end);
    result.text.replace(begin, end - begin, entries.front().text);
  }
  std::reverse(result.untouched.begin(), result.untouched.end());
  return result;
}

ParaphraseResult HttpParaphraser::Paraphrase(std::string_view sentence) const {
  return {PostTextField(endpoint_, sentence, "paraphrase", timeout_), {}};
}

ParaphraserHandle MakeParaphraser(std::string_view descriptor,
                                  const IdiomLexicon& lexicon) {
  ParaphraserHandle handle;
  if (descriptor == "identity") {
    handle.backend = std::make_unique<IdentityParaphraser>();
  } else if (descriptor.starts_with("dict:")) {
    handle.dictionary = std::make_unique<InterpretationDictionary>(
        InterpretationDictionary::Load(std::string(descriptor.substr(5)),
                                       &lexicon));
    handle.backend =
        std::make_unique<DictionaryParaphraser>(lexicon, *handle.dictionary);
  } else if (descriptor.starts_with("http:")) {
    std::string url(descriptor.substr(5));
    if (url.starts_with("//")) url = "http:" + url;
    handle.backend = std::make_unique<HttpParaphraser>(url);
  } else {
    throw ValidationError("backend must be identity, dict:<dict.json> or "
                          "http:<url>, got '" + std::string(descriptor) + "'");
  }
  return handle;
}

}  // namespace cipkit
