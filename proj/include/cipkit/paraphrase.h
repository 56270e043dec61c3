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

#ifndef CIPKIT_PARAPHRASE_H_
#define CIPKIT_PARAPHRASE_H_

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cipkit/editdiff.h"
#include "cipkit/http_client.h"
#include "cipkit/lexicon.h"

namespace cipkit {

struct ParaphraseResult {
  std::string text;
  // Idioms the backend left in place (dictionary backend only).
  std::vector<IdiomOccurrence> untouched;
};

// Maps an idiom-bearing sentence c to a paraphrase t. Stateless per call.
class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  virtual ParaphraseResult Paraphrase(std::string_view sentence) const = 0;
};

class IdentityParaphraser : public Paraphraser {
 public:
  ParaphraseResult Paraphrase(std::string_view sentence) const override {
    return {std::string(sentence), {}};
  }
};

// Replaces every detected idiom by its top-ranked interpretation, right to
// left. Idioms without an entry are kept and reported. Never throws for
// valid UTF-8 input.
class DictionaryParaphraser : public Paraphraser {
 public:
  // Both references must outlive the paraphraser.
  DictionaryParaphraser(const IdiomLexicon& lexicon,
                        const InterpretationDictionary& dictionary)
      : lexicon_(lexicon), dictionary_(dictionary) {}

  ParaphraseResult Paraphrase(std::string_view sentence) const override;

 private:
  const IdiomLexicon& lexicon_;
  const InterpretationDictionary& dictionary_;
};

// POST {"text": c} -> {"paraphrase": t}; the reply is returned verbatim.
class HttpParaphraser : public Paraphraser {
 public:
  explicit HttpParaphraser(std::string_view url,
                           std::chrono::seconds timeout = std::chrono::seconds(30))
      : endpoint_(ParseHttpUrl(url)), timeout_(timeout) {}

  ParaphraseResult Paraphrase(std::string_view sentence) const override;

 private:
  HttpEndpoint endpoint_;
  std::chrono::seconds timeout_;
};

// Owns whatever a backend descriptor needs (dictionary, lexicon copy).
struct ParaphraserHandle {
  std::unique_ptr<InterpretationDictionary> dictionary;
  std::unique_ptr<Paraphraser> backend;
};

// "identity", "dict:<dict.json>" or "http:<url>". `lexicon` must outlive
// the handle.
ParaphraserHandle MakeParaphraser(std::string_view descriptor,
                                  const IdiomLexicon& lexicon);

}  // namespace cipkit

#endif  // CIPKIT_PARAPHRASE_H_
