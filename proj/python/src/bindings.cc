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

// Python bindings for the cipkit core.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cipkit/corpus.h"
#include "cipkit/editdiff.h"
#include "cipkit/error.h"
#include "cipkit/eval.h"
#include "cipkit/inputs.h"
#include "cipkit/lexicon.h"
#include "cipkit/paraphrase.h"

namespace py = pybind11;

namespace cipkit {
namespace {

using Occurrence = std::tuple<std::string, std::size_t, std::size_t>;
using DictMap = std::map<std::string, std::vector<std::string>>;
using SentencePair = std::pair<std::string, std::string>;

Occurrence ToTuple(const IdiomOccurrence& o) { return {o.idiom, o.start, o.end}; }

IdiomOccurrence FromTuple(const Occurrence& t) {
  return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

std::vector<CipPair> ToPairs(const std::vector<SentencePair>& pairs) {
  std::vector<CipPair> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CipPair p;
    p.id = std::to_string(i);
    p.source = pairs[i].first;
    p.target = pairs[i].second;
    out.push_back(std::move(p));
  }
  return out;
}

InterpretationDictionary ToDictionary(const DictMap& dict,
                                      const IdiomLexicon& lexicon) {
  return InterpretationDictionary::FromJson(nlohmann::json(dict), &lexicon);
}

DictMap FromDictionary(const InterpretationDictionary& dict) {
  DictMap out;
  for (const auto& [idiom, entries] : dict.entries()) {
    auto& list = out[idiom];
    for (const auto& e : entries) list.push_back(e.text);
  }
  return out;
}

}  // namespace
}  // namespace cipkit

PYBIND11_MODULE(_core, m) {
  using namespace cipkit;
  m.doc() = "Chinese idiom paraphrasing toolkit";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<RemoteError>(m, "RemoteError", error.ptr());

  py::class_<IdiomLexicon>(m, "Lexicon")
      .def(py::init(&IdiomLexicon::FromList), py::arg("idioms"))
      .def_static("load", [](const std::filesystem::path& p) { return LoadLexicon(p); },
                  py::arg("path"))
      .def("__len__", &IdiomLexicon::size)
      .def("__contains__", &IdiomLexicon::contains)
      .def_property_readonly("idioms", &IdiomLexicon::idioms);

  m.def(
      "detect_idioms",
      [](const std::string& s, const IdiomLexicon& lex) {
        std::vector<Occurrence> out;
        for (const auto& o : DetectIdioms(s, lex)) out.push_back(ToTuple(o));
        return out;
      },
      py::arg("sentence"), py::arg("lexicon"),
      "Leftmost-longest idiom matches as (idiom, start, end) in characters.");
  m.def("contains_idiom",
        [](const std::string& s, const IdiomLexicon& lex) { return ContainsIdiom(s, lex); },
        py::arg("sentence"), py::arg("lexicon"));
  m.def(
      "tokenize",
      [](const std::string& s, const IdiomLexicon* lex) { return Tokenize(s, lex); },
      py::arg("sentence"), py::arg("lexicon") = nullptr);

  m.def(
      "split_corpus",
      [](const std::vector<std::tuple<std::string, std::string, std::string>>& rows,
         const IdiomLexicon& lex, std::size_t workers) {
        std::vector<ParallelPair> corpus;
        for (const auto& [id, zh, en] : rows) corpus.push_back({id, zh, en});
        CorpusSplit split;
        {
          py::gil_scoped_release release;
          split = SplitCorpus(corpus, lex, workers);
        }
        auto rowify = [](const std::vector<ParallelPair>& v) {
          std::vector<std::tuple<std::string, std::string, std::string>> out;
          for (const auto& p : v) out.emplace_back(p.id, p.zh, p.en);
          return out;
        };
        return std::make_pair(rowify(split.d1), rowify(split.d2));
      },
      py::arg("rows"), py::arg("lexicon"), py::arg("workers") = 1,
      "Splits (id, zh, en) rows into (d1, d2) by idiom presence in zh.");

  m.def(
      "diff",
      [](const TokenSeq& source, const TokenSeq& target) {
        std::vector<std::pair<std::string, TokenSeq>> out;
        for (const auto& run : Diff(source, target)) {
          out.emplace_back(std::string(1, static_cast<char>(run.op)), run.tokens);
        }
        return out;
      },
      py::arg("source"), py::arg("target"),
      "Edit script as a list of (op, tokens) with op in '=', '-', '+'.");
  m.def(
      "format_diff",
      [](const TokenSeq& source, const TokenSeq& target, const std::string& joiner) {
        return FormatScript(Diff(source, target), joiner);
      },
      py::arg("source"), py::arg("target"), py::arg("joiner") = "");
  m.def("edit_distance", &EditDistance, py::arg("source"), py::arg("target"));

  m.def(
      "extract_interpretations",
      [](const std::string& source, const std::string& target, const IdiomLexicon& lex) {
        std::vector<SentencePair> out;
        const CharTokenizer tok(&lex);
        for (const auto& i : ExtractInterpretations(source, target, lex, tok)) {
          out.emplace_back(i.idiom, i.text);
        }
        return out;
      },
      py::arg("source"), py::arg("target"), py::arg("lexicon"));
  m.def(
      "build_dictionary",
      [](const std::vector<SentencePair>& pairs, const IdiomLexicon& lex,
         std::size_t workers) {
        const auto cip = ToPairs(pairs);
        InterpretationDictionary dict;
        {
          py::gil_scoped_release release;
          const CharTokenizer tok(&lex);
          dict = InterpretationDictionary::Build(cip, lex, tok, workers);
        }
        return FromDictionary(dict);
      },
      py::arg("pairs"), py::arg("lexicon"), py::arg("workers") = 1,
      "Top interpretations per idiom from (source, target) pairs.");

  m.def(
      "build_knowledge_input",
      [](const std::string& source, const IdiomLexicon& lex, const DictMap& dict) {
        return BuildKnowledgeInput(source, lex, ToDictionary(dict, lex)).text;
      },
      py::arg("source"), py::arg("lexicon"), py::arg("dictionary"));
  m.def(
      "build_infill_input",
      [](const std::string& source, const Occurrence& occ) {
        const InfillInput in = BuildInfillInput(source, FromTuple(occ));
        return std::make_pair(in.text, in.masked_source);
      },
      py::arg("source"), py::arg("occurrence"),
      "Returns (model_input, masked_source).");
  m.def(
      "apply_infill",
      [](const std::string& source, const Occurrence& occ, const std::string& span) {
        return ApplyInfill(source, FromTuple(occ), span);
      },
      py::arg("source"), py::arg("occurrence"), py::arg("span"));
  m.def(
      "recursive_simplify",
      [](const std::string& source, const IdiomLexicon& lex,
         const std::function<std::string(const std::string&, const std::string&)>& provider) {
        const SimplifyResult r = RecursiveSimplify(
            source, lex,
            [&](const InfillInput& in) { return provider(in.text, in.masked.idiom); });
        return py::make_tuple(r.text, r.provider_calls, r.flagged);
      },
      py::arg("source"), py::arg("lexicon"), py::arg("provider"),
      "provider(model_input, idiom) -> span. Returns (text, calls, flagged).");

  m.def(
      "paraphrase",
      [](const std::vector<std::string>& sentences, const IdiomLexicon& lex,
         const DictMap& dict) {
        const auto d = ToDictionary(dict, lex);
        DictionaryParaphraser backend(lex, d);
        std::vector<std::string> out;
        for (const auto& s : sentences) out.push_back(backend.Paraphrase(s).text);
        return out;
      },
      py::arg("sentences"), py::arg("lexicon"), py::arg("dictionary"),
      "Dictionary-backend paraphrase of each sentence.");

  m.def("bleu", &Bleu, py::arg("candidates"), py::arg("references"));
  m.def("rouge_n", &RougeN, py::arg("candidates"), py::arg("references"),
        py::arg("n"));
  m.def(
      "paraphrase_proportion",
      [](const std::vector<std::string>& sources, const std::vector<std::string>& outputs,
         const IdiomLexicon& lex) {
        return ParaphraseProportion(sources, outputs, lex).percentage;
      },
      py::arg("sources"), py::arg("outputs"), py::arg("lexicon"));
  m.def(
      "compute_stats",
      [](const std::vector<SentencePair>& pairs, const IdiomLexicon& lex) {
        const CharTokenizer tok(&lex);
        const auto stats = ComputeStats(ToPairs(pairs), lex, tok);
        const nlohmann::json doc = ToJson(stats);
        py::dict out;
        for (const auto& [key, value] : doc.items()) {
          if (value.is_number_integer()) {
            out[py::str(key)] = value.get<std::size_t>();
          } else {
            out[py::str(key)] = value.get<double>();
          }
        }
        return out;
      },
      py::arg("pairs"), py::arg("lexicon"));
}
