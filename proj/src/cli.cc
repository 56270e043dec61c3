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

#include "cipkit/cli.h"

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cipkit/annotate_server.h"
#include "cipkit/cip_pair.h"
#include "cipkit/corpus.h"
#include "cipkit/editdiff.h"
#include "cipkit/error.h"
#include "cipkit/eval.h"
#include "cipkit/inputs.h"
#include "cipkit/lexicon.h"
#include "cipkit/paraphrase.h"
#include "cipkit/pseudo_cip.h"
#include "cipkit/review_store.h"
#include "cipkit/utf8.h"

namespace cipkit::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char* kStdio = "-";

// Per-invocation streams.
struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// Refuses to write over an input file.
void CheckDistinct(const std::string& output,
                   std::initializer_list<std::string> inputs) {
  if (output.empty() || output == kStdio) return;
  for (const auto& input : inputs) {
    if (input.empty() || input == kStdio) continue;
    std::error_code ec;
    if (fs::exists(output, ec) && fs::equivalent(output, input, ec)) {
      throw ValidationError("output " + output + " would overwrite input " +
                            input);
    }
  }
}

// Writes to a file, or to the data stream for "" / "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == kStdio) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary |
                                                      std::ios::trunc);
    if (!*file_) throw IoError("cannot write " + path);
    stream_ = file_.get();
    path_ = path;
  }

  std::ostream& stream() { return *stream_; }

  void Close() {
    stream_->flush();
    if (!*stream_) throw IoError("write failure on " + path_);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
  std::string path_ = "<stdout>";
};

std::vector<std::string> ReadLines(const std::string& path, std::istream& in) {
  std::ifstream file;
  std::istream* source = &in;
  if (path != kStdio) {
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path);
    source = &file;
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(*source, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      utf8::Decode(line);
    } catch (const DecodeError& e) {
      throw ValidationError(path + ":" + std::to_string(lines.size() + 1) +
                            ": " + e.what());
    }
    lines.push_back(std::move(line));
  }
  if (source->bad()) throw IoError("read failure on " + path);
  return lines;
}

IdiomLexicon LoadLexiconReporting(const std::string& path, std::ostream& err) {
  LexiconLoadReport report;
  IdiomLexicon lexicon = LoadLexicon(path, &report);
  if (report.too_short + report.invalid + report.duplicates > 0) {
    err << "lexicon " << path << ": " << lexicon.size() << " idioms; skipped "
        << report.too_short << " short, " << report.invalid << " malformed, "
        << report.duplicates << " duplicate line(s)\n";
  }
  return lexicon;
}

std::vector<CipPair> ReadPairs(const std::string& path, std::istream& in,
                               const IdiomLexicon* lexicon) {
  if (path == kStdio) return ReadCipJsonl(in, lexicon);
  return ReadCipJsonlFile(path, lexicon);
}

void WritePairs(Sink& sink, const std::vector<CipPair>& pairs) {
  for (const auto& p : pairs) sink.stream() << ToJson(p).dump() << '\n';
  sink.Close();
}

std::string ExtensionFor(CorpusFormat format) {
  return format == CorpusFormat::kJsonl ? ".jsonl" : ".tsv";
}

void CheckWorkers(std::size_t n, const char* flag) {
  if (n < 1) throw ValidationError(std::string(flag) + " must be >= 1");
}

// --- subcommands ----------------------------------------------------------

struct DetectArgs {
  std::string lexicon;
  std::string in = kStdio;
  std::string out;
};

int Detect(const DetectArgs& a, Io io) {
  CheckDistinct(a.out, {a.in, a.lexicon});
  const IdiomLexicon lexicon = LoadLexiconReporting(a.lexicon, io.err);
  const auto lines = ReadLines(a.in, io.in);
  Sink sink(a.out, io.out);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    sink.stream() << json{{"line", i + 1},
                          {"text", lines[i]},
                          {"idioms", OccurrencesToJson(
                                         DetectIdioms(lines[i], lexicon))}}
                         .dump()
                  << '\n';
  }
  sink.Close();
  return kExitOk;
}

struct SplitArgs {
  std::string lexicon;
  std::string in;
  std::string out_dir;
  std::size_t workers = 1;
};

int Split(const SplitArgs& a, Io io) {
  CheckWorkers(a.workers, "--workers");
  const IdiomLexicon lexicon = LoadLexiconReporting(a.lexicon, io.err);
  std::ifstream file(a.in, std::ios::binary);
  if (!file) throw IoError("cannot open corpus " + a.in);
  const CorpusFormat format = FormatFromPath(a.in);
  const CorpusSplit split = SplitCorpus(file, format, lexicon, a.workers);
  for (const auto& m : split.malformed) {
    io.err << a.in << ": record " << m.record << " skipped: " << m.reason
           << '\n';
  }
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw IoError("cannot create " + a.out_dir + ": " + ec.message());
  const fs::path d1 = fs::path(a.out_dir) / ("d1" + ExtensionFor(format));
  const fs::path d2 = fs::path(a.out_dir) / ("d2" + ExtensionFor(format));
  CheckDistinct(d1.string(), {a.in});
  CheckDistinct(d2.string(), {a.in});
  WriteCorpusFile(d1, split.d1, format);
  WriteCorpusFile(d2, split.d2, format);
  io.err << "d1=" << split.d1.size() << " d2=" << split.d2.size()
         << " malformed=" << split.malformed.size() << '\n';
  return kExitOk;
}

struct BuildPseudoArgs {
  std::string in;
  std::string lexicon;
  std::string translator;
  std::size_t max_inflight = 4;
  std::string out;
  std::string report;
};

int BuildPseudo(BuildPseudoArgs a, Io io) {
  CheckWorkers(a.max_inflight, "--max-inflight");
  CheckDistinct(a.out, {a.in, a.lexicon});
  if (a.translator.empty()) {
    if (const char* env = std::getenv(kTranslatorEnv)) a.translator = env;
  }
  if (a.translator.empty()) {
    throw ValidationError(std::string("no translator: pass --translator or "
                                      "set ") + kTranslatorEnv);
  }
  const IdiomLexicon lexicon = LoadLexiconReporting(a.lexicon, io.err);
  const auto translator = MakeTranslator(a.translator);
  const CorpusReadResult corpus = ReadCorpusFile(a.in);
  for (const auto& m : corpus.malformed) {
    io.err << a.in << ": record " << m.record << " skipped: " << m.reason
           << '\n';
  }
  const BuildResult result =
      BuildPseudoPairs(corpus.pairs, *translator, lexicon, a.max_inflight);
  Sink sink(a.out, io.out);
  WritePairs(sink, result.pairs);
  for (const auto& e : result.report.errors) {
    io.err << "pair " << e.id << ": " << e.reason << '\n';
  }
  io.err << "built=" << result.report.built
         << " flagged=" << result.report.flagged
         << " errors=" << result.report.errors.size()
         << " flagged_fraction=" << result.report.flagged_fraction() << '\n';
  if (!a.report.empty()) {
    std::ofstream report(a.report, std::ios::binary | std::ios::trunc);
    if (!report) throw IoError("cannot write " + a.report);
    report << ToJson(result.report).dump(2) << '\n';
  }
  if (result.report.built == 0 && !result.report.errors.empty()) {
    return kExitIo;
  }
  return kExitOk;
}

struct DedupArgs {
  std::string in = kStdio;
  std::string out;
};

int Dedup(const DedupArgs& a, Io io) {
  CheckDistinct(a.out, {a.in});
  DedupResult result = Deduplicate(ReadPairs(a.in, io.in, nullptr));
  Sink sink(a.out, io.out);
  WritePairs(sink, result.pairs);
  for (const auto& id : result.removed_ids) {
    io.err << "removed duplicate source: " << id << '\n';
  }
  io.err << "kept=" << result.pairs.size()
         << " removed=" << result.removed_ids.size() << '\n';
  return kExitOk;
}

struct DiffArgs {
  std::string source;
  std::string target;
  std::string in;
  std::string lexicon;
  std::string out;
  std::string joiner;
};

json ScriptJson(const EditScript& script) {
  json runs = json::array();
  for (const auto& run : script) {
    runs.push_back({std::string(1, static_cast<char>(run.op)),
                    JoinTokens(run.tokens)});
  }
  return runs;
}

int DiffCommand(const DiffArgs& a, Io io) {
  std::optional<IdiomLexicon> lexicon;
  if (!a.lexicon.empty()) lexicon = LoadLexiconReporting(a.lexicon, io.err);
  const CharTokenizer tokenizer(lexicon ? &*lexicon : nullptr);
  Sink sink(a.out, io.out);
  if (!a.in.empty()) {
    CheckDistinct(a.out, {a.in});
    for (const auto& p : ReadPairs(a.in, io.in, nullptr)) {
      const TokenSeq src = tokenizer.Tokenize(p.source);
      const TokenSeq tgt = tokenizer.Tokenize(p.target);
      sink.stream() << json{{"id", p.id},
                            {"diff", ScriptJson(Diff(src, tgt))},
                            {"edit_distance", EditDistance(src, tgt)}}
                           .dump()
                    << '\n';
    }
  } else {
    sink.stream() << FormatScript(Diff(tokenizer.Tokenize(a.source),
                                       tokenizer.Tokenize(a.target)),
                                  a.joiner)
                  << '\n';
  }
  sink.Close();
  return kExitOk;
}

struct ExtractArgs {
  std::string in;
  std::string lexicon;
  std::string out;
  std::size_t workers = 1;
};

int ExtractDict(const ExtractArgs& a, Io io) {
  CheckWorkers(a.workers, "--workers");
  CheckDistinct(a.out, {a.in, a.lexicon});
  const IdiomLexicon lexicon = LoadLexiconReporting(a.lexicon, io.err);
  const CharTokenizer tokenizer(&lexicon);
  const auto pairs = ReadPairs(a.in, io.in, &lexicon);
  const auto dict =
      InterpretationDictionary::Build(pairs, lexicon, tokenizer, a.workers);
  Sink sink(a.out, io.out);
  sink.stream() << dict.ToJson().dump(2) << '\n';
  sink.Close();
  io.err << "idioms=" << dict.size() << '\n';
  return kExitOk;
}

struct BuildInputsArgs {
  std::string mode;
  std::string in;
  std::string lexicon;
  std::string dict;
  std::string out;
};

int BuildInputs(const BuildInputsArgs& a, Io io) {
  CheckDistinct(a.out, {a.in, a.lexicon, a.dict});
  const IdiomLexicon lexicon = LoadLexiconReporting(a.lexicon, io.err);
  const CharTokenizer tokenizer(&lexicon);
  const auto pairs = ReadPairs(a.in, io.in, &lexicon);
  Sink sink(a.out, io.out);
  std::size_t skipped = 0;
  if (a.mode == "knowledge") {
    if (a.dict.empty()) throw ValidationError("--dict is required for knowledge mode");
    const auto dict = InterpretationDictionary::Load(a.dict, &lexicon);
    for (const auto& p : pairs) {
      if (p.idioms.empty()) {
        io.err << "pair " << p.id << ": no idiom, skipped\n";
        ++skipped;
        continue;
      }
      sink.stream() << json{{"id", p.id},
                            {"input", BuildKnowledgeInput(p.source, lexicon, dict).text},
                            {"reference", p.target}}
                           .dump()
                    << '\n';
    }
  } else if (a.mode == "infill") {
    for (const auto& p : pairs) {
      if (p.idioms.empty()) {
        io.err << "pair " << p.id << ": no idiom, skipped\n";
        ++skipped;
        continue;
      }
      const auto interps = ExtractInterpretations(p, lexicon, tokenizer);
      std::vector<bool> used(interps.size(), false);
      for (std::size_t k = 0; k < p.idioms.size(); ++k) {
        const auto& occ = p.idioms[k];
        json record = {{"id", p.id + "#" + std::to_string(k)},
                       {"input", BuildInfillInput(p.source, occ).text}};
        for (std::size_t j = 0; j < interps.size(); ++j) {
          if (!used[j] && interps[j].idiom == occ.idiom) {
            used[j] = true;
            record["reference"] = interps[j].text;
            break;
          }
        }
        sink.stream() << record.dump() << '\n';
      }
    }
  } else {
    throw ValidationError("--mode must be knowledge or infill");
  }
  sink.Close();
  if (skipped > 0) io.err << "skipped=" << skipped << '\n';
  return kExitOk;
}

struct ParaphraseArgs {
  std::string backend = "identity";
  std::string lexicon;
  std::string in = kStdio;
  std::string out;
};

int ParaphraseCommand(const ParaphraseArgs& a, Io io) {
  CheckDistinct(a.out, {a.in, a.lexicon});
  const IdiomLexicon lexicon = LoadLexiconReporting(a.lexicon, io.err);
  const ParaphraserHandle handle = MakeParaphraser(a.backend, lexicon);
  const auto lines = ReadLines(a.in, io.in);
  std::vector<std::string> outputs;
  outputs.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    ParaphraseResult r;
    try {
      r = handle.backend->Paraphrase(lines[i]);
    } catch (const RemoteError& e) {
      throw RemoteError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    for (const auto& o : r.untouched) {
      io.err << "line " << (i + 1) << ": no interpretation for " << o.idiom
             << '\n';
    }
    outputs.push_back(std::move(r.text));
  }
  Sink sink(a.out, io.out);
  for (const auto& line : outputs) sink.stream() << line << '\n';
  sink.Close();
  return kExitOk;
}

struct EvaluateArgs {
  std::string sources;
  std::string outputs;
  std::string references;
  std::string lexicon;
  std::string out;
};

int EvaluateCommand(const EvaluateArgs& a, Io io) {
  CheckDistinct(a.out, {a.sources, a.outputs, a.references, a.lexicon});
  const IdiomLexicon lexicon = LoadLexiconReporting(a.lexicon, io.err);
  const CharTokenizer tokenizer(&lexicon);
  const auto sources = ReadLines(a.sources, io.in);
  const auto outputs = ReadLines(a.outputs, io.in);
  std::optional<std::vector<std::string>> refs;
  if (!a.references.empty()) refs = ReadLines(a.references, io.in);
  const EvalReport report =
      Evaluate(sources, outputs, refs ? &*refs : nullptr, lexicon, tokenizer);
  for (std::size_t i : report.skipped) {
    io.err << "line " << (i + 1) << ": source has no idiom, skipped\n";
  }
  Sink sink(a.out, io.out);
  sink.stream() << ToJson(report).dump(2) << '\n';
  sink.Close();
  return kExitOk;
}

struct StatsArgs {
  std::string dataset;
  std::string lexicon;
  std::string out;
};

int StatsCommand(const StatsArgs& a, Io io) {
  CheckDistinct(a.out, {a.dataset, a.lexicon});
  std::optional<IdiomLexicon> lexicon;
  if (!a.lexicon.empty()) lexicon = LoadLexiconReporting(a.lexicon, io.err);
  auto pairs = ReadPairs(a.dataset, io.in, lexicon ? &*lexicon : nullptr);
  if (!lexicon) {
    lexicon = LexiconFromPairs(pairs);
    io.err << "no --lexicon: using the " << lexicon->size()
           << " idioms named in the dataset\n";
  }
  const CharTokenizer tokenizer(&*lexicon);
  Sink sink(a.out, io.out);
  sink.stream() << ToJson(ComputeStats(pairs, *lexicon, tokenizer)).dump(2)
                << '\n';
  sink.Close();
  return kExitOk;
}

struct ServeArgs {
  std::string dataset;
  std::string log;
  std::string lexicon;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
};

AnnotateServer* g_server = nullptr;

extern "C" void StopServer(int) {
  if (g_server != nullptr) g_server->Stop();
}

int Serve(const ServeArgs& a, Io io) {
  IdiomLexicon lexicon;
  if (!a.lexicon.empty()) {
    lexicon = LoadLexiconReporting(a.lexicon, io.err);
  } else {
    lexicon = LexiconFromPairs(ReadCipJsonlFile(a.dataset));
    io.err << "no --lexicon: validating with the " << lexicon.size()
           << " idioms named in the dataset\n";
  }
  ReviewStore store(a.dataset, a.log, lexicon);
  AnnotateServer server(store, a.static_dir);
  const int port = server.Bind(a.host, a.port);
  io.err << "serving " << store.size() << " pairs on http://" << a.host << ':'
         << port << " (log " << a.log << ", seq " << store.last_seq() << ")\n";
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  server.Serve();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Chinese idiom paraphrasing toolkit", "cipkit"};
  app.require_subcommand(1);

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "Find idioms in sentences (one per line)");
  detect_cmd->add_option("--lexicon", detect.lexicon, "Idiom list")->required();
  detect_cmd->add_option("--in", detect.in, "Input sentences ('-' = stdin)");
  detect_cmd->add_option("--out", detect.out, "Output JSONL (default stdout)");

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Split a parallel corpus into d1 (no idiom) and d2 (idiom)");
  split_cmd->add_option("--lexicon", split.lexicon, "Idiom list")->required();
  split_cmd->add_option("--in", split.in, "Corpus (.tsv or .jsonl)")->required();
  split_cmd->add_option("--out-dir", split.out_dir, "Output directory")->required();
  split_cmd->add_option("--workers", split.workers, "Classifier threads");

  BuildPseudoArgs pseudo;
  auto* pseudo_cmd = app.add_subcommand("build-pseudo", "Translate English sides of d2 into pseudo-CIP pairs");
  pseudo_cmd->add_option("--in", pseudo.in, "d2 corpus (.tsv or .jsonl)")->required();
  pseudo_cmd->add_option("--lexicon", pseudo.lexicon, "Idiom list")->required();
  pseudo_cmd->add_option("--translator", pseudo.translator,
                         std::string("mock:<table.json> or http:<url> (default $") +
                             kTranslatorEnv + ")");
  pseudo_cmd->add_option("--max-inflight", pseudo.max_inflight, "Concurrent translations");
  pseudo_cmd->add_option("--out", pseudo.out, "Output CIP JSONL (default stdout)");
  pseudo_cmd->add_option("--report", pseudo.report, "Write the build report as JSON");

  DedupArgs dedup;
  auto* dedup_cmd = app.add_subcommand("dedup", "Drop pairs with an already-seen source");
  dedup_cmd->add_option("--in", dedup.in, "CIP JSONL ('-' = stdin)");
  dedup_cmd->add_option("--out", dedup.out, "Output CIP JSONL (default stdout)");

  DiffArgs diff;
  auto* diff_cmd = app.add_subcommand("diff", "Edit script between source and target");
  diff_cmd->add_option("--source", diff.source, "Source sentence");
  diff_cmd->add_option("--target", diff.target, "Target sentence");
  diff_cmd->add_option("--in", diff.in, "CIP JSONL instead of --source/--target");
  diff_cmd->add_option("--lexicon", diff.lexicon, "Idiom list (idiom-aware tokens)");
  diff_cmd->add_option("--joiner", diff.joiner, "Token separator inside a run");
  diff_cmd->add_option("--out", diff.out, "Output (default stdout)");

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract-dict", "Mine the idiom interpretation dictionary");
  extract_cmd->add_option("--in", extract.in, "CIP JSONL")->required();
  extract_cmd->add_option("--lexicon", extract.lexicon, "Idiom list")->required();
  extract_cmd->add_option("--out", extract.out, "Dictionary JSON (default stdout)");
  extract_cmd->add_option("--workers", extract.workers, "Extraction threads");

  BuildInputsArgs inputs;
  auto* inputs_cmd = app.add_subcommand("build-inputs", "Knowledge or infill model inputs");
  inputs_cmd->add_option("--mode", inputs.mode, "knowledge | infill")
      ->required()
      ->check(CLI::IsMember({"knowledge", "infill"}));
  inputs_cmd->add_option("--in", inputs.in, "CIP JSONL")->required();
  inputs_cmd->add_option("--lexicon", inputs.lexicon, "Idiom list")->required();
  inputs_cmd->add_option("--dict", inputs.dict, "Dictionary JSON (knowledge mode)");
  inputs_cmd->add_option("--out", inputs.out, "Output JSONL (default stdout)");

  ParaphraseArgs para;
  auto* para_cmd = app.add_subcommand("paraphrase", "Paraphrase sentences (one per line)");
  para_cmd->add_option("--backend", para.backend, "identity | dict:<dict.json> | http:<url>");
  para_cmd->add_option("--lexicon", para.lexicon, "Idiom list")->required();
  para_cmd->add_option("--in", para.in, "Input sentences ('-' = stdin)");
  para_cmd->add_option("--out", para.out, "Output (default stdout)");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "BLEU, ROUGE-1/2 and paraphrase proportion");
  eval_cmd->add_option("--sources", eval.sources, "Source sentences")->required();
  eval_cmd->add_option("--outputs", eval.outputs, "System outputs")->required();
  eval_cmd->add_option("--references", eval.references, "Reference sentences");
  eval_cmd->add_option("--lexicon", eval.lexicon, "Idiom list")->required();
  eval_cmd->add_option("--out", eval.out, "Report JSON (default stdout)");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics");
  stats_cmd->add_option("--dataset", stats.dataset, "CIP JSONL")->required();
  stats_cmd->add_option("--lexicon", stats.lexicon, "Idiom list (default: idioms named in the dataset)");
  stats_cmd->add_option("--out", stats.out, "Stats JSON (default stdout)");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Annotation review service");
  serve_cmd->add_option("--dataset", serve.dataset, "Pseudo-CIP JSONL")->required();
  serve_cmd->add_option("--log", serve.log, "Append-only revision log")->required();
  serve_cmd->add_option("--port", serve.port, "TCP port (0 = any)");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--lexicon", serve.lexicon, "Idiom list (default: idioms named in the dataset)");
  serve_cmd->add_option("--static-dir", serve.static_dir, "Directory served at /");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("cipkit");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    err << target->help();
    return kExitValidation;
  }

  const Io io{in, out, err};
  try {
    if (*detect_cmd) return Detect(detect, io);
    if (*split_cmd) return Split(split, io);
    if (*pseudo_cmd) return BuildPseudo(pseudo, io);
    if (*dedup_cmd) return Dedup(dedup, io);
    if (*diff_cmd) {
      if (diff.in.empty() && (!diff_cmd->count("--source") ||
                              !diff_cmd->count("--target"))) {
        throw ValidationError("diff needs --in or both --source and --target");
      }
      return DiffCommand(diff, io);
    }
    if (*extract_cmd) return ExtractDict(extract, io);
    if (*inputs_cmd) return BuildInputs(inputs, io);
    if (*para_cmd) return ParaphraseCommand(para, io);
    if (*eval_cmd) return EvaluateCommand(eval, io);
    if (*stats_cmd) return StatsCommand(stats, io);
    if (*serve_cmd) return Serve(serve, io);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitValidation;
}

}  // namespace cipkit::cli
