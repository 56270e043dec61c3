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

#include "cipkit/review_store.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>

namespace cipkit {

using json = nlohmann::json;

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReviewStore::ReviewStore(std::filesystem::path dataset,
                         std::filesystem::path log,
                         const IdiomLexicon& lexicon, Clock clock)
    : dataset_(std::move(dataset)),
      log_(std::move(log)),
      lexicon_(lexicon),
      clock_(clock ? std::move(clock) : Clock(UtcTimestamp)) {
  for (auto& pair : ReadCipJsonlFile(dataset_, &lexicon_)) {
    if (pair.idioms.empty()) {
      throw ValidationError("pair " + pair.id + ": source has no idiom");
    }
    if (pair.status != PairStatus::kFlagged &&
        ContainsIdiom(pair.target, lexicon_)) {
      pair.status = PairStatus::kFlagged;
    }
    std::string id = pair.id;
    if (!pairs_.emplace(std::move(id), std::move(pair)).second) {
      throw ValidationError("duplicate pair id in " + dataset_.string());
    }
  }
  Replay();
}

void ReviewStore::Replay() {
  std::ifstream in(log_, std::ios::binary);
  if (!in) return;  // no log yet
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string contents = buffer.str();
  in.close();

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    const std::size_t eol = contents.find('\n', pos);
    const bool complete = eol != std::string::npos;
    const std::string_view line(contents.data() + pos,
                                (complete ? eol : contents.size()) - pos);
    ++line_no;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      if (!complete) {
        // Torn tail from an interrupted append: drop it so later appends
        // start on a clean line.
        std::filesystem::resize_file(log_, pos);
        return;
      }
      throw ValidationError(log_.string() + ":" + std::to_string(line_no) +
                            ": " + e.what());
    }
    try {
      ApplyRecord(record);
    } catch (const json::exception& e) {
      throw ValidationError(log_.string() + ":" + std::to_string(line_no) +
                            ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(log_.string() + ":" + std::to_string(line_no) +
                            ": " + e.what());
    }
    if (!complete) {
      // A parseable record missing only its newline; terminate it.
      std::ofstream fix(log_, std::ios::binary | std::ios::app);
      fix << '\n';
      break;
    }
    pos = eol + 1;
  }
}

void ReviewStore::ApplyRecord(const json& record) {
  const auto seq = record.at("seq").get<std::uint64_t>();
  if (seq != seq_ + 1) {
    throw ValidationError("log sequence jumps from " + std::to_string(seq_) +
                          " to " + std::to_string(seq));
  }
  CipPair& pair = Find(record.at("id").get<std::string>());
  const auto version = record.at("version").get<std::uint64_t>();
  if (version != pair.version + 1) {
    throw ValidationError("log version mismatch for pair " + pair.id);
  }
  const auto op = record.at("op").get<std::string>();
  if (op == "revision") {
    const auto old_target = record.at("old_target").get<std::string>();
    if (old_target != pair.target) {
      throw ValidationError("log old_target mismatch for pair " + pair.id);
    }
    pair.revisions.push_back({record.at("timestamp").get<std::string>(),
                              record.at("annotator").get<std::string>(),
                              old_target,
                              record.at("new_target").get<std::string>()});
    pair.target = pair.revisions.back().new_target;
    pair.status = ParseStatus(record.at("status").get<std::string>());
  } else if (op == "approve") {
    pair.status = PairStatus::kApproved;
  } else {
    throw ValidationError("unknown log op '" + op + "'");
  }
  pair.version = version;
  seq_ = seq;
}

void ReviewStore::Append(const json& record) {
  const std::string line = record.dump() + "\n";
  const int fd = ::open(log_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) {
    throw IoError("cannot open log " + log_.string() + ": " +
                  std::strerror(errno));
  }
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw IoError("write to " + log_.string() + " failed: " +
                    std::strerror(err));
    }
    written += static_cast<std::size_t>(n);
  }
  const int sync = ::fsync(fd);
  const int err = errno;
  ::close(fd);
  if (sync != 0) {
    throw IoError("fsync of " + log_.string() + " failed: " +
                  std::strerror(err));
  }
}

CipPair& ReviewStore::Find(std::string_view id) {
  const auto it = pairs_.find(id);
  if (it == pairs_.end()) {
    throw NotFoundError("unknown pair id '" + std::string(id) + "'");
  }
  return it->second;
}

const CipPair& ReviewStore::Find(std::string_view id) const {
  const auto it = pairs_.find(id);
  if (it == pairs_.end()) {
    throw NotFoundError("unknown pair id '" + std::string(id) + "'");
  }
  return it->second;
}

ReviewStore::Page ReviewStore::List(std::string_view status,
                                    std::size_t offset,
                                    std::size_t limit) const {
  if (limit == 0 || limit > kMaxPageSize) {
    throw ValidationError("limit must be in [1, " +
                          std::to_string(kMaxPageSize) + "]");
  }
  std::optional<PairStatus> wanted;
  const bool pending = status == "pending";
  if (!status.empty() && !pending) wanted = ParseStatus(status);

  std::shared_lock lock(mu_);
  Page page;
  for (const auto& [id, pair] : pairs_) {
    const bool match = pending ? pair.status != PairStatus::kApproved
                               : !wanted || pair.status == *wanted;
    if (!match) continue;
    if (page.total >= offset && page.pairs.size() < limit) {
      page.pairs.push_back(pair);
    }
    ++page.total;
  }
  return page;
}

CipPair ReviewStore::Get(std::string_view id) const {
  std::shared_lock lock(mu_);
  return Find(id);
}

CipPair ReviewStore::SubmitRevision(std::string_view id,
                                    std::string_view new_target,
                                    std::string_view annotator,
                                    std::optional<std::uint64_t> expected_version,
                                    bool force) {
  if (new_target.empty()) throw RejectedError("empty target", {});
  auto idioms = DetectIdioms(new_target, lexicon_);
  std::unique_lock lock(mu_);
  const CipPair& pair = Find(id);
  if (expected_version && *expected_version != pair.version) {
    throw ConflictError("pair " + pair.id + " is at version " +
                            std::to_string(pair.version) + ", not " +
                            std::to_string(*expected_version),
                        pair);
  }
  if (!idioms.empty() && !force) {
    std::string names;
    for (const auto& o : idioms) names += (names.empty() ? "" : ", ") + o.idiom;
    throw RejectedError("target contains idioms: " + names, std::move(idioms));
  }
  const PairStatus status =
      idioms.empty() ? PairStatus::kRevised : PairStatus::kFlagged;
  const json record = {{"seq", seq_ + 1},
                       {"op", "revision"},
                       {"id", pair.id},
                       {"annotator", std::string(annotator)},
                       {"timestamp", clock_()},
                       {"old_target", pair.target},
                       {"new_target", std::string(new_target)},
                       {"status", ToString(status)},
                       {"version", pair.version + 1}};
  Append(record);
  ApplyRecord(record);
  return Find(id);
}

CipPair ReviewStore::Approve(std::string_view id, std::string_view annotator,
                             std::optional<std::uint64_t> expected_version) {
  std::unique_lock lock(mu_);
  const CipPair& pair = Find(id);
  if (pair.status == PairStatus::kApproved) return pair;
  if (expected_version && *expected_version != pair.version) {
    throw ConflictError("pair " + pair.id + " is at version " +
                            std::to_string(pair.version) + ", not " +
                            std::to_string(*expected_version),
                        pair);
  }
  if (pair.status == PairStatus::kFlagged) {
    throw RejectedError("pair " + pair.id + " is flagged; revise it first",
                        DetectIdioms(pair.target, lexicon_));
  }
  if (auto idioms = DetectIdioms(pair.target, lexicon_); !idioms.empty()) {
    throw RejectedError("target of " + pair.id + " contains idioms",
                        std::move(idioms));
  }
  const json record = {{"seq", seq_ + 1},
                       {"op", "approve"},
                       {"id", pair.id},
                       {"annotator", std::string(annotator)},
                       {"timestamp", clock_()},
                       {"version", pair.version + 1}};
  Append(record);
  ApplyRecord(record);
  return Find(id);
}

std::map<std::string, std::size_t> ReviewStore::StatusCounts() const {
  std::map<std::string, std::size_t> counts = {
      {"machine", 0}, {"revised", 0}, {"approved", 0}, {"flagged", 0}};
  std::shared_lock lock(mu_);
  for (const auto& [id, pair] : pairs_) ++counts[std::string(ToString(pair.status))];
  counts["total"] = pairs_.size();
  return counts;
}

std::string ReviewStore::ExportJsonl(bool include_revised) const {
  std::string out;
  std::shared_lock lock(mu_);
  for (const auto& [id, pair] : pairs_) {
    if (pair.status == PairStatus::kApproved ||
        (include_revised && pair.status == PairStatus::kRevised)) {
      out += ToExportJson(pair).dump();
      out += '\n';
    }
  }
  return out;
}

void ReviewStore::Export(const std::filesystem::path& path,
                         bool include_revised) const {
  const std::string contents = ExportJsonl(include_revised);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failure on " + path.string());
}

std::uint64_t ReviewStore::last_seq() const {
  std::shared_lock lock(mu_);
  return seq_;
}

std::size_t ReviewStore::size() const {
  std::shared_lock lock(mu_);
  return pairs_.size();
}

}  // namespace cipkit
