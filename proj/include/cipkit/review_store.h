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

#ifndef CIPKIT_REVIEW_STORE_H_
#define CIPKIT_REVIEW_STORE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "cipkit/cip_pair.h"
#include "cipkit/error.h"
#include "cipkit/lexicon.h"

namespace cipkit {

class NotFoundError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The caller edited a stale version of the pair.
class ConflictError : public Error {
 public:
  ConflictError(const std::string& what, CipPair current)
      : Error(what), current_(std::move(current)) {}
  const CipPair& current() const { return current_; }

 private:
  CipPair current_;
};

// A mutation broke a review rule. `idioms` lists offending idioms, if any.
class RejectedError : public ValidationError {
 public:
  RejectedError(const std::string& what, std::vector<IdiomOccurrence> idioms)
      : ValidationError(what), idioms_(std::move(idioms)) {}
  const std::vector<IdiomOccurrence>& idioms() const { return idioms_; }

 private:
  std::vector<IdiomOccurrence> idioms_;
};

// Review state for the human pass: the pseudo-CIP dataset plus an
// append-only JSONL log of accepted mutations. The in-memory state is
// always dataset + replayed log; the log line is flushed and fsync'ed
// before memory changes, so a crash loses nothing that was acknowledged.
//
// Each pair carries a version that grows by one per accepted mutation;
// writers must quote the version they read (optimistic concurrency).
// Reads take a shared lock, mutations an exclusive one.
class ReviewStore {
 public:
  using Clock = std::function<std::string()>;

  // Opens `dataset` (CIP JSONL) and replays `log` when it exists. Idioms are
  // re-detected from each source with `lexicon`, which must outlive the
  // store. A torn final log line is ignored; any other bad line throws.
  ReviewStore(std::filesystem::path dataset, std::filesystem::path log,
              const IdiomLexicon& lexicon, Clock clock = {});

  ReviewStore(const ReviewStore&) = delete;
  ReviewStore& operator=(const ReviewStore&) = delete;

  struct Page {
    std::vector<CipPair> pairs;
    std::size_t total = 0;  // matches before paging
  };

  static constexpr std::size_t kMaxPageSize = 1000;

  // Pairs in id order. `status` is a status name, "pending" (anything not
  // approved) or empty for all. Throws ValidationError for a bad filter or
  // a limit outside [1, kMaxPageSize].
  Page List(std::string_view status, std::size_t offset,
            std::size_t limit) const;

  CipPair Get(std::string_view id) const;

  // Replaces the target. An idiom-bearing target is rejected unless
  // `force`, in which case the pair becomes flagged. `expected_version`
  // nullopt skips the version check.
  CipPair SubmitRevision(std::string_view id, std::string_view new_target,
                         std::string_view annotator,
                         std::optional<std::uint64_t> expected_version,
                         bool force);

  // machine/revised + idiom-free target -> approved. Approving an
  // approved pair is a no-op and is not logged.
  CipPair Approve(std::string_view id, std::string_view annotator,
                  std::optional<std::uint64_t> expected_version);

  std::map<std::string, std::size_t> StatusCounts() const;

  // CIP JSONL {id, source, target, idioms} of approved pairs (plus revised
  // ones when asked), in id order.
  std::string ExportJsonl(bool include_revised = false) const;
  void Export(const std::filesystem::path& path,
              bool include_revised = false) const;

  std::uint64_t last_seq() const;
  std::size_t size() const;
  const IdiomLexicon& lexicon() const { return lexicon_; }

 private:
  void Replay();
  void ApplyRecord(const nlohmann::json& record);
  void Append(const nlohmann::json& record);
  CipPair& Find(std::string_view id);
  const CipPair& Find(std::string_view id) const;

  std::filesystem::path dataset_;
  std::filesystem::path log_;
  const IdiomLexicon& lexicon_;
  Clock clock_;
  mutable std::shared_mutex mu_;
  std::map<std::string, CipPair, std::less<>> pairs_;
  std::uint64_t seq_ = 0;
};

std::string UtcTimestamp();

}  // namespace cipkit

#endif  // CIPKIT_REVIEW_STORE_H_
