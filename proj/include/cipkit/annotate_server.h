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

#ifndef CIPKIT_ANNOTATE_SERVER_H_
#define CIPKIT_ANNOTATE_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>

#include "cipkit/review_store.h"

namespace httplib {
class Server;
}

namespace cipkit {

// JSON API over a ReviewStore:
//   GET  /api/pairs?status=&offset=&limit=   -> {pairs, total}
//   GET  /api/pairs/{id}                     -> pair with version
//   POST /api/pairs/{id}/revision            -> 200 | 409 | 422
//   POST /api/pairs/{id}/approve             -> 200 | 409 | 422
//   GET  /api/stats                          -> counts by status
//   GET  /api/lexicon/check?text=            -> {idioms: [{idiom,start,end}]}
// Unknown ids answer 404, malformed requests 400.
class AnnotateServer {
 public:
  // `store` must outlive the server. A non-empty `static_dir` is served
  // at "/" (the browser UI).
  explicit AnnotateServer(ReviewStore& store,
                          std::filesystem::path static_dir = {});
  ~AnnotateServer();

  AnnotateServer(const AnnotateServer&) = delete;
  AnnotateServer& operator=(const AnnotateServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port. Throws IoError.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  void Serve();
  void Stop();
  bool running() const;

 private:
  void Routes();

  ReviewStore& store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace cipkit

#endif  // CIPKIT_ANNOTATE_SERVER_H_
