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

#include "cipkit/annotate_server.h"

#include <charconv>
#include <optional>

#include "httplib.h"

namespace cipkit {

using json = nlohmann::json;

namespace {

constexpr std::size_t kDefaultPageSize = 50;

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void ReplyError(httplib::Response& res, int status, const std::string& what) {
  Reply(res, status, json{{"error", what}});
}

json PairJson(const CipPair& pair) {
  json out = ToJson(pair);
  out["version"] = pair.version;
  return out;
}

std::optional<std::size_t> ParseCount(const std::string& text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

// Parses a JSON object body; on failure answers 400 and returns nullopt.
std::optional<json> ParseBody(const httplib::Request& req,
                              httplib::Response& res) {
  try {
    json body = json::parse(req.body);
    if (body.is_object()) return body;
  } catch (const json::parse_error&) {
  }
  ReplyError(res, 400, "request body must be a JSON object");
  return std::nullopt;
}

// Runs a store mutation and maps its errors onto status codes.
template <typename Fn>
void Mutate(httplib::Response& res, Fn&& fn) {
  try {
    Reply(res, 200, PairJson(fn()));
  } catch (const NotFoundError& e) {
    ReplyError(res, 404, e.what());
  } catch (const ConflictError& e) {
    Reply(res, 409, json{{"error", e.what()}, {"current", PairJson(e.current())}});
  } catch (const RejectedError& e) {
    Reply(res, 422, json{{"error", e.what()},
                         {"idioms", OccurrencesToJson(e.idioms())}});
  } catch (const ValidationError& e) {
    ReplyError(res, 400, e.what());
  } catch (const IoError& e) {
    ReplyError(res, 500, e.what());
  }
}

std::optional<std::uint64_t> OptionalVersion(const json& body) {
  if (!body.contains("version") || body["version"].is_null()) {
    return std::nullopt;
  }
  if (!body["version"].is_number_unsigned()) {
    throw ValidationError("version must be a non-negative integer");
  }
  return body["version"].get<std::uint64_t>();
}

std::string StringField(const json& body, const char* key, bool required) {
  if (!body.contains(key)) {
    if (required) throw ValidationError(std::string("missing field '") + key + "'");
    return {};
  }
  if (!body[key].is_string()) {
    throw ValidationError(std::string("field '") + key + "' must be a string");
  }
  return body[key].get<std::string>();
}

}  // namespace

AnnotateServer::AnnotateServer(ReviewStore& store,
                               std::filesystem::path static_dir)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
  Routes();
  if (!static_dir.empty()) server_->set_mount_point("/", static_dir.string());
}

AnnotateServer::~AnnotateServer() { Stop(); }

void AnnotateServer::Routes() {
  server_->Get("/api/pairs", [this](const httplib::Request& req,
                                    httplib::Response& res) {
    std::size_t offset = 0;
    std::size_t limit = kDefaultPageSize;
    if (req.has_param("offset")) {
      const auto v = ParseCount(req.get_param_value("offset"));
      if (!v) return ReplyError(res, 400, "offset must be a non-negative integer");
      offset = *v;
    }
    if (req.has_param("limit")) {
      const auto v = ParseCount(req.get_param_value("limit"));
      if (!v) return ReplyError(res, 400, "limit must be a non-negative integer");
      limit = *v;
    }
    try {
      const auto page =
          store_.List(req.get_param_value("status"), offset, limit);
      json pairs = json::array();
      for (const auto& p : page.pairs) pairs.push_back(PairJson(p));
      Reply(res, 200, json{{"pairs", std::move(pairs)}, {"total", page.total}});
    } catch (const ValidationError& e) {
      ReplyError(res, 400, e.what());
    }
  });

  server_->Get(R"(/api/pairs/([^/]+))", [this](const httplib::Request& req,
                                               httplib::Response& res) {
    try {
      Reply(res, 200, PairJson(store_.Get(req.matches[1].str())));
    } catch (const NotFoundError& e) {
      ReplyError(res, 404, e.what());
    }
  });

  server_->Post(R"(/api/pairs/([^/]+)/revision)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  const auto body = ParseBody(req, res);
                  if (!body) return;
                  Mutate(res, [&] {
                    bool force = false;
                    if (body->contains("force")) {
                      if (!(*body)["force"].is_boolean()) {
                        throw ValidationError("force must be a boolean");
                      }
                      force = (*body)["force"].get<bool>();
                    }
                    return store_.SubmitRevision(
                        req.matches[1].str(), StringField(*body, "target", true),
                        StringField(*body, "annotator", false),
                        OptionalVersion(*body), force);
                  });
                });

  server_->Post(R"(/api/pairs/([^/]+)/approve)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  const auto body = ParseBody(req, res);
                  if (!body) return;
                  Mutate(res, [&] {
                    return store_.Approve(req.matches[1].str(),
                                          StringField(*body, "annotator", false),
                                          OptionalVersion(*body));
                  });
                });

  server_->Get("/api/stats", [this](const httplib::Request&,
                                    httplib::Response& res) {
    Reply(res, 200, json(store_.StatusCounts()));
  });

  server_->Get("/api/lexicon/check", [this](const httplib::Request& req,
                                            httplib::Response& res) {
    try {
      const auto idioms =
          DetectIdioms(req.get_param_value("text"), store_.lexicon());
      Reply(res, 200, json{{"idioms", OccurrencesToJson(idioms)}});
    } catch (const ValidationError& e) {
      ReplyError(res, 400, e.what());
    }
  });
}

int AnnotateServer::Bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host)
                              : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void AnnotateServer::Serve() { server_->listen_after_bind(); }

void AnnotateServer::Stop() {
  if (server_) server_->stop();
}

bool AnnotateServer::running() const { return server_->is_running(); }

}  // namespace cipkit
