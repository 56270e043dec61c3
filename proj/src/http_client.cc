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

#include "cipkit/http_client.h"

#include "cipkit/error.h"
#include "httplib.h"

namespace cipkit {

using json = nlohmann::json;

HttpEndpoint ParseHttpUrl(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (url.substr(0, kScheme.size()) != kScheme) {
    throw ValidationError("only http:// endpoints are supported: '" +
                          std::string(url) + "'");
  }
  const std::size_t slash = url.find('/', kScheme.size());
  HttpEndpoint endpoint;
  if (slash == std::string_view::npos) {
    endpoint.scheme_host_port = std::string(url);
    endpoint.path = "/";
  } else {
    endpoint.scheme_host_port = std::string(url.substr(0, slash));
    endpoint.path = std::string(url.substr(slash));
  }
  if (endpoint.scheme_host_port.size() == kScheme.size()) {
    throw ValidationError("missing host in '" + std::string(url) + "'");
  }
  return endpoint;
}

json PostJson(const HttpEndpoint& endpoint, const json& body,
              std::chrono::seconds timeout) {
  httplib::Client client(endpoint.scheme_host_port);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  const auto response =
      client.Post(endpoint.path, body.dump(), "application/json; charset=utf-8");
  const std::string where = endpoint.scheme_host_port + endpoint.path;
  if (!response) {
    throw RemoteError(where + ": " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw RemoteError(where + ": HTTP " + std::to_string(response->status));
  }
  try {
    return json::parse(response->body);
  } catch (const json::parse_error& e) {
    throw RemoteError(where + ": malformed response body: " + e.what());
  }
}

std::string PostTextField(const HttpEndpoint& endpoint, std::string_view text,
                          std::string_view field,
                          std::chrono::seconds timeout) {
  const json reply = PostJson(endpoint, json{{"text", std::string(text)}},
                              timeout);
  const std::string key(field);
  if (!reply.is_object() || !reply.contains(key) || !reply[key].is_string()) {
    throw RemoteError(endpoint.scheme_host_port + endpoint.path +
                      ": response lacks string field '" + key + "'");
  }
  return reply[key].get<std::string>();
}

}  // namespace cipkit
