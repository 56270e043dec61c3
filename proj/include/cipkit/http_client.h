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

#ifndef CIPKIT_HTTP_CLIENT_H_
#define CIPKIT_HTTP_CLIENT_H_

#include <chrono>
#include <string>
#include <string_view>

#include "json.hpp"

namespace cipkit {

struct HttpEndpoint {
  std::string scheme_host_port;  // "http://host:port"
  std::string path;              // "/translate"
};

// Splits an http:// URL. Throws ValidationError for other schemes.
HttpEndpoint ParseHttpUrl(std::string_view url);

// POSTs `body` as JSON and returns the parsed response body. Anything but
// a 200 with a JSON body throws RemoteError.
nlohmann::json PostJson(const HttpEndpoint& endpoint,
                        const nlohmann::json& body,
                        std::chrono::seconds timeout = std::chrono::seconds(30));

// POSTs {"text": text} and returns the string under `field`.
std::string PostTextField(const HttpEndpoint& endpoint, std::string_view text,
                          std::string_view field,
                          std::chrono::seconds timeout);

}  // namespace cipkit

#endif  // CIPKIT_HTTP_CLIENT_H_
