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

#ifndef CIPKIT_CLI_H_
#define CIPKIT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace cipkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Environment variable holding the default --translator descriptor.
inline constexpr const char* kTranslatorEnv = "CIPKIT_TRANSLATOR";

// Runs one invocation. `args` excludes the program name. Data goes to
// `out` (when no output file is given), diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace cipkit::cli

#endif  // CIPKIT_CLI_H_
