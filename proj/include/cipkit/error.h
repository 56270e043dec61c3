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

#ifndef CIPKIT_ERROR_H_
#define CIPKIT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cipkit {

// Base of every error thrown by the library. The CLI maps subclasses onto
// exit codes: ValidationError -> 1, IoError / RemoteError -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data or a violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed UTF-8. `offset` is the byte offset of the first bad byte.
class DecodeError : public ValidationError {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : ValidationError(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A translator or paraphraser service failed or answered garbage.
class RemoteError : public Error {
 public:
  using Error::Error;
};

}  // namespace cipkit

#endif  // CIPKIT_ERROR_H_
