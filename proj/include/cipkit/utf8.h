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

#ifndef CIPKIT_UTF8_H_
#define CIPKIT_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace cipkit::utf8 {

// Decodes UTF-8 into Unicode scalar values. Throws DecodeError naming the
// byte offset of the first ill-formed sequence (overlong forms, surrogates
// and values above U+10FFFF are rejected).
std::u32string Decode(std::string_view text);

std::string Encode(std::u32string_view scalars);
void Append(char32_t scalar, std::string* out);

// Number of scalar values; input must be valid UTF-8.
std::size_t Length(std::string_view text);

// Byte offset of scalar index `index` in valid UTF-8 `text`. `index` may
// equal Length(text).
std::size_t ByteOffset(std::string_view text, std::size_t index);

bool IsWhitespace(char32_t c);
bool IsControl(char32_t c);
// ASCII letters/digits and the Latin-1 / Latin Extended-A/B letters.
bool IsLatinAlnum(char32_t c);

// Removes leading and trailing whitespace (Unicode-aware). Throws
// DecodeError on invalid input.
std::string_view Trim(std::string_view text);

}  // namespace cipkit::utf8

#endif  // CIPKIT_UTF8_H_
