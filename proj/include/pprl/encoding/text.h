// Copyright 2026 The PPRL-CBF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPRL_ENCODING_TEXT_H_
#define PPRL_ENCODING_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pprl {

// Decodes UTF-8 into Unicode scalar values. Malformed sequences decode to
// U+FFFD, one per offending byte.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

// Lowercases and strips leading/trailing whitespace. Applied to every QID
// value before gram extraction and to every blocking attribute.
std::string normalize_value(std::string_view value);

// All length-q substrings of `value` (in Unicode scalar values), in order and
// with repetitions. With `pad`, q-1 copies of '#' are prepended and q-1
// copies of '$' appended first. Values shorter than q yield nothing.
std::vector<std::string> extract_qgrams(std::string_view value, std::size_t q,
                                        bool pad);

}  // namespace pprl

#endif  // PPRL_ENCODING_TEXT_H_
