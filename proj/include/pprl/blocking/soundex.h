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

#ifndef PPRL_BLOCKING_SOUNDEX_H_
#define PPRL_BLOCKING_SOUNDEX_H_

#include <string>
#include <string_view>

namespace pprl {

// Code assigned to values without any letter a-z.
inline constexpr std::string_view kDegenerateSoundex = "Z000";

// American Soundex: first letter plus three digits, zero padded. Letters
// with the same code collapse when adjacent or separated only by 'h'/'w';
// vowels (and 'y') separate them. Case-insensitive; characters outside a-z
// are ignored.
std::string soundex(std::string_view name);

}  // namespace pprl

#endif  // PPRL_BLOCKING_SOUNDEX_H_
