// Copyright 2026 The KGMIA Authors
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

#ifndef KGMIA_STRINGS_H_
#define KGMIA_STRINGS_H_

#include <charconv>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "fmt/format.h"

namespace kgmia {

template <typename... Args>
std::string StrCat(const Args&... args) {
  std::string out;
  (fmt::format_to(std::back_inserter(out), "{}", args), ...);
  return out;
}

// Splits on every occurrence of `sep`; empty pieces are kept unless
// `skip_empty` is set.
std::vector<std::string_view> Split(std::string_view text, char sep,
                                    bool skip_empty = false);

std::string AsciiToLower(std::string_view text);

bool ParseDouble(std::string_view text, double* out);
bool ParseUint32(std::string_view text, uint32_t* out);
bool ParseUint64(std::string_view text, uint64_t* out);

}  // namespace kgmia

#endif  // KGMIA_STRINGS_H_
