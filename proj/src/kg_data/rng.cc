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

#include "kgmia/rng.h"

namespace kgmia {
namespace {

uint64_t Mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t Rng::UniformInt(uint64_t n) {
  // 2^64 mod n, computed without overflow.
  const uint64_t rem = (0 - n) % n;
  const uint64_t limit = 0 - rem;  // 2^64 - rem, wraps to 0 when rem == 0
  while (true) {
    const uint64_t z = Next();
    if (limit == 0 || z < limit) return z % n;
  }
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

uint64_t DeriveSeed(uint64_t seed, std::string_view tag) {
  return Mix(seed + 0x9E3779B97F4A7C15ULL * (Fnv1a64(tag) | 1));
}

uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b) {
  return Mix(Mix(seed ^ Mix(a + 0x9E3779B97F4A7C15ULL)) +
             Mix(b + 0x632BE59BD9B4E019ULL));
}

}  // namespace kgmia
