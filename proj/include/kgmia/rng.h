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

#ifndef KGMIA_RNG_H_
#define KGMIA_RNG_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace kgmia {

// Portable pseudo-random generator used for every randomized step (splits,
// corruption sampling, initialization, batch order), so that a seed produces
// the same results in any language that reproduces these few lines.
//
// State: one 64-bit word. Algorithm: SplitMix64.
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// Derived draws:
//   UniformInt(n):  limit = 2^64 - (2^64 mod n); draw until z < limit; z mod n
//   UniformDouble:  (z >> 11) * 2^-53, in [0, 1)
//   CoinFlip:       top bit of z
//   Shuffle:        Fisher-Yates from the back, j = UniformInt(i + 1)
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  double UniformDouble() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  double UniformDouble(double lo, double hi) {
    return lo + (hi - lo) * UniformDouble();
  }

  bool CoinFlip() { return (Next() >> 63) != 0; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(UniformInt(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  uint64_t state() const { return state_; }

  // UniformRandomBitGenerator surface.
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() {
    return std::numeric_limits<uint64_t>::max();
  }
  uint64_t operator()() { return Next(); }

 private:
  uint64_t state_;
};

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes);

// Mixes a seed with a tag into an independent child seed.
uint64_t DeriveSeed(uint64_t seed, std::string_view tag);
uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b);

}  // namespace kgmia

#endif  // KGMIA_RNG_H_
