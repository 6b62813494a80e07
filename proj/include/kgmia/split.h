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

#ifndef KGMIA_SPLIT_H_
#define KGMIA_SPLIT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/triple_store.h"

namespace kgmia {

// Target/shadow halves of a KG, each halved again into train/test.
struct SplitPlan {
  uint64_t seed = 0;
  std::vector<Triple> target_train;
  std::vector<Triple> target_test;
  std::vector<Triple> shadow_train;
  std::vector<Triple> shadow_test;

  friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

inline constexpr std::array<const char*, 4> kSplitPartNames = {
    "target_train", "target_test", "shadow_train", "shadow_test"};

// Shuffles the store's triples under `seed`; the first ceil(n/2) go to the
// target half and the rest to the shadow half. Each half gives its first
// ceil(m/2) triples to train. Requires at least 4 triples.
absl::StatusOr<SplitPlan> MakeSplit(const TripleStore& store, uint64_t seed);

// Part by name (see kSplitPartNames).
absl::StatusOr<const std::vector<Triple>*> SplitPart(const SplitPlan& plan,
                                                     std::string_view name);

// Seeded sample of round(fraction * n) triples (at least one), in shuffled
// order. The input is left untouched.
std::vector<Triple> SampleFraction(std::span<const Triple> triples,
                                   double fraction, uint64_t seed);

// Seeded down-sample to `count` items; returns the input order unchanged when
// it is already small enough.
std::vector<Triple> DownSample(std::span<const Triple> triples, size_t count,
                               uint64_t seed);

// On-disk split: four string TSV files plus split_manifest.json holding the
// seed, the part sizes, the source file path and its CRC-32.
struct SplitManifest {
  uint64_t seed = 0;
  std::string source_path;
  uint32_t source_crc32 = 0;
  std::array<size_t, 4> sizes{};
  bool presplit = false;
};

absl::Status WriteSplitDir(const TripleStore& store, const SplitPlan& plan,
                           const std::string& source_path,
                           const std::string& out_dir, bool presplit = false);

struct LoadedSplit {
  TripleStore store;
  SplitPlan plan;
  SplitManifest manifest;
};

// Reloads a split directory. The source file named by the manifest provides
// the vocabularies, and its checksum must match.
absl::StatusOr<LoadedSplit> LoadSplitDir(const std::string& dir);

// Imports user-supplied pre-split files (target_train, target_test,
// shadow_train, shadow_test order). The merged triples are written to
// `out_dir`/source.tsv and the split directory is created from them.
absl::StatusOr<LoadedSplit> ImportPreSplit(
    const std::array<std::string, 4>& part_paths, const std::string& out_dir);

}  // namespace kgmia

#endif  // KGMIA_SPLIT_H_
