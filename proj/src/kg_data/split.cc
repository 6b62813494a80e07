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

#include "kgmia/split.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "kgmia/strings.h"
#include "json.hpp"
#include "kgmia/rng.h"
#include "kgmia/status_macros.h"

namespace kgmia {
namespace {

using nlohmann::json;

std::string JoinPath(const std::string& dir, std::string_view name) {
  return (std::filesystem::path(dir) / std::string(name)).string();
}

absl::StatusOr<std::vector<Triple>> ResolveTriples(const TripleStore& store,
                                                   std::string_view contents,
                                                   std::string_view source) {
  // Parse with a throwaway vocabulary, then map names onto `store`.
  KGMIA_ASSIGN_OR_RETURN(TripleStore part, ParseTsv(contents, source));
  std::vector<Triple> out;
  out.reserve(part.size());
  for (const Triple& t : part.triples()) {
    auto h = store.FindEntity(part.entity_vocab()[t.head]);
    auto r = store.FindRelation(part.relation_vocab()[t.relation]);
    auto tl = store.FindEntity(part.entity_vocab()[t.tail]);
    if (!h || !r || !tl) {
      return absl::FailedPreconditionError(
          StrCat(source, ": triple not in source vocabulary"));
    }
    out.push_back({*h, *r, *tl});
  }
  return out;
}

}  // namespace

absl::StatusOr<SplitPlan> MakeSplit(const TripleStore& store, uint64_t seed) {
  if (store.size() < 4) {
    return absl::InvalidArgumentError(StrCat(
        "split needs at least 4 triples, store has ", store.size()));
  }
  std::vector<Triple> shuffled = store.triples();
  Rng rng(seed);
  rng.Shuffle(std::span<Triple>(shuffled));

  const size_t n = shuffled.size();
  const size_t target_n = (n + 1) / 2;
  const size_t shadow_n = n - target_n;
  const size_t target_train_n = (target_n + 1) / 2;
  const size_t shadow_train_n = (shadow_n + 1) / 2;

  auto it = shuffled.begin();
  SplitPlan plan;
  plan.seed = seed;
  plan.target_train.assign(it, it + target_train_n);
  it += target_train_n;
  plan.target_test.assign(it, it + (target_n - target_train_n));
  it += target_n - target_train_n;
  plan.shadow_train.assign(it, it + shadow_train_n);
  it += shadow_train_n;
  plan.shadow_test.assign(it, shuffled.end());
  return plan;
}

absl::StatusOr<const std::vector<Triple>*> SplitPart(const SplitPlan& plan,
                                                     std::string_view name) {
  if (name == "target_train") return &plan.target_train;
  if (name == "target_test") return &plan.target_test;
  if (name == "shadow_train") return &plan.shadow_train;
  if (name == "shadow_test") return &plan.shadow_test;
  return absl::InvalidArgumentError(StrCat("unknown split part: ", name));
}

std::vector<Triple> SampleFraction(std::span<const Triple> triples,
                                   double fraction, uint64_t seed) {
  std::vector<Triple> copy(triples.begin(), triples.end());
  Rng rng(seed);
  rng.Shuffle(std::span<Triple>(copy));
  size_t k = static_cast<size_t>(std::llround(fraction * copy.size()));
  k = std::clamp<size_t>(k, std::min<size_t>(1, copy.size()), copy.size());
  copy.resize(k);
  return copy;
}

std::vector<Triple> DownSample(std::span<const Triple> triples, size_t count,
                               uint64_t seed) {
  if (triples.size() <= count) return {triples.begin(), triples.end()};
  // Choose which indices survive, then keep them in input order.
  std::vector<size_t> idx(triples.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  rng.Shuffle(std::span<size_t>(idx));
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  std::vector<Triple> out;
  out.reserve(count);
  for (size_t i : idx) out.push_back(triples[i]);
  return out;
}

absl::Status WriteSplitDir(const TripleStore& store, const SplitPlan& plan,
                           const std::string& source_path,
                           const std::string& out_dir, bool presplit) {
  KGMIA_ASSIGN_OR_RETURN(std::string source, ReadFileToString(source_path));
  const std::array<const std::vector<Triple>*, 4> parts = {
      &plan.target_train, &plan.target_test, &plan.shadow_train,
      &plan.shadow_test};
  json manifest;
  manifest["seed"] = plan.seed;
  manifest["source"] = std::filesystem::absolute(source_path).string();
  manifest["source_crc32"] = fmt::format("{:08x}", Crc32(source));
  manifest["presplit"] = presplit;
  json sizes = json::object();
  for (size_t i = 0; i < parts.size(); ++i) {
    KGMIA_RETURN_IF_ERROR(WriteTsv(
        store, *parts[i], JoinPath(out_dir, StrCat(kSplitPartNames[i], ".tsv"))));
    sizes[kSplitPartNames[i]] = parts[i]->size();
  }
  manifest["sizes"] = sizes;
  return WriteStringToFile(JoinPath(out_dir, "split_manifest.json"),
                           manifest.dump(2) + "\n");
}

absl::StatusOr<LoadedSplit> LoadSplitDir(const std::string& dir) {
  const std::string manifest_path = JoinPath(dir, "split_manifest.json");
  KGMIA_ASSIGN_OR_RETURN(std::string text, ReadFileToString(manifest_path));
  json manifest = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (manifest.is_discarded() || !manifest.contains("seed") ||
      !manifest.contains("source") || !manifest.contains("source_crc32") ||
      !manifest["seed"].is_number_unsigned() ||
      !manifest["source"].is_string() ||
      !manifest["source_crc32"].is_string()) {
    return absl::DataLossError(
        StrCat(manifest_path, ": malformed split manifest"));
  }
  LoadedSplit out;
  out.manifest.seed = manifest["seed"].get<uint64_t>();
  out.manifest.source_path = manifest["source"].get<std::string>();
  out.manifest.presplit = manifest.value("presplit", false);
  const std::string crc_text = manifest["source_crc32"].get<std::string>();

  KGMIA_ASSIGN_OR_RETURN(std::string source,
                         ReadFileToString(out.manifest.source_path));
  out.manifest.source_crc32 = Crc32(source);
  if (fmt::format("{:08x}", out.manifest.source_crc32) != crc_text) {
    return absl::DataLossError(StrCat(
        "source file ", out.manifest.source_path,
        " changed since the split was written (crc32 mismatch)"));
  }
  KGMIA_ASSIGN_OR_RETURN(out.store, ParseTsv(source, out.manifest.source_path));

  out.plan.seed = out.manifest.seed;
  std::array<std::vector<Triple>*, 4> parts = {
      &out.plan.target_train, &out.plan.target_test, &out.plan.shadow_train,
      &out.plan.shadow_test};
  for (size_t i = 0; i < parts.size(); ++i) {
    const std::string path =
        JoinPath(dir, StrCat(kSplitPartNames[i], ".tsv"));
    KGMIA_ASSIGN_OR_RETURN(std::string contents, ReadFileToString(path));
    KGMIA_ASSIGN_OR_RETURN(*parts[i], ResolveTriples(out.store, contents, path));
    out.manifest.sizes[i] = parts[i]->size();
  }
  return out;
}

absl::StatusOr<LoadedSplit> ImportPreSplit(
    const std::array<std::string, 4>& part_paths, const std::string& out_dir) {
  KGMIA_ASSIGN_OR_RETURN(MultiFileLoad load, LoadTsvParts(part_paths));
  for (size_t i = 0; i < load.parts.size(); ++i) {
    if (load.parts[i].empty()) {
      return absl::InvalidArgumentError(
          StrCat(part_paths[i], ": part has no new triples"));
    }
  }
  const std::string source_path = JoinPath(out_dir, "source.tsv");
  KGMIA_RETURN_IF_ERROR(WriteTsv(load.store, load.store.triples(), source_path));
  SplitPlan plan;
  plan.target_train = std::move(load.parts[0]);
  plan.target_test = std::move(load.parts[1]);
  plan.shadow_train = std::move(load.parts[2]);
  plan.shadow_test = std::move(load.parts[3]);
  KGMIA_RETURN_IF_ERROR(
      WriteSplitDir(load.store, plan, source_path, out_dir, /*presplit=*/true));
  return LoadSplitDir(out_dir);
}

}  // namespace kgmia
