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

#include "kgmia/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "kgmia/rng.h"
#include "kgmia/strings.h"

namespace kgmia {

absl::StatusOr<TripleStore> GenerateSyntheticKg(const SyntheticConfig& config) {
  if (config.entities < 2 || config.relations < 1 || config.triples < 1) {
    return absl::InvalidArgumentError(
        "synthetic KG needs at least 2 entities, 1 relation and 1 triple");
  }
  if (!(config.zipf_exponent >= 0) || !std::isfinite(config.zipf_exponent)) {
    return absl::InvalidArgumentError("zipf exponent must be finite and >= 0");
  }
  const double capacity = static_cast<double>(config.entities) *
                          (config.entities - 1.0) * config.relations;
  // Keep the rejection loop cheap.
  if (static_cast<double>(config.triples) > 0.5 * capacity) {
    return absl::InvalidArgumentError(StrCat(
        "requested ", config.triples, " triples but only ",
        static_cast<uint64_t>(capacity), " distinct non-loop triples exist; ",
        "ask for at most half of that"));
  }

  Rng rng(config.seed);
  std::vector<uint32_t> rank_to_entity(config.entities);
  std::iota(rank_to_entity.begin(), rank_to_entity.end(), 0u);
  rng.Shuffle(std::span<uint32_t>(rank_to_entity));

  std::vector<double> cdf(config.entities);
  double total = 0.0;
  for (uint32_t r = 0; r < config.entities; ++r) {
    total += std::pow(static_cast<double>(r + 1), -config.zipf_exponent);
    cdf[r] = total;
  }
  for (double& c : cdf) c /= total;
  auto draw_entity = [&]() -> uint32_t {
    const double u = rng.UniformDouble();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const size_t rank =
        std::min<size_t>(static_cast<size_t>(it - cdf.begin()), cdf.size() - 1);
    return rank_to_entity[rank];
  };

  std::vector<std::string> entity_names(config.entities);
  for (uint32_t e = 0; e < config.entities; ++e) entity_names[e] = StrCat("e", e);
  std::vector<std::string> relation_names(config.relations);
  for (uint32_t r = 0; r < config.relations; ++r) {
    relation_names[r] = StrCat("r", r);
  }
  TripleSet seen;
  std::vector<Triple> triples;
  triples.reserve(config.triples);
  const uint64_t max_draws = 1000 * config.triples;
  uint64_t draws = 0;
  while (triples.size() < config.triples) {
    if (++draws > max_draws) {
      return absl::ResourceExhaustedError(
          "synthetic generator could not find enough distinct triples; "
          "lower the zipf exponent or the triple count");
    }
    Triple t;
    t.head = draw_entity();
    t.relation = static_cast<uint32_t>(rng.UniformInt(config.relations));
    t.tail = draw_entity();
    if (t.head == t.tail) continue;
    if (!seen.insert(t).second) continue;
    triples.push_back(t);
  }
  return TripleStore::Create(std::move(entity_names), std::move(relation_names),
                             std::move(triples));
}

}  // namespace kgmia
