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

#ifndef KGMIA_TRIPLE_STORE_H_
#define KGMIA_TRIPLE_STORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace kgmia {

using EntityId = uint32_t;
using RelationId = uint32_t;

struct Triple {
  EntityId head = 0;
  RelationId relation = 0;
  EntityId tail = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const Triple& t) {
    return H::combine(std::move(h), t.head, t.relation, t.tail);
  }
};

struct VocabSizes {
  uint32_t num_entities = 0;
  uint32_t num_relations = 0;
};

using TripleSet = absl::flat_hash_set<Triple>;

// Immutable after construction; safe for concurrent reads.
class TripleStore {
 public:
  class Builder;

  TripleStore() = default;

  // Validates ids against the vocabularies and drops duplicate triples.
  static absl::StatusOr<TripleStore> Create(
      std::vector<std::string> entity_vocab,
      std::vector<std::string> relation_vocab, std::vector<Triple> triples);

  const std::vector<std::string>& entity_vocab() const { return entities_; }
  const std::vector<std::string>& relation_vocab() const { return relations_; }
  const std::vector<Triple>& triples() const { return triples_; }
  const TripleSet& membership_index() const { return index_; }

  uint32_t num_entities() const { return static_cast<uint32_t>(entities_.size()); }
  uint32_t num_relations() const {
    return static_cast<uint32_t>(relations_.size());
  }
  VocabSizes vocab_sizes() const { return {num_entities(), num_relations()}; }
  size_t size() const { return triples_.size(); }

  // Number of duplicate input lines dropped while loading.
  size_t duplicates_dropped() const { return duplicates_dropped_; }

  bool Contains(const Triple& t) const { return index_.contains(t); }
  bool IsValid(const Triple& t) const {
    return t.head < num_entities() && t.tail < num_entities() &&
           t.relation < num_relations();
  }

  std::optional<EntityId> FindEntity(std::string_view name) const;
  std::optional<RelationId> FindRelation(std::string_view name) const;

 private:
  std::vector<std::string> entities_;
  std::vector<std::string> relations_;
  absl::flat_hash_map<std::string, EntityId> entity_ids_;
  absl::flat_hash_map<std::string, RelationId> relation_ids_;
  std::vector<Triple> triples_;
  TripleSet index_;
  size_t duplicates_dropped_ = 0;
};

// Interns strings in first-appearance order.
class TripleStore::Builder {
 public:
  // Returns the interned triple and whether it was new.
  std::pair<Triple, bool> Add(std::string_view head, std::string_view relation,
                              std::string_view tail);
  TripleStore Build() &&;

 private:
  EntityId InternEntity(std::string_view name);
  RelationId InternRelation(std::string_view name);

  TripleStore store_;
};

// Parses "head<TAB>relation<TAB>tail" lines. Blank lines are skipped and a
// trailing '\r' is tolerated. `source` names the input in error messages.
absl::StatusOr<TripleStore> ParseTsv(std::string_view contents,
                                     std::string_view source = "<input>");
absl::StatusOr<TripleStore> LoadTsv(const std::string& path);

// Loads several files into one shared vocabulary. The returned parts hold
// each file's triples (after global deduplication, first file wins).
struct MultiFileLoad {
  TripleStore store;
  std::vector<std::vector<Triple>> parts;
};
absl::StatusOr<MultiFileLoad> LoadTsvParts(std::span<const std::string> paths);

// Writes triples as string TSV using the store's vocabularies.
std::string FormatTsv(const TripleStore& store, std::span<const Triple> triples);
absl::Status WriteTsv(const TripleStore& store, std::span<const Triple> triples,
                      const std::string& path);

absl::StatusOr<std::string> ReadFileToString(const std::string& path);
absl::Status WriteStringToFile(const std::string& path, std::string_view data);

// CRC-32 (IEEE) of a byte range.
uint32_t Crc32(std::string_view bytes);

}  // namespace kgmia

#endif  // KGMIA_TRIPLE_STORE_H_
