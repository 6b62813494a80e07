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

#include "kgmia/triple_store.h"

#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kgmia/strings.h"
#include "kgmia/status_macros.h"

namespace kgmia {

absl::StatusOr<TripleStore> TripleStore::Create(
    std::vector<std::string> entity_vocab,
    std::vector<std::string> relation_vocab, std::vector<Triple> triples) {
  TripleStore store;
  store.entities_ = std::move(entity_vocab);
  store.relations_ = std::move(relation_vocab);
  for (size_t i = 0; i < store.entities_.size(); ++i) {
    if (!store.entity_ids_.emplace(store.entities_[i], i).second) {
      return absl::InvalidArgumentError(
          StrCat("duplicate entity name: ", store.entities_[i]));
    }
  }
  for (size_t i = 0; i < store.relations_.size(); ++i) {
    if (!store.relation_ids_.emplace(store.relations_[i], i).second) {
      return absl::InvalidArgumentError(
          StrCat("duplicate relation name: ", store.relations_[i]));
    }
  }
  store.triples_.reserve(triples.size());
  for (const Triple& t : triples) {
    if (!store.IsValid(t)) {
      return absl::OutOfRangeError(StrCat(
          "triple (", t.head, ",", t.relation, ",", t.tail,
          ") outside vocabularies of size ", store.num_entities(), "/",
          store.num_relations()));
    }
    if (store.index_.insert(t).second) {
      store.triples_.push_back(t);
    } else {
      ++store.duplicates_dropped_;
    }
  }
  return store;
}

std::optional<EntityId> TripleStore::FindEntity(std::string_view name) const {
  auto it = entity_ids_.find(std::string(name));
  if (it == entity_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationId> TripleStore::FindRelation(
    std::string_view name) const {
  auto it = relation_ids_.find(std::string(name));
  if (it == relation_ids_.end()) return std::nullopt;
  return it->second;
}

EntityId TripleStore::Builder::InternEntity(std::string_view name) {
  auto [it, inserted] = store_.entity_ids_.try_emplace(
      std::string(name), static_cast<EntityId>(store_.entities_.size()));
  if (inserted) store_.entities_.emplace_back(name);
  return it->second;
}

RelationId TripleStore::Builder::InternRelation(std::string_view name) {
  auto [it, inserted] = store_.relation_ids_.try_emplace(
      std::string(name), static_cast<RelationId>(store_.relations_.size()));
  if (inserted) store_.relations_.emplace_back(name);
  return it->second;
}

std::pair<Triple, bool> TripleStore::Builder::Add(std::string_view head,
                                                  std::string_view relation,
                                                  std::string_view tail) {
  Triple t;
  t.head = InternEntity(head);
  t.relation = InternRelation(relation);
  t.tail = InternEntity(tail);
  if (store_.index_.insert(t).second) {
    store_.triples_.push_back(t);
    return {t, true};
  }
  ++store_.duplicates_dropped_;
  return {t, false};
}

TripleStore TripleStore::Builder::Build() && { return std::move(store_); }

namespace {

// Feeds every non-blank line of `contents` to `builder`; `on_triple` receives
// each interned triple and whether it was new.
template <typename Fn>
absl::Status ParseInto(std::string_view contents, std::string_view source,
                       TripleStore::Builder& builder, Fn on_triple) {
  size_t line_no = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() != 3) {
      return absl::InvalidArgumentError(
          StrCat(source, ":", line_no, ": expected 3 tab-separated ",
                       "fields, got ", fields.size()));
    }
    for (std::string_view f : fields) {
      if (f.empty()) {
        return absl::InvalidArgumentError(
            StrCat(source, ":", line_no, ": empty field"));
      }
    }
    auto [triple, inserted] = builder.Add(fields[0], fields[1], fields[2]);
    on_triple(triple, inserted);
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<TripleStore> ParseTsv(std::string_view contents,
                                     std::string_view source) {
  TripleStore::Builder builder;
  KGMIA_RETURN_IF_ERROR(
      ParseInto(contents, source, builder, [](const Triple&, bool) {}));
  TripleStore store = std::move(builder).Build();
  if (store.size() == 0) {
    return absl::InvalidArgumentError(
        StrCat(source, ": no triples found"));
  }
  return store;
}

absl::StatusOr<TripleStore> LoadTsv(const std::string& path) {
  KGMIA_ASSIGN_OR_RETURN(std::string contents, ReadFileToString(path));
  return ParseTsv(contents, path);
}

absl::StatusOr<MultiFileLoad> LoadTsvParts(std::span<const std::string> paths) {
  TripleStore::Builder builder;
  MultiFileLoad result;
  for (const std::string& path : paths) {
    KGMIA_ASSIGN_OR_RETURN(std::string contents, ReadFileToString(path));
    std::vector<Triple>& part = result.parts.emplace_back();
    KGMIA_RETURN_IF_ERROR(ParseInto(contents, path, builder,
                                    [&part](const Triple& t, bool inserted) {
                                      if (inserted) part.push_back(t);
                                    }));
  }
  result.store = std::move(builder).Build();
  if (result.store.size() == 0) {
    return absl::InvalidArgumentError("no triples found in any part");
  }
  return result;
}

std::string FormatTsv(const TripleStore& store,
                      std::span<const Triple> triples) {
  std::string out;
  for (const Triple& t : triples) {
    out += store.entity_vocab()[t.head];
    out += '\t';
    out += store.relation_vocab()[t.relation];
    out += '\t';
    out += store.entity_vocab()[t.tail];
    out += '\n';
  }
  return out;
}

absl::Status WriteTsv(const TripleStore& store, std::span<const Triple> triples,
                      const std::string& path) {
  return WriteStringToFile(path, FormatTsv(store, triples));
}

absl::StatusOr<std::string> ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return absl::DataLossError(StrCat("read failed: ", path));
  return std::move(buf).str();
}

absl::Status WriteStringToFile(const std::string& path, std::string_view data) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(StrCat("cannot write ", path));
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) return absl::DataLossError(StrCat("write failed: ", path));
  return absl::OkStatus();
}

uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for large inputs.
  const char* p = bytes.data();
  size_t left = bytes.size();
  while (left > 0) {
    const uInt chunk = static_cast<uInt>(std::min<size_t>(left, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(p), chunk);
    p += chunk;
    left -= chunk;
  }
  return static_cast<uint32_t>(crc);
}

}  // namespace kgmia
