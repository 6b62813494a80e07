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

#ifndef KGMIA_TESTS_TEST_KG_H_
#define KGMIA_TESTS_TEST_KG_H_

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "kgmia/oracle.h"
#include "kgmia/rng.h"
#include "kgmia/triple_store.h"

namespace kgmia::testing {

// Scores come from a callback, for targets with hand-picked behavior.
class FunctionSource : public ScoreSource {
 public:
  FunctionSource(VocabSizes vocab, std::function<double(const Triple&)> fn)
      : vocab_(vocab), fn_(std::move(fn)) {}
  VocabSizes vocab_sizes() const override { return vocab_; }
  double Score(const Triple& t) const override { return fn_(t); }

 private:
  VocabSizes vocab_;
  std::function<double(const Triple&)> fn_;
};

inline TargetOracle OracleOf(VocabSizes vocab,
                             std::function<double(const Triple&)> fn) {
  return TargetOracle(std::make_shared<FunctionSource>(vocab, std::move(fn)));
}

// Stable pseudo-random value in [0, 1) per triple.
inline double HashUnit(const Triple& t) {
  Rng rng(DeriveSeed(t.head * 1000003ull + t.relation * 7919ull + t.tail,
                     "hash-unit"));
  return rng.UniformDouble();
}

// Distinct non-loop triples drawn uniformly.
inline std::vector<Triple> RandomTriples(VocabSizes vocab, size_t n,
                                         uint64_t seed) {
  Rng rng(seed);
  TripleSet seen;
  std::vector<Triple> out;
  while (out.size() < n) {
    Triple t{static_cast<EntityId>(rng.UniformInt(vocab.num_entities)),
             static_cast<RelationId>(rng.UniformInt(vocab.num_relations)),
             static_cast<EntityId>(rng.UniformInt(vocab.num_entities))};
    if (t.head == t.tail || !seen.insert(t).second) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace kgmia::testing

#endif  // KGMIA_TESTS_TEST_KG_H_
