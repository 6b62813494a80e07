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

#ifndef KGMIA_TRAINER_H_
#define KGMIA_TRAINER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/kge_model.h"
#include "kgmia/triple_store.h"

namespace kgmia {

struct TrainConfig {
  ModelKind model = ModelKind::kTransE;
  NormKind norm = NormKind::kL1;
  LossKind loss = LossKind::kMargin;
  uint32_t epochs = 100;
  uint32_t dim = 50;
  double learning_rate = 0.5;
  double margin = 4.0;  // margin loss only
  uint32_t negatives_per_positive = 1;
  uint32_t batch_size = 100;
  uint64_t seed = 0;
  bool filtered_negatives = false;
  bool corrupt_relations = false;
  // More than one job trains with lock-free shared updates and gives up
  // determinism.
  uint32_t jobs = 1;

  absl::Status Validate() const;
  // Canonical "key=value" lines, used for fingerprints.
  std::string Canonical() const;
};

// Native loss per model, lr 0.5 (margin) / 0.05 (logistic), margin 4, L1.
TrainConfig DefaultTrainConfig(ModelKind kind);

struct TrainResult {
  KgeModel model;
  // Mean pair loss of every epoch, in order.
  std::vector<double> epoch_loss;
  bool deterministic = true;
  uint64_t negative_fallbacks = 0;
};

// Called after every optimizer step in single-job mode.
using StepObserver =
    std::function<void(const KgeModel&, uint32_t epoch, uint32_t batch)>;

struct TrainOptions {
  // Known true triples, rejected when filtered_negatives is set.
  const TripleSet* known_triples = nullptr;
  StepObserver on_step;
};

// The model before any update: uniform(-6/sqrt(dim), 6/sqrt(dim)) under the
// seed, relation rows of translation models and TransH normals rescaled to
// unit L2 norm.
absl::StatusOr<KgeModel> InitializeModel(const TrainConfig& config,
                                         VocabSizes vocab);

// Mini-batch SGD. Every positive is paired with negatives_per_positive
// corruptions; the batch gradient is the mean over pairs. Batch order is
// reshuffled every epoch and the short last batch is kept. TransH normals are
// renormalized after each step and translation-model entity rows are
// projected onto the unit ball after each epoch.
absl::StatusOr<TrainResult> Train(std::span<const Triple> triples,
                                  VocabSizes vocab, const TrainConfig& config,
                                  const TrainOptions& options = {});

}  // namespace kgmia

#endif  // KGMIA_TRAINER_H_
