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

#ifndef KGMIA_SHADOW_H_
#define KGMIA_SHADOW_H_

#include <span>

#include "absl/status/statusor.h"
#include "kgmia/oracle.h"
#include "kgmia/trainer.h"
#include "kgmia/triple_store.h"

namespace kgmia {

// Trains a shadow model on the adversary's own triples with the declared
// target configuration and wraps it in an oracle of its own.
absl::StatusOr<TargetOracle> TrainShadow(std::span<const Triple> shadow_train,
                                         VocabSizes vocab,
                                         const TrainConfig& config);

}  // namespace kgmia

#endif  // KGMIA_SHADOW_H_
