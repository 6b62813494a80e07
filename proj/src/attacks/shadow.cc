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

#include "kgmia/shadow.h"

#include <utility>

#include "kgmia/kge_model.h"
#include "kgmia/status_macros.h"

namespace kgmia {

absl::StatusOr<TargetOracle> TrainShadow(std::span<const Triple> shadow_train,
                                         VocabSizes vocab,
                                         const TrainConfig& config) {
  KGMIA_ASSIGN_OR_RETURN(TrainResult result,
                         Train(shadow_train, vocab, config));
  return TargetOracle::FromModel(std::move(result.model));
}

}  // namespace kgmia
