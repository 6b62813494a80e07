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

#ifndef KGMIA_MODEL_IO_H_
#define KGMIA_MODEL_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "kgmia/kge_model.h"

namespace kgmia {

// Binary model file, all integers and floats little-endian:
//
//   offset  size  field
//   0       4     magic "KGEM"
//   4       2     format version (u16, currently 1)
//   6       1     kind tag (0 TransE, 1 TransH, 2 DistMult, 3 ComplEx)
//   7       1     norm tag (0 L1, 1 L2)
//   8       4     dim (u32)
//   12      4     |E| (u32)
//   16      4     |R| (u32)
//   20      ...   float32 blocks, row-major:
//                   entity      |E| x dim
//                   relation    |R| x dim
//                   normal      |R| x dim   (TransH only)
//                   entity_im   |E| x dim   (ComplEx only)
//                   relation_im |R| x dim   (ComplEx only)
//   end-4   4     CRC-32 (IEEE) of every preceding byte
inline constexpr char kModelMagic[4] = {'K', 'G', 'E', 'M'};
inline constexpr uint16_t kModelFormatVersion = 1;
inline constexpr size_t kModelHeaderSize = 20;

std::string SerializeModel(const KgeModel& model);
absl::StatusOr<KgeModel> DeserializeModel(std::string_view bytes);

absl::Status SaveModel(const KgeModel& model, const std::string& path);
absl::StatusOr<KgeModel> LoadModel(const std::string& path);

}  // namespace kgmia

#endif  // KGMIA_MODEL_IO_H_
