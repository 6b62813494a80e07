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

#ifndef KGMIA_STATUS_MACROS_H_
#define KGMIA_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define KGMIA_RETURN_IF_ERROR(expr)                 \
  do {                                              \
    const ::absl::Status kgmia_status_ = (expr);    \
    if (!kgmia_status_.ok()) return kgmia_status_;  \
  } while (0)

#define KGMIA_STATUS_CONCAT_INNER_(a, b) a##b
#define KGMIA_STATUS_CONCAT_(a, b) KGMIA_STATUS_CONCAT_INNER_(a, b)

#define KGMIA_ASSIGN_OR_RETURN(lhs, rexpr) \
  KGMIA_ASSIGN_OR_RETURN_IMPL_(            \
      KGMIA_STATUS_CONCAT_(kgmia_statusor_, __LINE__), lhs, rexpr)

#define KGMIA_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                 \
  if (!statusor.ok()) return std::move(statusor).status(); \
  lhs = std::move(statusor).value()

#endif  // KGMIA_STATUS_MACROS_H_
