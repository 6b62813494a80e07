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

#ifndef KGMIA_PARALLEL_H_
#define KGMIA_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "absl/status/status.h"

namespace kgmia {

// Runs body(i) for every i in [0, n) on up to `jobs` threads, striding
// indices across workers. Returns the error of the lowest failing index seen.
inline absl::Status ParallelFor(size_t n, uint32_t jobs,
                                const std::function<absl::Status(size_t)>& body) {
  const size_t workers = std::clamp<size_t>(jobs, 1, std::max<size_t>(n, 1));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) {
      absl::Status s = body(i);
      if (!s.ok()) return s;
    }
    return absl::OkStatus();
  }
  std::vector<absl::Status> status(workers);
  std::vector<size_t> failed_at(workers, n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (size_t i = w; i < n; i += workers) {
        absl::Status s = body(i);
        if (!s.ok()) {
          status[w] = std::move(s);
          failed_at[w] = i;
          return;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  size_t best = 0;
  for (size_t w = 1; w < workers; ++w) {
    if (failed_at[w] < failed_at[best]) best = w;
  }
  return status[best];
}

}  // namespace kgmia

#endif  // KGMIA_PARALLEL_H_
