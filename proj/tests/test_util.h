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

#ifndef KGMIA_TESTS_TEST_UTIL_H_
#define KGMIA_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace absl {

template <typename T>
void PrintTo(const StatusOr<T>& s, std::ostream* os) {
  *os << (s.ok() ? std::string("OK value") : s.status().ToString());
}

}  // namespace absl

namespace kgmia::testing {

inline const absl::Status& ToStatus(const absl::Status& s) { return s; }
template <typename T>
const absl::Status& ToStatus(const absl::StatusOr<T>& s) {
  return s.status();
}

MATCHER_P(StatusIs, code, "") {
  const absl::Status& s = ::kgmia::testing::ToStatus(arg);
  *result_listener << "status is " << s;
  return s.code() == code;
}

MATCHER_P2(StatusIs, code, substring, "") {
  const absl::Status& s = ::kgmia::testing::ToStatus(arg);
  *result_listener << "status is " << s;
  return s.code() == code &&
         std::string(s.message()).find(substring) != std::string::npos;
}

// Fresh directory under the gtest temp dir, removed on destruction.
class ScopedTempDir {
 public:
  ScopedTempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::path(::testing::TempDir()) /
            ("kgmia_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScopedTempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScopedTempDir(const ScopedTempDir&) = delete;
  ScopedTempDir& operator=(const ScopedTempDir&) = delete;

  std::string path() const { return path_.string(); }
  std::string File(std::string_view name) const {
    return (path_ / std::string(name)).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace kgmia::testing

#define KGMIA_TEST_CONCAT_INNER(a, b) a##b
#define KGMIA_TEST_CONCAT(a, b) KGMIA_TEST_CONCAT_INNER(a, b)

#define ASSERT_OK(expr) \
  ASSERT_TRUE(::kgmia::testing::ToStatus(expr).ok()) \
      << ::kgmia::testing::ToStatus(expr)
#define EXPECT_OK(expr) \
  EXPECT_TRUE(::kgmia::testing::ToStatus(expr).ok()) \
      << ::kgmia::testing::ToStatus(expr)

#define ASSERT_OK_AND_ASSIGN(lhs, rexpr)                                   \
  auto KGMIA_TEST_CONCAT(_statusor_, __LINE__) = (rexpr);                  \
  ASSERT_TRUE(KGMIA_TEST_CONCAT(_statusor_, __LINE__).ok())                \
      << KGMIA_TEST_CONCAT(_statusor_, __LINE__).status();                 \
  lhs = std::move(KGMIA_TEST_CONCAT(_statusor_, __LINE__)).value()

#endif  // KGMIA_TESTS_TEST_UTIL_H_
