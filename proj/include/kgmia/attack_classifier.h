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

#ifndef KGMIA_ATTACK_CLASSIFIER_H_
#define KGMIA_ATTACK_CLASSIFIER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace kgmia {

// One attack-set row: a plausibility score and its membership label.
struct LabeledScore {
  double score = 0.0;
  int label = 0;  // 1 = member
};

struct ClassifierConfig {
  uint32_t hidden = 64;
  double learning_rate = 0.01;
  uint32_t epochs = 200;
  uint32_t batch_size = 128;
  uint64_t seed = 0;
  // Feed z-scored inputs instead of raw scores (mean/std of the attack set).
  bool standardize = false;
};

// Weights of the 1 -> hidden -> hidden -> 1 network. Layer-2 weights are
// row-major [out][in].
struct MlpParameters {
  uint32_t hidden = 0;
  std::vector<double> w1, b1;
  std::vector<double> w2, b2;
  std::vector<double> w3;
  double b3 = 0.0;
  double input_offset = 0.0;
  double input_scale = 1.0;
};

// The transfer attack's membership model: rectifier hidden layers, sigmoid
// output, member iff output >= 0.5.
class AttackClassifier {
 public:
  // Mini-batch gradient descent on mean binary cross-entropy. Requires both
  // labels to be present.
  static absl::StatusOr<AttackClassifier> Fit(std::span<const LabeledScore> data,
                                              const ClassifierConfig& config);
  static AttackClassifier FromParameters(MlpParameters params);

  double Probability(double score) const;
  int Decide(double score) const { return Probability(score) >= 0.5 ? 1 : 0; }

  // Fraction of rows whose decision matches the label.
  double Accuracy(std::span<const LabeledScore> data) const;

  // Mean cross-entropy over the training set after the last epoch.
  double final_loss() const { return final_loss_; }
  const MlpParameters& parameters() const { return params_; }

 private:
  double Logit(double score) const;

  MlpParameters params_;
  double final_loss_ = 0.0;
};

}  // namespace kgmia

#endif  // KGMIA_ATTACK_CLASSIFIER_H_
