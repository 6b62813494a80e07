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

#include "kgmia/attack_classifier.h"

#include <cmath>
#include <numeric>

#include "kgmia/rng.h"

namespace kgmia {
namespace {

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Forward pass buffers for one sample.
struct Activations {
  std::vector<double> z1, a1, z2, a2;
  double z3 = 0.0;

  explicit Activations(uint32_t h) : z1(h), a1(h), z2(h), a2(h) {}
};

double Forward(const MlpParameters& p, double x, Activations& act) {
  const uint32_t h = p.hidden;
  for (uint32_t i = 0; i < h; ++i) {
    act.z1[i] = p.w1[i] * x + p.b1[i];
    act.a1[i] = act.z1[i] > 0 ? act.z1[i] : 0.0;
  }
  for (uint32_t o = 0; o < h; ++o) {
    const double* row = p.w2.data() + size_t{o} * h;
    double acc = p.b2[o];
    for (uint32_t i = 0; i < h; ++i) acc += row[i] * act.a1[i];
    act.z2[o] = acc;
    act.a2[o] = acc > 0 ? acc : 0.0;
  }
  double z = p.b3;
  for (uint32_t i = 0; i < h; ++i) z += p.w3[i] * act.a2[i];
  act.z3 = z;
  return z;
}

}  // namespace

absl::StatusOr<AttackClassifier> AttackClassifier::Fit(
    std::span<const LabeledScore> data, const ClassifierConfig& config) {
  size_t positives = 0;
  for (const LabeledScore& row : data) {
    if (row.label != 0 && row.label != 1) {
      return absl::InvalidArgumentError("labels must be 0 or 1");
    }
    if (!std::isfinite(row.score)) {
      return absl::InvalidArgumentError("attack set contains a non-finite score");
    }
    positives += row.label;
  }
  if (positives == 0 || positives == data.size()) {
    return absl::InvalidArgumentError(
        "attack set must contain both member and non-member rows");
  }
  if (config.hidden == 0 || config.epochs == 0 || config.batch_size == 0 ||
      !(config.learning_rate > 0)) {
    return absl::InvalidArgumentError("invalid classifier configuration");
  }

  const uint32_t h = config.hidden;
  MlpParameters p;
  p.hidden = h;
  if (config.standardize) {
    double mean = 0.0;
    for (const LabeledScore& row : data) mean += row.score;
    mean /= static_cast<double>(data.size());
    double var = 0.0;
    for (const LabeledScore& row : data) var += (row.score - mean) * (row.score - mean);
    const double sd = std::sqrt(var / static_cast<double>(data.size()));
    p.input_offset = mean;
    p.input_scale = sd > 0 ? 1.0 / sd : 1.0;
  }

  // He-uniform for rectifier layers, Glorot-uniform for the sigmoid output.
  Rng rng(DeriveSeed(config.seed, "mlp-init"));
  auto fill = [&rng](std::vector<double>& v, size_t n, double bound) {
    v.resize(n);
    for (double& x : v) x = rng.UniformDouble(-bound, bound);
  };
  fill(p.w1, h, std::sqrt(6.0));
  fill(p.w2, size_t{h} * h, std::sqrt(6.0 / h));
  fill(p.w3, h, std::sqrt(6.0 / (h + 1)));
  // First-layer kinks start at randomly drawn training inputs so the hidden
  // units cover the score range whatever its offset.
  p.b1.resize(h);
  for (uint32_t i = 0; i < h; ++i) {
    const double x = (data[rng.UniformInt(data.size())].score - p.input_offset) *
                     p.input_scale;
    p.b1[i] = -p.w1[i] * x;
  }
  p.b2.assign(h, 0.0);
  p.b3 = 0.0;

  std::vector<double> gw1(h), gb1(h), gw2(size_t{h} * h), gb2(h), gw3(h);
  std::vector<double> d2(h), d1(h);
  Activations act(h);

  std::vector<uint32_t> order(data.size());
  std::iota(order.begin(), order.end(), 0u);
  Rng shuffle_rng(DeriveSeed(config.seed, "mlp-order"));

  double epoch_loss = 0.0;
  for (uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_rng.Shuffle(std::span<uint32_t>(order));
    epoch_loss = 0.0;
    for (size_t lo = 0; lo < order.size(); lo += config.batch_size) {
      const size_t hi = std::min(order.size(), lo + config.batch_size);
      std::fill(gw1.begin(), gw1.end(), 0.0);
      std::fill(gb1.begin(), gb1.end(), 0.0);
      std::fill(gw2.begin(), gw2.end(), 0.0);
      std::fill(gb2.begin(), gb2.end(), 0.0);
      std::fill(gw3.begin(), gw3.end(), 0.0);
      double gb3 = 0.0;
      for (size_t k = lo; k < hi; ++k) {
        const LabeledScore& row = data[order[k]];
        const double x = (row.score - p.input_offset) * p.input_scale;
        const double z3 = Forward(p, x, act);
        epoch_loss += Softplus(z3) - row.label * z3;
        const double d3 = Sigmoid(z3) - row.label;
        gb3 += d3;
        for (uint32_t o = 0; o < h; ++o) {
          gw3[o] += d3 * act.a2[o];
          d2[o] = act.z2[o] > 0 ? d3 * p.w3[o] : 0.0;
        }
        std::fill(d1.begin(), d1.end(), 0.0);
        for (uint32_t o = 0; o < h; ++o) {
          if (d2[o] == 0.0) continue;
          gb2[o] += d2[o];
          const double* wrow = p.w2.data() + size_t{o} * h;
          double* grow = gw2.data() + size_t{o} * h;
          for (uint32_t i = 0; i < h; ++i) {
            grow[i] += d2[o] * act.a1[i];
            d1[i] += d2[o] * wrow[i];
          }
        }
        for (uint32_t i = 0; i < h; ++i) {
          if (act.z1[i] <= 0) continue;
          gw1[i] += d1[i] * x;
          gb1[i] += d1[i];
        }
      }
      const double step = config.learning_rate / static_cast<double>(hi - lo);
      for (uint32_t i = 0; i < h; ++i) {
        p.w1[i] -= step * gw1[i];
        p.b1[i] -= step * gb1[i];
        p.b2[i] -= step * gb2[i];
        p.w3[i] -= step * gw3[i];
      }
      for (size_t i = 0; i < gw2.size(); ++i) p.w2[i] -= step * gw2[i];
      p.b3 -= step * gb3;
    }
    if (!std::isfinite(epoch_loss)) {
      return absl::InternalError("attack classifier diverged");
    }
  }

  AttackClassifier c;
  c.params_ = std::move(p);
  // Loss of the final weights over the whole set.
  double loss = 0.0;
  for (const LabeledScore& row : data) {
    const double z = c.Logit(row.score);
    loss += Softplus(z) - row.label * z;
  }
  c.final_loss_ = loss / static_cast<double>(data.size());
  return c;
}

AttackClassifier AttackClassifier::FromParameters(MlpParameters params) {
  AttackClassifier c;
  c.params_ = std::move(params);
  return c;
}

double AttackClassifier::Logit(double score) const {
  Activations act(params_.hidden);
  return Forward(params_, (score - params_.input_offset) * params_.input_scale,
                 act);
}

double AttackClassifier::Probability(double score) const {
  return Sigmoid(Logit(score));
}

double AttackClassifier::Accuracy(std::span<const LabeledScore> data) const {
  if (data.empty()) return 0.0;
  size_t hits = 0;
  for (const LabeledScore& row : data) hits += Decide(row.score) == row.label;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace kgmia
