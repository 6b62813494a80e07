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

#include "kgmia/trainer.h"

#include <array>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "kgmia/strings.h"
#include "kgmia/corruption.h"
#include "kgmia/loss.h"
#include "kgmia/rng.h"
#include "kgmia/status_macros.h"

namespace kgmia {
namespace {

enum Table : size_t {
  kEntity = 0,
  kRelation = 1,
  kNormal = 2,
  kEntityIm = 3,
  kRelationIm = 4,
  kNumTables = 5,
};

EmbeddingTable& TableOf(KgeModel& m, size_t t) {
  switch (t) {
    case kEntity:
      return m.entities();
    case kRelation:
      return m.relations();
    case kNormal:
      return m.normals();
    case kEntityIm:
      return m.entities_im();
    default:
      return m.relations_im();
  }
}

// Gradient rows for the rows touched by one batch.
class SparseGrad {
 public:
  void Reset(uint32_t rows, uint32_t dim) {
    slot_.assign(rows, -1);
    dim_ = dim;
    touched_.clear();
    buffer_.clear();
  }
  bool enabled() const { return !slot_.empty(); }

  size_t Slot(uint32_t row) {
    if (slot_[row] < 0) {
      slot_[row] = static_cast<int32_t>(touched_.size());
      touched_.push_back(row);
      buffer_.resize(buffer_.size() + dim_, 0.0);
    }
    return static_cast<size_t>(slot_[row]);
  }
  std::span<double> Grad(size_t slot) {
    return {buffer_.data() + slot * dim_, dim_};
  }
  const std::vector<uint32_t>& touched() const { return touched_; }

  void Clear() {
    for (uint32_t row : touched_) slot_[row] = -1;
    touched_.clear();
    buffer_.clear();
  }

 private:
  std::vector<int32_t> slot_;
  std::vector<uint32_t> touched_;
  std::vector<double> buffer_;
  uint32_t dim_ = 0;
};

float LoadShared(const float& x) {
  return std::atomic_ref<float>(const_cast<float&>(x)).load(
      std::memory_order_relaxed);
}
void StoreShared(float& x, float v) {
  std::atomic_ref<float>(x).store(v, std::memory_order_relaxed);
}

struct Worker {
  std::array<SparseGrad, kNumTables> grads;
  std::vector<double> scratch;
  // Private row copies for shared-mode reads: 7 rows per triple, 2 triples.
  std::array<std::vector<float>, 14> copies;
  Rng rng{0};
  CorruptionStats stats;

  void Init(const KgeModel& m) {
    const uint32_t d = m.dim();
    grads[kEntity].Reset(m.num_entities(), d);
    grads[kRelation].Reset(m.num_relations(), d);
    if (m.kind() == ModelKind::kTransH) grads[kNormal].Reset(m.num_relations(), d);
    if (m.kind() == ModelKind::kComplEx) {
      grads[kEntityIm].Reset(m.num_entities(), d);
      grads[kRelationIm].Reset(m.num_relations(), d);
    }
    scratch.assign(d, 0.0);
    for (auto& c : copies) c.assign(d, 0.0f);
  }
};

std::span<const float> CopyRow(std::span<const float> src,
                               std::vector<float>& dst) {
  for (size_t i = 0; i < src.size(); ++i) dst[i] = LoadShared(src[i]);
  return dst;
}

template <bool kShared>
TripleRows<float> RowsFor(const KgeModel& m, const Triple& t, Worker& w,
                          size_t copy_base) {
  TripleRows<float> rows = ModelRows(m, t);
  if constexpr (kShared) {
    auto copy = [&](std::span<const float>& r, size_t k) {
      if (!r.empty()) r = CopyRow(r, w.copies[copy_base + k]);
    };
    copy(rows.head, 0);
    copy(rows.relation, 1);
    copy(rows.tail, 2);
    copy(rows.normal, 3);
    copy(rows.head_im, 4);
    copy(rows.relation_im, 5);
    copy(rows.tail_im, 6);
  }
  return rows;
}

struct Slots {
  size_t head, relation, tail, normal, head_im, relation_im, tail_im;
};

Slots ReserveSlots(ModelKind kind, const Triple& t, Worker& w) {
  Slots s{};
  s.head = w.grads[kEntity].Slot(t.head);
  s.tail = w.grads[kEntity].Slot(t.tail);
  s.relation = w.grads[kRelation].Slot(t.relation);
  if (kind == ModelKind::kTransH) s.normal = w.grads[kNormal].Slot(t.relation);
  if (kind == ModelKind::kComplEx) {
    s.head_im = w.grads[kEntityIm].Slot(t.head);
    s.tail_im = w.grads[kEntityIm].Slot(t.tail);
    s.relation_im = w.grads[kRelationIm].Slot(t.relation);
  }
  return s;
}

TripleGrads GradsFor(ModelKind kind, const Slots& s, Worker& w) {
  TripleGrads g;
  g.head = w.grads[kEntity].Grad(s.head);
  g.tail = w.grads[kEntity].Grad(s.tail);
  g.relation = w.grads[kRelation].Grad(s.relation);
  if (kind == ModelKind::kTransH) g.normal = w.grads[kNormal].Grad(s.normal);
  if (kind == ModelKind::kComplEx) {
    g.head_im = w.grads[kEntityIm].Grad(s.head_im);
    g.tail_im = w.grads[kEntityIm].Grad(s.tail_im);
    g.relation_im = w.grads[kRelationIm].Grad(s.relation_im);
  }
  return g;
}

absl::Status NonFinite(std::string_view what, uint32_t epoch, uint32_t batch) {
  return absl::InternalError(fmt::format(
      "non-finite {} detected at epoch {} batch {}", what, epoch, batch));
}

void NormalizeRow(std::span<float> row) {
  double n = 0.0;
  for (float v : row) n += double(v) * double(v);
  n = std::sqrt(n);
  if (n > 0) {
    for (float& v : row) v = static_cast<float>(v / n);
  }
}

template <bool kShared>
void NormalizeRowShared(std::span<float> row) {
  if constexpr (!kShared) {
    NormalizeRow(row);
  } else {
    double n = 0.0;
    for (float& v : row) {
      const double x = LoadShared(v);
      n += x * x;
    }
    n = std::sqrt(n);
    if (n > 0) {
      for (float& v : row) StoreShared(v, static_cast<float>(LoadShared(v) / n));
    }
  }
}

// One optimizer step over the positives `batch`.
template <bool kShared>
absl::Status RunBatch(KgeModel& model, std::span<const Triple> triples,
                      std::span<const uint32_t> batch,
                      const TrainConfig& config, const TrainOptions& options,
                      Worker& w, uint32_t epoch, uint32_t batch_no,
                      double* loss_sum, uint64_t* pair_count) {
  const ModelKind kind = model.kind();
  const VocabSizes vocab = model.vocab_sizes();
  CorruptionOptions copts;
  copts.filtered = config.filtered_negatives;
  copts.corrupt_relations = config.corrupt_relations;

  double batch_loss = 0.0;
  uint64_t pairs = 0;
  for (uint32_t idx : batch) {
    const Triple& pos = triples[idx];
    for (uint32_t k = 0; k < config.negatives_per_positive; ++k) {
      KGMIA_ASSIGN_OR_RETURN(
          CorruptionSample sample,
          CorruptTriple(pos, vocab, w.rng, copts, options.known_triples,
                        &w.stats));
      const Triple& neg = sample.corrupted;
      const Slots ps = ReserveSlots(kind, pos, w);
      const Slots ns = ReserveSlots(kind, neg, w);
      const TripleRows<float> prow = RowsFor<kShared>(model, pos, w, 0);
      const TripleRows<float> nrow = RowsFor<kShared>(model, neg, w, 7);
      batch_loss += AccumulatePairGradient(
          kind, model.norm(), config.loss, config.margin, prow, nrow,
          GradsFor(kind, ps, w), GradsFor(kind, ns, w), w.scratch);
      ++pairs;
    }
  }
  if (!std::isfinite(batch_loss)) return NonFinite("loss", epoch, batch_no);

  const double step = config.learning_rate / static_cast<double>(pairs);
  for (size_t t = 0; t < kNumTables; ++t) {
    SparseGrad& sg = w.grads[t];
    if (!sg.enabled()) continue;
    EmbeddingTable& table = TableOf(model, t);
    for (size_t slot = 0; slot < sg.touched().size(); ++slot) {
      std::span<const double> g = sg.Grad(slot);
      std::span<float> row = table.row(sg.touched()[slot]);
      for (size_t i = 0; i < row.size(); ++i) {
        if (!std::isfinite(g[i])) return NonFinite("gradient", epoch, batch_no);
        if constexpr (kShared) {
          StoreShared(row[i],
                      static_cast<float>(LoadShared(row[i]) - step * g[i]));
        } else {
          row[i] = static_cast<float>(row[i] - step * g[i]);
          if (!std::isfinite(row[i])) {
            return NonFinite("parameter", epoch, batch_no);
          }
        }
      }
    }
  }
  if (kind == ModelKind::kTransH) {
    for (uint32_t r : w.grads[kNormal].touched()) {
      NormalizeRowShared<kShared>(model.normals().row(r));
    }
  }
  for (SparseGrad& sg : w.grads) {
    if (sg.enabled()) sg.Clear();
  }
  *loss_sum += batch_loss;
  *pair_count += pairs;
  return absl::OkStatus();
}

void ProjectEntities(KgeModel& model) {
  for (uint32_t e = 0; e < model.num_entities(); ++e) {
    std::span<float> row = model.entities().row(e);
    double n = 0.0;
    for (float v : row) n += double(v) * double(v);
    n = std::sqrt(n);
    if (n > 1.0) {
      for (float& v : row) v = static_cast<float>(v / n);
    }
  }
}

}  // namespace

absl::Status TrainConfig::Validate() const {
  if (epochs == 0) return absl::InvalidArgumentError("epochs must be positive");
  if (dim == 0) return absl::InvalidArgumentError("dim must be positive");
  if (!(learning_rate > 0) || !std::isfinite(learning_rate)) {
    return absl::InvalidArgumentError("learning_rate must be positive");
  }
  if (loss == LossKind::kMargin && !(margin > 0)) {
    return absl::InvalidArgumentError("margin must be positive");
  }
  if (negatives_per_positive == 0) {
    return absl::InvalidArgumentError("negatives_per_positive must be positive");
  }
  if (batch_size == 0) {
    return absl::InvalidArgumentError("batch_size must be positive");
  }
  if (jobs == 0) return absl::InvalidArgumentError("jobs must be positive");
  return absl::OkStatus();
}

std::string TrainConfig::Canonical() const {
  return fmt::format(
      "batch_size={}\ncorrupt_relations={:d}\ndim={}\nepochs={}\n"
      "filtered_negatives={:d}\njobs={}\nlearning_rate={:.17g}\nloss={}\n"
      "margin={:.17g}\nmodel={}\nnegatives_per_positive={}\nnorm={}\nseed={}\n",
      batch_size, corrupt_relations, dim, epochs, filtered_negatives, jobs,
      learning_rate, LossKindName(loss), margin, ModelKindName(model),
      negatives_per_positive, NormKindName(norm), seed);
}

TrainConfig DefaultTrainConfig(ModelKind kind) {
  TrainConfig c;
  c.model = kind;
  c.loss = NativeLossKind(kind);
  c.learning_rate = c.loss == LossKind::kMargin ? 0.5 : 0.05;
  return c;
}

absl::StatusOr<KgeModel> InitializeModel(const TrainConfig& config,
                                         VocabSizes vocab) {
  KGMIA_RETURN_IF_ERROR(config.Validate());
  KGMIA_ASSIGN_OR_RETURN(
      KgeModel model, KgeModel::Create(config.model, config.norm, config.dim, vocab));
  Rng rng(DeriveSeed(config.seed, "init"));
  const double bound = 6.0 / std::sqrt(static_cast<double>(config.dim));
  for (EmbeddingTable* table : model.Tables()) {
    for (float& v : table->data()) {
      v = static_cast<float>(rng.UniformDouble(-bound, bound));
    }
  }
  if (IsTranslational(config.model)) {
    for (uint32_t r = 0; r < model.num_relations(); ++r) {
      NormalizeRow(model.relations().row(r));
    }
  }
  if (config.model == ModelKind::kTransH) {
    for (uint32_t r = 0; r < model.num_relations(); ++r) {
      NormalizeRow(model.normals().row(r));
    }
  }
  return model;
}

absl::StatusOr<TrainResult> Train(std::span<const Triple> triples,
                                  VocabSizes vocab, const TrainConfig& config,
                                  const TrainOptions& options) {
  if (triples.empty()) return absl::InvalidArgumentError("no training triples");
  for (const Triple& t : triples) {
    if (t.head >= vocab.num_entities || t.tail >= vocab.num_entities ||
        t.relation >= vocab.num_relations) {
      return absl::OutOfRangeError("training triple outside vocabulary");
    }
  }
  TrainResult result;
  KGMIA_ASSIGN_OR_RETURN(result.model, InitializeModel(config, vocab));
  KgeModel& model = result.model;
  result.deterministic = config.jobs == 1;

  std::vector<uint32_t> order(triples.size());
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(DeriveSeed(config.seed, "train"));

  const size_t num_batches =
      (order.size() + config.batch_size - 1) / config.batch_size;
  auto batch_span = [&](size_t b) {
    const size_t lo = b * config.batch_size;
    const size_t hi = std::min(order.size(), lo + config.batch_size);
    return std::span<const uint32_t>(order.data() + lo, hi - lo);
  };

  std::vector<Worker> workers(config.jobs);
  for (Worker& w : workers) w.Init(model);
  workers[0].rng = Rng(DeriveSeed(config.seed, "negatives"));

  for (uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(std::span<uint32_t>(order));
    double loss_sum = 0.0;
    uint64_t pairs = 0;
    if (config.jobs == 1) {
      for (size_t b = 0; b < num_batches; ++b) {
        KGMIA_RETURN_IF_ERROR(RunBatch<false>(
            model, triples, batch_span(b), config, options, workers[0], epoch,
            static_cast<uint32_t>(b), &loss_sum, &pairs));
        if (options.on_step) {
          options.on_step(model, epoch, static_cast<uint32_t>(b));
        }
      }
    } else {
      std::vector<absl::Status> status(config.jobs);
      std::vector<double> losses(config.jobs, 0.0);
      std::vector<uint64_t> counts(config.jobs, 0);
      std::vector<std::thread> threads;
      for (uint32_t j = 0; j < config.jobs; ++j) {
        workers[j].rng = Rng(DeriveSeed(config.seed, epoch, j));
        threads.emplace_back([&, j] {
          for (size_t b = j; b < num_batches; b += config.jobs) {
            status[j] = RunBatch<true>(model, triples, batch_span(b), config,
                                       options, workers[j], epoch,
                                       static_cast<uint32_t>(b), &losses[j],
                                       &counts[j]);
            if (!status[j].ok()) return;
          }
        });
      }
      for (std::thread& t : threads) t.join();
      for (uint32_t j = 0; j < config.jobs; ++j) {
        KGMIA_RETURN_IF_ERROR(status[j]);
        loss_sum += losses[j];
        pairs += counts[j];
      }
      if (!model.AllFinite()) {
        return NonFinite("parameter", epoch, static_cast<uint32_t>(num_batches));
      }
    }
    if (IsTranslational(config.model)) ProjectEntities(model);
    result.epoch_loss.push_back(loss_sum / static_cast<double>(pairs));
  }
  for (const Worker& w : workers) result.negative_fallbacks += w.stats.fallbacks;
  return result;
}

}  // namespace kgmia
