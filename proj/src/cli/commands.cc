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

#include <algorithm>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fmt/format.h"
#include "kgmia/ablation.h"
#include "kgmia/attacks.h"
#include "kgmia/cli.h"
#include "kgmia/experiment.h"
#include "kgmia/histogram.h"
#include "kgmia/model_io.h"
#include "kgmia/report.h"
#include "kgmia/run_config.h"
#include "kgmia/split.h"
#include "kgmia/status_macros.h"
#include "kgmia/strings.h"
#include "kgmia/synthetic.h"
#include "kgmia/trainer.h"

namespace kgmia {
namespace {

namespace fs = std::filesystem;

// ---- shared flag groups ------------------------------------------------------

struct TrainFlags {
  std::string model = "TransE";
  std::string norm = "L1";
  std::string loss;
  uint32_t dim = 0;
  uint32_t epochs = 0;
  uint32_t negatives = 0;
  uint32_t batch = 0;
  double lr = 0.0;
  double margin = 0.0;
  bool filtered = false;
  bool corrupt_relations = false;
  CLI::Option* model_opt = nullptr;
  CLI::Option* norm_opt = nullptr;
  CLI::Option* loss_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* epochs_opt = nullptr;
  CLI::Option* negatives_opt = nullptr;
  CLI::Option* batch_opt = nullptr;
  CLI::Option* lr_opt = nullptr;
  CLI::Option* margin_opt = nullptr;
};

void AddTrainFlags(CLI::App* app, TrainFlags* f) {
  const TrainConfig d = DefaultTrainConfig(ModelKind::kTransE);
  f->model_opt = app->add_option("--model", f->model,
                                 "TransE, TransH, DistMult or ComplEx")
                     ->capture_default_str();
  f->norm_opt = app->add_option("--norm", f->norm,
                                "L1 or L2 (translation models)")
                    ->capture_default_str();
  f->loss_opt = app->add_option(
      "--loss", f->loss, "margin or logistic (default: the model's own)");
  f->dim_opt = app->add_option("--dim", f->dim,
                               fmt::format("embedding size (default {})", d.dim));
  f->epochs_opt = app->add_option(
      "--epochs", f->epochs,
      fmt::format("base epochs before the regime multiplier (default {})",
                  d.epochs));
  f->negatives_opt = app->add_option(
      "--negatives", f->negatives,
      fmt::format("corruptions per positive (default {})",
                  d.negatives_per_positive));
  f->batch_opt = app->add_option(
      "--batch", f->batch, fmt::format("batch size (default {})", d.batch_size));
  f->lr_opt = app->add_option(
      "--lr", f->lr, "SGD step (default 0.5 margin, 0.05 logistic)");
  f->margin_opt = app->add_option(
      "--margin", f->margin, fmt::format("margin-loss gamma (default {})", d.margin));
  app->add_flag("--filtered", f->filtered,
                "reject corruptions that are known triples");
  app->add_flag("--corrupt-relations", f->corrupt_relations,
                "also corrupt the relation slot");
}

// Flags override the model's defaults; a loaded model fixes the kind, norm and
// dimension unless given explicitly.
absl::StatusOr<TrainConfig> ResolveTrainConfig(const TrainFlags& f,
                                               const KgeModel* loaded) {
  ModelKind kind = ModelKind::kTransE;
  if (loaded != nullptr && f.model_opt->count() == 0) {
    kind = loaded->kind();
  } else {
    KGMIA_ASSIGN_OR_RETURN(kind, ParseModelKind(f.model));
  }
  TrainConfig c = DefaultTrainConfig(kind);
  if (loaded != nullptr) {
    c.norm = loaded->norm();
    c.dim = loaded->dim();
  }
  if (f.norm_opt->count() > 0) {
    KGMIA_ASSIGN_OR_RETURN(c.norm, ParseNormKind(f.norm));
  }
  if (f.loss_opt->count() > 0) {
    KGMIA_ASSIGN_OR_RETURN(c.loss, ParseLossKind(f.loss));
  }
  if (f.dim_opt->count() > 0) c.dim = f.dim;
  if (f.epochs_opt->count() > 0) c.epochs = f.epochs;
  if (f.negatives_opt->count() > 0) c.negatives_per_positive = f.negatives;
  if (f.batch_opt->count() > 0) c.batch_size = f.batch;
  if (f.lr_opt->count() > 0) c.learning_rate = f.lr;
  if (f.margin_opt->count() > 0) c.margin = f.margin;
  c.filtered_negatives = f.filtered;
  c.corrupt_relations = f.corrupt_relations;
  return c;
}

struct RunFlags {
  uint64_t seed = 0;
  uint64_t attack_seed = 0;
  std::string regime = "default";
  uint32_t jobs = 1;
  double calibration_fraction = 0.1;
  bool holdout = false;
  std::string threshold_mode = "per_relation";
  std::string dataset_name;
  std::string out;
  CLI::Option* attack_seed_opt = nullptr;
};

void AddSeedFlag(CLI::App* app, uint64_t* seed) {
  app->add_option("--seed", *seed, "run seed")
      ->envname("KGMIA_SEED")
      ->capture_default_str();
}

void AddRunFlags(CLI::App* app, RunFlags* f, bool with_out) {
  AddSeedFlag(app, &f->seed);
  f->attack_seed_opt = app->add_option(
      "--attack-seed", f->attack_seed,
      "seed of attacker-side draws (default: derived from --seed)");
  app->add_option("--regime", f->regime, "early-stop, default or overfit")
      ->capture_default_str();
  app->add_option("--jobs", f->jobs, "worker threads")->capture_default_str();
  app->add_option("--calibration-fraction", f->calibration_fraction,
                  "share of target-train used to fit thresholds")
      ->capture_default_str();
  app->add_flag("--calibration-holdout", f->holdout,
                "leave the calibration share out of training");
  app->add_option("--threshold-mode", f->threshold_mode, "per_relation or global")
      ->capture_default_str();
  app->add_option("--dataset-name", f->dataset_name,
                  "name used in reports (default: the source file stem)");
  if (with_out) {
    app->add_option("--out", f->out, "output directory")->required();
  }
}

absl::Status ApplyRunFlags(const RunFlags& f, RunConfig* c) {
  c->seed = f.seed;
  if (f.attack_seed_opt->count() > 0) c->attack_seed = f.attack_seed;
  KGMIA_ASSIGN_OR_RETURN(c->regime, ParseRegime(f.regime));
  KGMIA_ASSIGN_OR_RETURN(c->threshold_mode, ParseThresholdMode(f.threshold_mode));
  c->jobs = f.jobs;
  c->calibration_fraction = f.calibration_fraction;
  c->calibration_holdout = f.holdout;
  c->output_dir = f.out;
  return absl::OkStatus();
}

struct AttackFlags {
  std::string metric = "logistic";
  double pla_margin = 4.0;
  uint32_t corruptions = 1;
  ClassifierConfig classifier;
  std::string shadow_model;
};

void AddAttackFlags(CLI::App* app, AttackFlags* f) {
  app->add_option("--metric", f->metric, "PLA loss metric: margin or logistic")
      ->capture_default_str();
  app->add_option("--pla-margin", f->pla_margin, "PLA margin-metric gamma")
      ->capture_default_str();
  app->add_option("--corruptions", f->corruptions,
                  "PLA margin-metric corruptions per candidate")
      ->capture_default_str();
  app->add_option("--classifier-hidden", f->classifier.hidden, "TA hidden width")
      ->capture_default_str();
  app->add_option("--classifier-epochs", f->classifier.epochs, "TA epochs")
      ->capture_default_str();
  app->add_option("--classifier-lr", f->classifier.learning_rate, "TA step")
      ->capture_default_str();
  app->add_option("--classifier-batch", f->classifier.batch_size, "TA batch")
      ->capture_default_str();
  app->add_flag("--standardize", f->classifier.standardize,
                "z-score the TA input");
  app->add_option("--shadow-model", f->shadow_model,
                  "TA shadow architecture (default: the target's)");
}

absl::Status ApplyAttackFlags(const AttackFlags& f, RunConfig* c) {
  KGMIA_ASSIGN_OR_RETURN(c->loss_metric, ParseLossMetric(f.metric));
  c->pla_margin = f.pla_margin;
  c->pla_corruptions = f.corruptions;
  c->classifier = f.classifier;
  if (!f.shadow_model.empty()) {
    KGMIA_ASSIGN_OR_RETURN(ModelKind k, ParseModelKind(f.shadow_model));
    c->shadow_model = k;
  }
  return absl::OkStatus();
}

// ---- helpers -----------------------------------------------------------------

// Output names must stay inside the output directory.
absl::StatusOr<std::string> OutputPath(const std::string& dir,
                                       const std::string& name) {
  if (name.empty() || name.find('/') != std::string::npos || name == "." ||
      name == "..") {
    return absl::InvalidArgumentError(
        StrCat("output name '", name, "' must be a plain file name"));
  }
  return (fs::path(dir) / name).string();
}

std::string Stem(const std::string& path) { return fs::path(path).stem().string(); }

absl::StatusOr<TripleStore> LoadData(const std::vector<std::string>& paths) {
  if (paths.size() == 1) return LoadTsv(paths[0]);
  KGMIA_ASSIGN_OR_RETURN(MultiFileLoad load, LoadTsvParts(paths));
  return std::move(load.store);
}

std::string MetricsLine(const AttackReport& r) {
  return fmt::format(
      "{}{} {} on {}: accuracy={:.4f} f1={:.4f} precision={:.4f} "
      "recall={:.4f} overfit_level={:.4f} evaluated={} fingerprint={}",
      AttackKindName(r.attack),
      r.loss_metric.empty() ? "" : StrCat("(", r.loss_metric, ")"), r.model,
      r.dataset, r.accuracy, r.f1, r.precision, r.recall, r.overfit_level,
      r.evaluated, r.fingerprint);
}

// ---- commands ----------------------------------------------------------------

struct SynthArgs {
  SyntheticConfig config;
  std::string out;
  std::string name = "synthetic.tsv";
};

absl::Status CmdSynth(const SynthArgs& a, std::ostream& out) {
  KGMIA_ASSIGN_OR_RETURN(TripleStore kg, GenerateSyntheticKg(a.config));
  KGMIA_ASSIGN_OR_RETURN(std::string path, OutputPath(a.out, a.name));
  KGMIA_RETURN_IF_ERROR(WriteTsv(kg, kg.triples(), path));
  out << fmt::format("wrote {} triples over {} entities and {} relations to {}\n",
                     kg.size(), kg.num_entities(), kg.num_relations(), path);
  return absl::OkStatus();
}

struct SplitArgs {
  std::vector<std::string> data;
  std::vector<std::string> pre_split;
  uint64_t seed = 0;
  std::string out;
};

absl::Status CmdSplit(const SplitArgs& a, std::ostream& out) {
  LoadedSplit split;
  if (!a.pre_split.empty()) {
    if (a.pre_split.size() != 4 || !a.data.empty()) {
      return absl::InvalidArgumentError(
          "--pre-split takes exactly four files (target_train target_test "
          "shadow_train shadow_test) and no --data");
    }
    KGMIA_ASSIGN_OR_RETURN(
        split, ImportPreSplit({a.pre_split[0], a.pre_split[1], a.pre_split[2],
                               a.pre_split[3]},
                              a.out));
  } else {
    if (a.data.empty()) {
      return absl::InvalidArgumentError("split needs --data or --pre-split");
    }
    std::string source = a.data[0];
    TripleStore store;
    if (a.data.size() == 1) {
      KGMIA_ASSIGN_OR_RETURN(store, LoadTsv(source));
    } else {
      // Several files are merged into one source the split can point at.
      KGMIA_ASSIGN_OR_RETURN(MultiFileLoad load, LoadTsvParts(a.data));
      store = std::move(load.store);
      KGMIA_ASSIGN_OR_RETURN(source, OutputPath(a.out, "source.tsv"));
      KGMIA_RETURN_IF_ERROR(WriteTsv(store, store.triples(), source));
    }
    KGMIA_ASSIGN_OR_RETURN(SplitPlan plan, MakeSplit(store, a.seed));
    KGMIA_RETURN_IF_ERROR(WriteSplitDir(store, plan, source, a.out));
    split.plan = std::move(plan);
    split.store = std::move(store);
  }
  out << fmt::format("{} triples, {} entities, {} relations\n", split.store.size(),
                     split.store.num_entities(), split.store.num_relations());
  for (const char* part : kSplitPartNames) {
    KGMIA_ASSIGN_OR_RETURN(const std::vector<Triple>* p, SplitPart(split.plan, part));
    out << fmt::format("  {:<13} {}\n", part, p->size());
  }
  out << "split written to " << a.out << "\n";
  return absl::OkStatus();
}

struct TrainArgs {
  std::string split;
  std::string part = "target_train";
  std::string name = "model.kge";
  TrainFlags train;
  RunFlags run;
};

absl::Status CmdTrain(const TrainArgs& a, std::ostream& out) {
  KGMIA_ASSIGN_OR_RETURN(LoadedSplit split, LoadSplitDir(a.split));
  RunConfig rc;
  KGMIA_ASSIGN_OR_RETURN(rc.train, ResolveTrainConfig(a.train, nullptr));
  KGMIA_RETURN_IF_ERROR(ApplyRunFlags(a.run, &rc));
  KGMIA_RETURN_IF_ERROR(rc.Validate());
  TrainConfig config;
  std::vector<Triple> triples;
  if (a.part == "target_train") {
    // Same seeds and data as the library pipeline's target.
    config = rc.TargetTrainConfig();
    triples = split.plan.target_train;
    if (rc.calibration_holdout) {
      const std::vector<Triple> held = CalibrationSample(triples, rc);
      const TripleSet held_set(held.begin(), held.end());
      std::erase_if(triples, [&](const Triple& t) { return held_set.contains(t); });
    }
  } else if (a.part == "shadow_train") {
    config = rc.ShadowTrainConfig();
    triples = split.plan.shadow_train;
  } else {
    return absl::InvalidArgumentError(
        StrCat("--part must be target_train or shadow_train, got ", a.part));
  }
  config.jobs = rc.jobs;
  TrainOptions options;
  options.known_triples = &split.store.membership_index();
  KGMIA_ASSIGN_OR_RETURN(
      TrainResult result,
      Train(triples, split.store.vocab_sizes(), config, options));
  KGMIA_ASSIGN_OR_RETURN(std::string path, OutputPath(a.run.out, a.name));
  KGMIA_RETURN_IF_ERROR(SaveModel(result.model, path));

  const std::vector<double>& loss = result.epoch_loss;
  out << fmt::format("trained {} ({} loss) on {} {} triples for {} epochs{}\n",
                     ModelKindName(config.model), LossKindName(config.loss),
                     triples.size(), a.part, loss.size(),
                     result.deterministic ? "" : " (parallel, nondeterministic)");
  const size_t points = std::min<size_t>(10, loss.size());
  for (size_t k = 0; k < points; ++k) {
    const size_t e = points == 1 ? 0 : k * (loss.size() - 1) / (points - 1);
    out << fmt::format("  epoch {:>5}  loss {:.6f}\n", e + 1, loss[e]);
  }
  out << "model written to " << path << "\n";
  return absl::OkStatus();
}

struct CalibrateArgs {
  std::string split;
  std::string model_file;
  std::string name = "calibration.tsv";
  RunFlags run;
};

absl::Status CmdCalibrate(const CalibrateArgs& a, std::ostream& out) {
  KGMIA_ASSIGN_OR_RETURN(LoadedSplit split, LoadSplitDir(a.split));
  KGMIA_ASSIGN_OR_RETURN(KgeModel model, LoadModel(a.model_file));
  RunConfig rc;
  KGMIA_RETURN_IF_ERROR(ApplyRunFlags(a.run, &rc));
  KGMIA_RETURN_IF_ERROR(rc.Validate());
  TargetOracle oracle = TargetOracle::FromModel(std::move(model));
  KGMIA_RETURN_IF_ERROR(CalibrateTarget(oracle, split.plan.target_train, rc));
  double train_acc = 0, test_acc = 0;
  KGMIA_ASSIGN_OR_RETURN(
      double level, MeasureOverfit(oracle, split.plan, rc, &train_acc, &test_acc));
  KGMIA_ASSIGN_OR_RETURN(std::string path, OutputPath(a.run.out, a.name));
  KGMIA_RETURN_IF_ERROR(SaveCalibration(*oracle.calibration(), path));
  out << fmt::format(
      "{} thresholds over {} relations, global {:.6f} (validation accuracy "
      "{:.4f})\n",
      ThresholdModeName(rc.threshold_mode), oracle.calibration()->per_relation.size(),
      oracle.calibration()->global_threshold,
      oracle.calibration()->global_accuracy);
  out << fmt::format(
      "train accuracy {:.4f}, test accuracy {:.4f}, overfit level {:.4f}\n",
      train_acc, test_acc, level);
  out << "calibration written to " << path << "\n";
  return absl::OkStatus();
}

struct AttackArgs {
  std::string kind;
  std::string split;
  std::string model_file;
  std::string calibration;
  std::string shadow_file;
  TrainFlags train;
  RunFlags run;
  AttackFlags attack;
};

absl::Status CmdAttack(const AttackArgs& a, std::ostream& out) {
  KGMIA_ASSIGN_OR_RETURN(LoadedSplit split, LoadSplitDir(a.split));
  KGMIA_ASSIGN_OR_RETURN(KgeModel model, LoadModel(a.model_file));
  RunConfig rc;
  KGMIA_ASSIGN_OR_RETURN(rc.attack, ParseAttackKind(a.kind));
  KGMIA_ASSIGN_OR_RETURN(rc.train, ResolveTrainConfig(a.train, &model));
  KGMIA_RETURN_IF_ERROR(ApplyRunFlags(a.run, &rc));
  KGMIA_RETURN_IF_ERROR(ApplyAttackFlags(a.attack, &rc));
  rc.dataset_name = a.run.dataset_name.empty()
                        ? Stem(split.manifest.source_path)
                        : a.run.dataset_name;
  rc.dataset_paths = {a.split, a.model_file};
  if (!a.calibration.empty()) rc.dataset_paths.push_back(a.calibration);
  if (!a.shadow_file.empty()) rc.dataset_paths.push_back(a.shadow_file);
  KGMIA_RETURN_IF_ERROR(rc.Validate());

  const VocabSizes vocab = split.store.vocab_sizes();
  if (model.num_entities() != vocab.num_entities ||
      model.num_relations() != vocab.num_relations) {
    return absl::FailedPreconditionError(StrCat(
        a.model_file, " has ", model.num_entities(), " entities and ",
        model.num_relations(), " relations but the split has ",
        vocab.num_entities, " and ", vocab.num_relations));
  }
  TargetOracle target = TargetOracle::FromModel(std::move(model));
  if (a.calibration.empty()) {
    KGMIA_RETURN_IF_ERROR(CalibrateTarget(target, split.plan.target_train, rc));
  } else {
    KGMIA_ASSIGN_OR_RETURN(ClassifierCalibration cal, LoadCalibration(a.calibration));
    target.SetCalibration(std::move(cal));
  }
  KGMIA_ASSIGN_OR_RETURN(double overfit, MeasureOverfit(target, split.plan, rc));

  std::optional<TargetOracle> shadow_oracle;
  if (!a.shadow_file.empty()) {
    KGMIA_ASSIGN_OR_RETURN(KgeModel shadow_model, LoadModel(a.shadow_file));
    shadow_oracle.emplace(TargetOracle::FromModel(std::move(shadow_model)));
  }
  ShadowData shadow{split.plan.shadow_train, split.plan.shadow_test, vocab,
                    shadow_oracle ? &*shadow_oracle : nullptr};
  const EvaluationSet eval =
      BalancedEvaluationSet(split.plan.target_train, split.plan.target_test,
                            DeriveSeed(rc.AttackSeed(), "evaluation"));
  target.ResetCounters();
  KGMIA_ASSIGN_OR_RETURN(AttackRun run, RunAttack(target, eval, &shadow, rc));
  AttackReport report = MakeReport(rc, run, overfit);
  KGMIA_RETURN_IF_ERROR(WriteRunOutputs(rc, run, &report));
  out << MetricsLine(report) << "\n";
  out << fmt::format("target queries: {} score, {} label\n",
                     target.score_queries(), target.label_queries());
  if (rc.attack == AttackKind::kTransfer) {
    out << fmt::format("shadow attack-set accuracy {:.4f}\n",
                       run.shadow_attack_accuracy);
  }
  out << "decisions written to " << report.decisions_path << "\n";
  return absl::OkStatus();
}

struct RunArgs {
  std::vector<std::string> data;
  std::string attack = "ta";
  TrainFlags train;
  RunFlags run;
  AttackFlags attack_flags;
};

absl::Status CmdRun(const RunArgs& a, std::ostream& out) {
  KGMIA_ASSIGN_OR_RETURN(TripleStore store, LoadData(a.data));
  RunConfig rc;
  KGMIA_ASSIGN_OR_RETURN(rc.attack, ParseAttackKind(a.attack));
  KGMIA_ASSIGN_OR_RETURN(rc.train, ResolveTrainConfig(a.train, nullptr));
  KGMIA_RETURN_IF_ERROR(ApplyRunFlags(a.run, &rc));
  KGMIA_RETURN_IF_ERROR(ApplyAttackFlags(a.attack_flags, &rc));
  rc.dataset_name = a.run.dataset_name.empty() ? Stem(a.data[0]) : a.run.dataset_name;
  rc.dataset_paths = a.data;
  KGMIA_ASSIGN_OR_RETURN(AttackReport report, RunExperiment(store, rc));
  out << MetricsLine(report) << "\n";
  out << "decisions written to " << report.decisions_path << "\n";
  return absl::OkStatus();
}

struct AblateArgs {
  std::string axis;
  std::vector<std::string> data;
  std::vector<std::string> models;
  std::vector<std::string> model_lr;
  TrainFlags train;
  RunFlags run;
  AttackFlags attack;
};

absl::Status CmdAblate(const AblateArgs& a, std::ostream& out) {
  AblationSpec spec;
  KGMIA_ASSIGN_OR_RETURN(spec.axis, ParseAblationAxis(a.axis));
  KGMIA_ASSIGN_OR_RETURN(spec.base.train, ResolveTrainConfig(a.train, nullptr));
  KGMIA_RETURN_IF_ERROR(ApplyRunFlags(a.run, &spec.base));
  KGMIA_RETURN_IF_ERROR(ApplyAttackFlags(a.attack, &spec.base));
  spec.base.attack = AttackKind::kTransfer;
  for (const std::string& entry : a.data) {
    // "name=path" or a bare path named by its stem.
    const size_t eq = entry.find('=');
    const std::string path = eq == std::string::npos ? entry : entry.substr(eq + 1);
    const std::string name = eq == std::string::npos ? Stem(entry) : entry.substr(0, eq);
    KGMIA_ASSIGN_OR_RETURN(TripleStore store, LoadTsv(path));
    spec.datasets.push_back({name, std::make_shared<const TripleStore>(std::move(store))});
    spec.base.dataset_paths.push_back(path);
  }
  for (const std::string& m : a.models) {
    KGMIA_ASSIGN_OR_RETURN(ModelKind k, ParseModelKind(m));
    spec.models.push_back(k);
  }
  if (!a.model_lr.empty()) {
    if (spec.models.empty()) spec.models.push_back(spec.base.train.model);
    for (ModelKind k : spec.models) {
      spec.model_configs.push_back(ConfigForModel(spec.base.train, k));
    }
    for (const std::string& entry : a.model_lr) {
      const size_t eq = entry.find('=');
      double lr = 0;
      if (eq == std::string::npos || !ParseDouble(entry.substr(eq + 1), &lr)) {
        return absl::InvalidArgumentError(
            StrCat("--model-lr expects KIND=RATE, got ", entry));
      }
      KGMIA_ASSIGN_OR_RETURN(ModelKind k, ParseModelKind(entry.substr(0, eq)));
      bool found = false;
      for (size_t i = 0; i < spec.models.size(); ++i) {
        if (spec.models[i] == k) {
          spec.model_configs[i].learning_rate = lr;
          found = true;
        }
      }
      if (!found) {
        return absl::InvalidArgumentError(
            StrCat("--model-lr names ", entry.substr(0, eq), ", not in --models"));
      }
    }
  }
  KGMIA_ASSIGN_OR_RETURN(AblationGrid grid, RunAblation(spec));
  const std::string stem = StrCat("ablation_", AblationAxisName(spec.axis));
  const std::string heat = FormatHeatTable(grid);
  const std::pair<std::string, std::string> files[] = {
      {stem + "_matrix.csv", FormatAblationMatrixCsv(grid)},
      {stem + "_cells.csv", FormatAblationCellsCsv(grid)},
      {stem + "_heat.txt", heat}};
  for (const auto& [name, data] : files) {
    KGMIA_ASSIGN_OR_RETURN(std::string path, OutputPath(a.run.out, name));
    KGMIA_RETURN_IF_ERROR(WriteStringToFile(path, data));
  }
  out << heat;
  size_t failed = 0;
  for (const auto& row : grid.cells) {
    for (const AblationCell& cell : row) failed += cell.ok ? 0 : 1;
  }
  if (failed > 0) out << failed << " cell(s) failed; see " << stem << "_cells.csv\n";
  out << "grid written to " << a.run.out << "\n";
  return absl::OkStatus();
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string out;
};

absl::Status CmdReport(const ReportArgs& a, std::ostream& out) {
  std::vector<AttackReport> all;
  for (const std::string& path : a.inputs) {
    KGMIA_ASSIGN_OR_RETURN(std::string text, ReadFileToString(path));
    auto rows = ParseReportCsv(text);
    if (!rows.ok()) {
      return absl::Status(rows.status().code(),
                          StrCat(path, ": ", std::string(rows.status().message())));
    }
    all.insert(all.end(), rows->begin(), rows->end());
  }
  const std::string md = FormatMarkdownSummary(all);
  out << md;
  if (!a.out.empty()) {
    KGMIA_ASSIGN_OR_RETURN(std::string path, OutputPath(a.out, "summary.md"));
    KGMIA_RETURN_IF_ERROR(WriteStringToFile(path, md));
    KGMIA_ASSIGN_OR_RETURN(path, OutputPath(a.out, "reports.csv"));
    KGMIA_RETURN_IF_ERROR(WriteStringToFile(path, FormatReportCsv(all)));
  }
  return absl::OkStatus();
}

struct HistogramArgs {
  std::string split;
  std::string model_file;
  uint32_t bins = 20;
  std::string out;
};

absl::Status CmdHistogram(const HistogramArgs& a, std::ostream& out) {
  KGMIA_ASSIGN_OR_RETURN(LoadedSplit split, LoadSplitDir(a.split));
  KGMIA_ASSIGN_OR_RETURN(KgeModel model, LoadModel(a.model_file));
  TargetOracle oracle = TargetOracle::FromModel(std::move(model));
  KGMIA_ASSIGN_OR_RETURN(
      ScoreHistogram h, ScoreHistogramOf(oracle, split.plan.target_train,
                                         split.plan.target_test, a.bins));
  KGMIA_ASSIGN_OR_RETURN(std::string path, OutputPath(a.out, "histogram.csv"));
  KGMIA_RETURN_IF_ERROR(WriteStringToFile(path, FormatHistogramCsv(h)));
  out << fmt::format("scores in [{:.6f}, {:.6f}], {} of {} bins hold both sets\n",
                     h.edges.front(), h.edges.back(), h.OverlappingBins(),
                     a.bins);
  out << "histogram written to " << path << "\n";
  return absl::OkStatus();
}

// ---- config files --------------------------------------------------------------

// Turns "--config FILE" into flags. Keys already given on the command line
// are skipped so flags win.
absl::StatusOr<std::vector<std::string>> ExpandConfig(
    const std::vector<std::string>& args) {
  std::string config_path;
  std::set<std::string> given;
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const std::string key = a.substr(2, a.find('=') - 2);
    given.insert(key);
    if (key != "config") continue;
    if (a.find('=') != std::string::npos) {
      config_path = a.substr(a.find('=') + 1);
    } else if (i + 1 < args.size()) {
      config_path = args[i + 1];
    }
  }
  if (config_path.empty()) return args;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(config_path);
  } catch (const CLI::FileError&) {
    return absl::NotFoundError(StrCat("cannot read config file ", config_path));
  } catch (const CLI::ParseError& e) {
    return absl::InvalidArgumentError(StrCat(config_path, ": ", e.what()));
  }
  std::vector<std::string> out = args;
  for (const CLI::ConfigItem& item : items) {
    if (!item.parents.empty() && item.parents != std::vector<std::string>{"default"}) {
      return absl::InvalidArgumentError(
          StrCat(config_path, ": sections are not supported (key ", item.name, ")"));
    }
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (given.contains(item.name)) continue;
    out.push_back("--" + item.name);
    for (const std::string& v : item.inputs) out.push_back(v);
  }
  return out;
}

std::string OneLine(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\t', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

void PrintError(std::ostream& err, absl::StatusCode code, std::string_view msg) {
  err << "error\t" << absl::StatusCodeToString(code) << "\t" << OneLine(msg)
      << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& raw_args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Membership inference attacks against knowledge graph embeddings",
               "kgmia"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");
  std::string config_unused;
  auto add_config = [&config_unused](CLI::App* sub) {
    sub->add_option("--config", config_unused,
                    "key=value file of flag defaults; flags win");
  };

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "write a synthetic KG as TSV");
  synth_cmd->add_option("--entities", synth.config.entities)->capture_default_str();
  synth_cmd->add_option("--relations", synth.config.relations)->capture_default_str();
  synth_cmd->add_option("--triples", synth.config.triples)->capture_default_str();
  synth_cmd->add_option("--zipf", synth.config.zipf_exponent,
                        "entity popularity exponent")
      ->capture_default_str();
  AddSeedFlag(synth_cmd, &synth.config.seed);
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--name", synth.name, "file name")->capture_default_str();
  add_config(synth_cmd);

  SplitArgs split;
  CLI::App* split_cmd = app.add_subcommand(
      "split", "split a KG into target/shadow train/test parts");
  split_cmd->add_option("--data", split.data, "TSV file(s), merged");
  split_cmd->add_option("--pre-split", split.pre_split,
                        "four TSV files: target_train target_test "
                        "shadow_train shadow_test")
      ->expected(4);
  AddSeedFlag(split_cmd, &split.seed);
  split_cmd->add_option("--out", split.out, "split directory")->required();
  add_config(split_cmd);

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "train a model on a split part");
  train_cmd->add_option("--split", train.split, "split directory")->required();
  train_cmd->add_option("--part", train.part, "target_train or shadow_train")
      ->capture_default_str();
  train_cmd->add_option("--name", train.name, "model file name")->capture_default_str();
  AddTrainFlags(train_cmd, &train.train);
  AddRunFlags(train_cmd, &train.run, true);
  add_config(train_cmd);

  CalibrateArgs calibrate;
  CLI::App* calibrate_cmd = app.add_subcommand(
      "calibrate", "fit classification thresholds and report the overfit level");
  calibrate_cmd->add_option("--split", calibrate.split)->required();
  calibrate_cmd->add_option("--model-file", calibrate.model_file)->required();
  calibrate_cmd->add_option("--name", calibrate.name)->capture_default_str();
  AddRunFlags(calibrate_cmd, &calibrate.run, true);
  add_config(calibrate_cmd);

  AttackArgs attack;
  CLI::App* attack_cmd = app.add_subcommand(
      "attack", "run TA, PLA or PCA against a saved target model");
  attack_cmd->add_option("kind", attack.kind, "ta, pla or pca")
      ->required()
      ->check(CLI::IsMember({"ta", "pla", "pca"}, CLI::ignore_case));
  attack_cmd->add_option("--split", attack.split)->required();
  attack_cmd->add_option("--model-file", attack.model_file, "target model")->required();
  attack_cmd->add_option("--calibration", attack.calibration,
                         "threshold TSV (default: calibrate now)");
  attack_cmd->add_option("--shadow-file", attack.shadow_file,
                         "trained shadow model for TA (default: train one)");
  AddTrainFlags(attack_cmd, &attack.train);
  AddRunFlags(attack_cmd, &attack.run, true);
  AddAttackFlags(attack_cmd, &attack.attack);
  add_config(attack_cmd);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "split, train, calibrate and attack in one go");
  run_cmd->add_option("--data", run.data, "TSV file(s)")->required();
  run_cmd->add_option("--attack", run.attack, "ta, pla or pca")
      ->capture_default_str()
      ->check(CLI::IsMember({"ta", "pla", "pca"}, CLI::ignore_case));
  AddTrainFlags(run_cmd, &run.train);
  AddRunFlags(run_cmd, &run.run, true);
  AddAttackFlags(run_cmd, &run.attack_flags);
  add_config(run_cmd);

  AblateArgs ablate;
  CLI::App* ablate_cmd = app.add_subcommand(
      "ablate", "transfer attacks with mismatched shadow dataset or model");
  ablate_cmd->add_option("axis", ablate.axis, "dataset or model")
      ->required()
      ->check(CLI::IsMember({"dataset", "model"}, CLI::ignore_case));
  ablate_cmd->add_option("--data", ablate.data, "[name=]path, one per dataset")
      ->required();
  ablate_cmd->add_option("--models", ablate.models, "comma-separated kinds")
      ->delimiter(',');
  ablate_cmd->add_option("--model-lr", ablate.model_lr,
                         "KIND=RATE learning rate per model");
  AddTrainFlags(ablate_cmd, &ablate.train);
  AddRunFlags(ablate_cmd, &ablate.run, true);
  AddAttackFlags(ablate_cmd, &ablate.attack);
  add_config(ablate_cmd);

  ReportArgs report;
  CLI::App* report_cmd = app.add_subcommand(
      "report", "summarize report CSVs as a markdown table");
  report_cmd->add_option("--in", report.inputs, "report CSV files")->required();
  report_cmd->add_option("--out", report.out, "also write summary.md here");
  add_config(report_cmd);

  HistogramArgs histogram;
  CLI::App* histogram_cmd = app.add_subcommand(
      "histogram", "member vs non-member score histogram of a target");
  histogram_cmd->add_option("--split", histogram.split)->required();
  histogram_cmd->add_option("--model-file", histogram.model_file)->required();
  histogram_cmd->add_option("--bins", histogram.bins)->capture_default_str();
  histogram_cmd->add_option("--out", histogram.out)->required();
  add_config(histogram_cmd);

  absl::StatusOr<std::vector<std::string>> args = ExpandConfig(raw_args);
  if (!args.ok()) {
    PrintError(err, args.status().code(), std::string(args.status().message()));
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args->rbegin(), args->rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    PrintError(err, absl::StatusCode::kInvalidArgument, e.what());
    return kExitUsage;
  }

  absl::Status status;
  if (synth_cmd->parsed()) status = CmdSynth(synth, out);
  if (split_cmd->parsed()) status = CmdSplit(split, out);
  if (train_cmd->parsed()) status = CmdTrain(train, out);
  if (calibrate_cmd->parsed()) status = CmdCalibrate(calibrate, out);
  if (attack_cmd->parsed()) status = CmdAttack(attack, out);
  if (run_cmd->parsed()) status = CmdRun(run, out);
  if (ablate_cmd->parsed()) status = CmdAblate(ablate, out);
  if (report_cmd->parsed()) status = CmdReport(report, out);
  if (histogram_cmd->parsed()) status = CmdHistogram(histogram, out);
  if (!status.ok()) {
    PrintError(err, status.code(), std::string(status.message()));
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace kgmia
