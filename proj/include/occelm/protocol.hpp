#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "occelm/classifier.hpp"
#include "occelm/dataset.hpp"
#include "occelm/metrics.hpp"
#include "occelm/modelsel.hpp"

namespace occelm {

/// Repeated target/outlier evaluation: every run draws a fresh split, trains
/// on half the targets and tests on the rest plus all outliers. Model
/// selection (when enabled) runs once, on run 0's training part, and its
/// choice is reused by every run.
struct BenchmarkSpec {
  std::string dataset_name;
  VariantId variant;
  int run_count = 20;
  double target_train_fraction = 0.5;
  bool select = true;
  KernelKind kernel = KernelKind::rbf;
  ParamSet params;  // used as-is without selection, as the base otherwise
  ThresholdSpec tspec;
  Scaling scaling = Scaling::zscore;
  int folds = 5;
  double sigma_thr = 2.0;
  std::uint64_t seed = 0;
};

struct RunResult {
  int run = 0;
  ConfusionCounts counts;
  EvalReport report;
  double train_seconds = 0.0;
};

struct BenchmarkResult {
  std::vector<RunResult> runs;  // sorted by run index
  EvalReport aggregate;
  ParamSet params;
  std::optional<SelectionResult> selection;
};

ClassifierConfig classifier_config(const BenchmarkSpec& spec, const ParamSet& params, std::uint64_t seed);

/// Seeds used for splits, folds and per-run hidden layers.
std::uint64_t split_seed(std::uint64_t seed);
std::uint64_t fold_seed(std::uint64_t seed);
std::uint64_t model_seed(std::uint64_t seed, int run);

/// Selection settings `run_benchmark` uses on the targets X.
SelectionConfig selection_config(const Eigen::MatrixXd& X, const BenchmarkSpec& spec);
SelectionResult run_selection(const Eigen::MatrixXd& X, const BenchmarkSpec& spec);

BenchmarkResult run_benchmark(const Dataset& data, const BenchmarkSpec& spec);

/// Per-run CSV (run, tp, fp, tn, fn, precision, recall, specificity, F1, ACC, AUC).
std::string runs_csv(const BenchmarkResult& result);

}  // namespace occelm
