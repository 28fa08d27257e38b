#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "occelm/dataset.hpp"
#include "occelm/threshold.hpp"

namespace occelm {

/// Target is the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

/// Measures in percent. Undefined ratios (0/0) are NaN, and NaN carries
/// through aggregation. `auc` is (sensitivity + specificity) / 2 at the
/// fitted threshold, not the area under a ROC curve.
struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  double auc = 0.0;
  double std_auc = 0.0;
  int run_count = 1;
};

ConfusionCounts confuse(std::span<const Decision> decisions, std::span<const Label> labels);
EvalReport measures(const ConfusionCounts& c);
EvalReport aggregate(std::span<const EvalReport> runs);

/// "dataset,classifier,variant,F1,ACC,AUC,Std_AUC"
std::string report_header();
std::string report_row(const std::string& dataset, const std::string& classifier,
                       const std::string& variant, const EvalReport& report);

}  // namespace occelm
