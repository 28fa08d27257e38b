#include "occelm/metrics.hpp"

#include <cmath>
#include <limits>

#include "occelm/error.hpp"
#include "occelm/format.hpp"

namespace occelm {

namespace {

double percent(std::size_t num, std::size_t den) {
  if (den == 0) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confuse(std::span<const Decision> decisions, std::span<const Label> labels) {
  if (decisions.size() != labels.size() || decisions.empty())
    throw Error(ErrorCode::LengthMismatch, std::to_string(decisions.size()) + " decisions vs " +
                                               std::to_string(labels.size()) + " labels");
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool truth = labels[i] == Label::target;
    const bool predicted = decisions[i].is_target;
    if (predicted && truth) ++c.tp;
    else if (predicted) ++c.fp;
    else if (truth) ++c.fn;
    else ++c.tn;
  }
  return c;
}

EvalReport measures(const ConfusionCounts& c) {
  EvalReport r;
  r.precision = percent(c.tp, c.tp + c.fp);
  r.recall = percent(c.tp, c.tp + c.fn);
  r.specificity = percent(c.tn, c.tn + c.fp);
  const double sum = r.precision + r.recall;
  r.f1 = sum == 0.0 ? std::numeric_limits<double>::quiet_NaN() : 2.0 * r.precision * r.recall / sum;
  r.accuracy = percent(c.tp + c.tn, c.total());
  r.auc = 0.5 * (r.recall + r.specificity);
  r.std_auc = 0.0;
  r.run_count = 1;
  return r;
}

EvalReport aggregate(std::span<const EvalReport> runs) {
  if (runs.empty()) throw Error(ErrorCode::EmptyRuns, "nothing to aggregate");
  EvalReport out{};
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    out.precision += r.precision;
    out.recall += r.recall;
    out.specificity += r.specificity;
    out.f1 += r.f1;
    out.accuracy += r.accuracy;
    out.auc += r.auc;
  }
  out.precision /= n;
  out.recall /= n;
  out.specificity /= n;
  out.f1 /= n;
  out.accuracy /= n;
  out.auc /= n;
  double ss = 0.0;
  for (const auto& r : runs) ss += (r.auc - out.auc) * (r.auc - out.auc);
  out.std_auc = runs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  out.run_count = static_cast<int>(runs.size());
  return out;
}

std::string report_header() { return "dataset,classifier,variant,F1,ACC,AUC,Std_AUC"; }

std::string report_row(const std::string& dataset, const std::string& classifier,
                       const std::string& variant, const EvalReport& report) {
  return dataset + "," + classifier + "," + variant + "," + format_fixed(report.f1, 2) + "," +
         format_fixed(report.accuracy, 2) + "," + format_fixed(report.auc, 2) + "," +
         format_fixed(report.std_auc, 2);
}

}  // namespace occelm
