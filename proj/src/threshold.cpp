#include "occelm/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "occelm/error.hpp"

namespace occelm {

void ThresholdSpec::validate() const {
  if (!(fracrej >= 0.0 && fracrej < 1.0))
    throw Error(ErrorCode::InvalidArgument, "fracrej must be in [0, 1)");
  if (!(condn2_frac >= 0.0 && condn2_frac <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "condn2 fraction must be in [0, 1]");
}

double thr1_fit(std::span<const double> errors, double fracrej) {
  if (errors.empty()) throw Error(ErrorCode::EmptyErrors, "thr1 needs at least one error");
  if (!(fracrej >= 0.0 && fracrej < 1.0)) throw Error(ErrorCode::InvalidArgument, "fracrej must be in [0, 1)");
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double n = static_cast<double>(sorted.size());
  // round half away from zero; the argument is non-negative
  auto index = static_cast<std::size_t>(std::floor(fracrej * n + 0.5));
  index = std::clamp<std::size_t>(index, 1, sorted.size());
  return sorted[index - 1];
}

double thr2_fit(std::span<const double> errors, double std_mult) {
  if (errors.size() < 2) throw Error(ErrorCode::TooFewSamples, "thr2 needs at least two errors");
  const double n = static_cast<double>(errors.size());
  double mean = 0.0;
  for (double e : errors) mean += e;
  mean /= n;
  double ss = 0.0;
  for (double e : errors) ss += (e - mean) * (e - mean);
  return mean + std_mult * std::sqrt(ss / (n - 1.0));
}

double modified_relative_error(double actual, double predicted) {
  constexpr double eps = 1e-12;
  const double num = std::abs(actual - predicted);
  const double den = std::abs(actual + predicted);
  if (den < eps) return num < eps ? 0.0 : 1.0;
  return num / den;
}

Decision thr3_decide(std::span<const double> actual, std::span<const double> predicted, double condn1,
                     double condn2_frac) {
  if (actual.size() != predicted.size() || actual.empty())
    throw Error(ErrorCode::DimensionMismatch, "thr3 needs equal non-empty vectors, got " +
                                                  std::to_string(actual.size()) + " and " +
                                                  std::to_string(predicted.size()));
  std::size_t not_well = 0;
  for (std::size_t i = 0; i < actual.size(); ++i)
    if (modified_relative_error(actual[i], predicted[i]) >= condn1) ++not_well;
  const double n = static_cast<double>(actual.size());
  Decision d;
  d.score = static_cast<double>(not_well) / n;
  d.thresh = condn2_frac;
  d.is_target = static_cast<double>(not_well) <= condn2_frac * n;
  return d;
}

Decision thr3_decide(const Eigen::Ref<const Eigen::RowVectorXd>& actual,
                     const Eigen::Ref<const Eigen::RowVectorXd>& predicted, double condn1,
                     double condn2_frac) {
  const Eigen::RowVectorXd a = actual;
  const Eigen::RowVectorXd p = predicted;
  return thr3_decide(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                     std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), condn1,
                     condn2_frac);
}

std::string_view to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::thr1: return "thr1";
    case ThresholdKind::thr2: return "thr2";
    case ThresholdKind::thr3: return "thr3";
  }
  return "?";
}

ThresholdKind parse_threshold_kind(std::string_view text) {
  if (text == "thr1") return ThresholdKind::thr1;
  if (text == "thr2") return ThresholdKind::thr2;
  if (text == "thr3") return ThresholdKind::thr3;
  throw Error(ErrorCode::InvalidArgument, "unknown threshold '" + std::string(text) + "'");
}

}  // namespace occelm
