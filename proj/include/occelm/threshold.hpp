#pragma once

#include <Eigen/Dense>

#include <span>
#include <string_view>

namespace occelm {

enum class ThresholdKind { thr1, thr2, thr3 };

struct ThresholdSpec {
  ThresholdKind kind = ThresholdKind::thr1;
  double fracrej = 0.1;      // thr1: fraction of training targets rejected
  double std_mult = 0.2;     // thr2: mean + std_mult * std
  double condn1 = 0.5;       // thr3: per-feature relative error cut
  double condn2_frac = 0.1;  // thr3: tolerated fraction of badly reconstructed features

  void validate() const;
};

/// One accept/reject verdict. `score` grows with anomaly; for scalar
/// thresholds is_target == (score < thresh).
struct Decision {
  bool is_target = false;
  double score = 0.0;
  double thresh = 0.0;
};

/// Descending sort, 1-based index max(1, round(fracrej * N)).
double thr1_fit(std::span<const double> errors, double fracrej);
/// mean(E) + std_mult * sample_std(E).
double thr2_fit(std::span<const double> errors, double std_mult = 0.2);

/// |a - p| / |a + p| per feature; a vanishing denominator gives 0 for an
/// exact reconstruction and 1 otherwise.
double modified_relative_error(double actual, double predicted);

/// Target iff the number of features with relative error >= condn1 is at
/// most condn2_frac * n.
Decision thr3_decide(std::span<const double> actual, std::span<const double> predicted, double condn1,
                     double condn2_frac);
Decision thr3_decide(const Eigen::Ref<const Eigen::RowVectorXd>& actual,
                     const Eigen::Ref<const Eigen::RowVectorXd>& predicted, double condn1,
                     double condn2_frac);

inline Decision apply_threshold(double score, double thresh) { return {score < thresh, score, thresh}; }

std::string_view to_string(ThresholdKind kind);
ThresholdKind parse_threshold_kind(std::string_view text);

}  // namespace occelm
