#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "occelm/dataset.hpp"
#include "occelm/featuremap.hpp"
#include "occelm/linsolve.hpp"
#include "occelm/offline.hpp"
#include "occelm/threshold.hpp"

namespace occelm {

struct OnlineOptions {
  double R = 1.0;
  /// Statistics applied to every incoming chunk; identity when omitted.
  std::optional<ZScoreStats> zstats;
  /// Keep normalised training rows so finalize can recompute every training
  /// error with the final beta. When false, the errors recorded as each chunk
  /// arrived are used instead (streaming mode, no row retention).
  bool retain_rows = true;
};

/// OS-OCELM (boundary) / OS-AAELM (reconstruction) state. Updates must be
/// serialised by the caller; a finalized model is immutable.
struct OnlineModel {
  Family family = Family::boundary;
  HiddenLayer layer;
  RlsState rls;
  double R = 1.0;
  std::int64_t seen_count = 0;
  /// Running per-sample errors: |o - R| (boundary) or squared reconstruction
  /// error. After finalize, the errors the threshold was fitted on.
  std::vector<double> train_errors;
  ThresholdSpec tspec;
  std::optional<double> thresh;
  ZScoreStats zstats;
  Eigen::Index N0 = 0;
  Eigen::Index block = 0;
  bool retain_rows = true;
  Eigen::MatrixXd retained;

  bool finalized() const { return thresh.has_value(); }
  Eigen::Index input_dim() const { return zstats.mean.size(); }
};

OnlineModel os_init(Family family, HiddenLayer layer, const Eigen::MatrixXd& X0,
                    const OnlineOptions& options = {});
void os_update(OnlineModel& model, const Eigen::MatrixXd& chunk);
void os_finalize(OnlineModel& model, const ThresholdSpec& tspec);
Eigen::MatrixXd os_outputs(const OnlineModel& model, const Eigen::MatrixXd& Y);
std::vector<Decision> os_score(const OnlineModel& model, const Eigen::MatrixXd& Y);

struct OnlineConfig {
  Family family = Family::boundary;
  NodeType node_type = NodeType::additive_sigmoid;
  Eigen::Index hidden = 20;
  /// 0 selects max(hidden, N / 10).
  Eigen::Index N0 = 0;
  Eigen::Index block = 0;
  ThresholdSpec tspec;
  double R = 1.0;
  bool normalize = true;
  Scaling scaling = Scaling::zscore;
  bool retain_rows = true;
  std::uint64_t seed = 0;
};

/// Default initial-chunk / block size: max(hidden, N / 10).
Eigen::Index default_chunk(Eigen::Index hidden, Eigen::Index N);

/// Full online pass over X: init on the first N0 rows, then blocks in order.
OnlineModel train_online(const Eigen::MatrixXd& X, const OnlineConfig& cfg);

}  // namespace occelm
