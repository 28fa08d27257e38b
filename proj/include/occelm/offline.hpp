#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <variant>
#include <vector>

#include "occelm/dataset.hpp"
#include "occelm/featuremap.hpp"
#include "occelm/threshold.hpp"

namespace occelm {

/// Boundary models map every target to the constant R and score |o - R|;
/// reconstruction (autoassociative) models reproduce the input and score the
/// reconstruction error.
enum class Family { boundary, reconstruction };

using FeatureMapping = std::variant<HiddenLayer, KernelSpec>;

struct OfflineConfig {
  Family family = Family::boundary;
  /// kind == random selects a random hidden layer of `hidden` nodes.
  KernelSpec kernel;
  NodeType node_type = NodeType::additive_sigmoid;
  Eigen::Index hidden = 100;
  double C = 1.0;
  ThresholdSpec tspec;
  double R = 1.0;
  /// false trains on the raw inputs (identity statistics).
  bool normalize = true;
  Scaling scaling = Scaling::zscore;
  std::uint64_t seed = 0;
};

struct OfflineModel {
  Family family = Family::boundary;
  FeatureMapping mapping;
  /// Random mapping: training hidden outputs H (N x m).
  /// Kernel mapping: normalised training samples (N x n).
  Eigen::MatrixXd basis;
  Eigen::MatrixXd beta;  // N x k, k = 1 (boundary) or n (reconstruction)
  double C = 1.0;
  ThresholdSpec tspec;
  /// Scalar cut for thr1/thr2; for thr3 it mirrors condn2_frac.
  double thresh = 0.0;
  double R = 1.0;
  ZScoreStats zstats;
  /// Per-training-row error under the model's error formula.
  Eigen::VectorXd train_errors;

  Eigen::Index input_dim() const { return zstats.mean.size(); }
  bool is_random() const { return std::holds_alternative<HiddenLayer>(mapping); }
};

const char* to_string(Family family);
Family parse_family(std::string_view text);

/// X holds target samples only, one per row, before normalisation.
OfflineModel train_offline(const Eigen::MatrixXd& X, const OfflineConfig& cfg);
/// OCELM / OCKELM. Rejects thr3.
OfflineModel train_boundary(const Eigen::MatrixXd& X, OfflineConfig cfg);
/// AAELM / AAKELM.
OfflineModel train_reconstruction(const Eigen::MatrixXd& X, OfflineConfig cfg);

/// Raw network outputs O for unnormalised inputs Y (rows x k).
Eigen::MatrixXd offline_outputs(const OfflineModel& model, const Eigen::MatrixXd& Y);

std::vector<Decision> score(const OfflineModel& model, const Eigen::MatrixXd& Y);

namespace detail {
/// Per-row errors/decisions shared by the offline and online families.
/// `inputs` are normalised samples, `outputs` the network outputs.
Eigen::VectorXd row_errors(Family family, const ThresholdSpec& tspec, double R,
                           const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& outputs);
std::vector<Decision> decide(Family family, const ThresholdSpec& tspec, double thresh, double R,
                             const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& outputs);
double fit_threshold(const ThresholdSpec& tspec, const Eigen::VectorXd& errors);
}  // namespace detail

}  // namespace occelm
