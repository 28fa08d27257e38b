#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "occelm/offline.hpp"
#include "occelm/online.hpp"

namespace occelm {

enum class Method { ocelm, ockelm, aaelm, aakelm, os_ocelm, os_aaelm };

/// One of the thirteen named variants, e.g. "aakelm_thr3" or "os_ocelm_thr1_rbf".
struct VariantId {
  Method method = Method::ocelm;
  ThresholdKind threshold = ThresholdKind::thr1;
  NodeType node_type = NodeType::additive_sigmoid;  // online / random mappings

  bool online() const { return method == Method::os_ocelm || method == Method::os_aaelm; }
  bool kernelized() const { return method == Method::ockelm || method == Method::aakelm; }
  Family family() const;

  /// Canonical id, e.g. "os_aaelm_thr2_sig".
  std::string id() const;
  /// Report columns: classifier ("OS-AAELM") and variant ("Thr2(Sig)").
  std::string classifier_name() const;
  std::string variant_name() const;
};

/// Throws InvalidArgument for unknown ids and Thr3NotApplicable for boundary
/// methods combined with thr3.
VariantId parse_variant(std::string_view text);

/// The tunable hyperparameters of every variant.
struct ParamSet {
  double C = 1.0;
  KernelSpec kernel;         // kernelized methods
  Eigen::Index hidden = 100;  // random / online methods
  Eigen::Index N0 = 0;        // online: 0 = max(hidden, N/10)
  Eigen::Index block = 0;

  std::string describe(const VariantId& variant) const;
};

struct ClassifierConfig {
  VariantId variant;
  ParamSet params;
  ThresholdSpec tspec;  // kind is overwritten by variant.threshold
  double R = 1.0;
  Scaling scaling = Scaling::zscore;
  bool retain_rows = true;
  std::uint64_t seed = 0;
};

using Model = std::variant<OfflineModel, OnlineModel>;

/// Trains on target rows X (unnormalised).
Model train_classifier(const Eigen::MatrixXd& X, const ClassifierConfig& cfg);
std::vector<Decision> score(const Model& model, const Eigen::MatrixXd& Y);
Eigen::Index input_dim(const Model& model);

/// Default parameters for a variant when none are selected.
ParamSet default_params(const VariantId& variant);

}  // namespace occelm
