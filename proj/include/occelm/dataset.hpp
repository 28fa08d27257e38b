#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace occelm {

enum class Label { target, outlier };

/// Row-major sample matrix (one sample per row) with optional labels.
struct Dataset {
  Eigen::MatrixXd samples;
  std::optional<std::vector<Label>> labels;
  std::vector<std::string> feature_names;

  std::size_t sample_count() const { return static_cast<std::size_t>(samples.rows()); }
  std::size_t feature_count() const { return static_cast<std::size_t>(samples.cols()); }

  /// Rows labelled target (all rows when unlabelled).
  Eigen::MatrixXd targets() const;
  std::size_t count(Label label) const;
};

enum class Scaling { zscore, minmax };

/// Per-feature normalisation statistics. For z-score, `mean` and `std` hold the
/// sample mean and sample standard deviation (ddof = 1). For the optional
/// min-max rescale they hold the column minimum and range.
struct ZScoreStats {
  Scaling scaling = Scaling::zscore;
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  static ZScoreStats identity(Eigen::Index n);
};

struct SplitPlan {
  int run_count = 20;
  double target_train_fraction = 0.5;
  std::uint64_t rng_seed = 0;
};

struct Split {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;  // row indices into the source dataset
  std::vector<std::size_t> test_rows;
};

/// Parses a label token: "+1"/"1"/"target" or "-1"/"0"/"outlier".
std::optional<Label> parse_label(std::string_view token);

/// `label_column` is a 0-based column index; negative values count from the
/// end (-1 is the last column).
Dataset load_csv(const std::filesystem::path& path, std::optional<int> label_column);
Dataset parse_csv(std::string_view text, std::optional<int> label_column);

/// Writes features and, when present, a trailing "label" column.
void save_csv(const std::filesystem::path& path, const Dataset& data);
std::string format_csv(const Dataset& data);

ZScoreStats zscore_fit(const Eigen::MatrixXd& train, Scaling scaling = Scaling::zscore);
Eigen::MatrixXd zscore_apply(const Eigen::MatrixXd& data, const ZScoreStats& stats);

inline ZScoreStats zscore_fit(const Dataset& train, Scaling scaling = Scaling::zscore) {
  return zscore_fit(train.samples, scaling);
}
Dataset zscore_apply(const Dataset& data, const ZScoreStats& stats);

/// Round-half-up of fraction * count, the size of the training part.
std::size_t train_size(double fraction, std::size_t count);

Split occ_split(const Dataset& data, const SplitPlan& plan, int run_index);

Dataset gen_banana(std::size_t count, double noise_std, std::uint64_t seed, int lobes = 1);
Dataset gen_ring(std::size_t count, double radius, double noise_std, std::uint64_t seed);

/// Radius of the banana backbone arc.
inline constexpr double kBananaRadius = 5.0;

}  // namespace occelm
