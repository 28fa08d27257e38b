#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "occelm/classifier.hpp"
#include "occelm/threshold.hpp"

namespace occelm {

/// Candidate values per hyperparameter, each listed in ascending order. An
/// empty axis keeps the base parameter fixed.
struct GridAxes {
  std::vector<double> sigma;
  std::vector<double> C;
  std::vector<Eigen::Index> hidden;
  std::vector<double> degree;
  std::vector<std::array<double, 3>> wavelet;  // (a, b, c)
};

struct SelectionConfig {
  int folds = 5;
  double sigma_thr = 2.0;
  double fracrej = 0.1;
  ParamSet base;
  GridAxes grid;
  std::uint64_t rng_seed = 0;
};

/// Upper bound on the acceptable validation rejection rate:
/// fracrej + sigma_thr * sqrt(fracrej (1 - fracrej) / M).
double error_threshold(double fracrej, double sigma_thr, double M);

/// `count` log-spaced values between the smallest nonzero and the largest
/// pairwise distance among the rows of X.
std::vector<double> sigma_grid(const Eigen::MatrixXd& X, int count = 20);

/// 1e-8, 1e-7, ..., 1e8.
std::vector<double> c_grid();

/// Cartesian product of the axes in complexity order: smaller sigma, more
/// hidden nodes, higher degree and tighter wavelets first; then larger C.
std::vector<ParamSet> enumerate_grid(const ParamSet& base, const GridAxes& axes);

/// Fold id of every row: seeded shuffle, then round robin.
std::vector<int> assign_folds(Eigen::Index N, int folds, std::uint64_t seed);

/// Trains on `fit` and returns one decision per row of `held_out`.
using FoldTrainer =
    std::function<std::vector<Decision>(const Eigen::MatrixXd& fit, const Eigen::MatrixXd& held_out,
                                        const ParamSet& params)>;

struct SelectionRow {
  ParamSet params;
  double rejection = 1.0;  // mean target rejection over folds
  bool consistent = false;
  std::string error;       // non-empty when training failed for this combination
};

struct SelectionResult {
  ParamSet chosen;
  double chosen_rejection = 1.0;
  /// False when no combination met err_thr; `chosen` then has the lowest rejection.
  bool consistent = false;
  double err_thr = 0.0;
  Eigen::Index M = 0;
  /// Index (in complexity order) of the chosen row; a linear search that
  /// stops at the first consistent combination lands on the same row.
  std::size_t chosen_index = 0;
  std::vector<SelectionRow> rows;
};

/// Consistency-based model selection over targets X (rows).
SelectionResult select(const FoldTrainer& trainer, const Eigen::MatrixXd& X, const SelectionConfig& cfg);

/// Number of `select` calls made by this process.
std::size_t selection_call_count();

/// Mean rejection of `params` over the folds `select` would use.
double replay_rejection(const FoldTrainer& trainer, const Eigen::MatrixXd& X, const SelectionConfig& cfg,
                        const ParamSet& params);

/// Standard axes for a variant: sigma grid from the normalised targets, the
/// full C grid, hidden widths {20, 50, 100, 200} no larger than the fold
/// training size, polynomial degrees {2, 3}.
GridAxes default_axes(const VariantId& variant, KernelKind kernel, const Eigen::MatrixXd& X, int folds);

/// Trainer for one variant: the classifier config is copied per call.
FoldTrainer make_trainer(const ClassifierConfig& base);

/// CSV with one row per combination: params, rejection, consistent, chosen.
std::string selection_csv(const SelectionResult& result, const VariantId& variant);

}  // namespace occelm
