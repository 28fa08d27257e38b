#pragma once

#include <Eigen/Dense>

#include <utility>

// Dense inner loops shared by training, scoring and model selection.
// Each kernel has an OpenMP version (occelm::kernels) and a plain serial
// version (occelm::kernels::reference) kept for tests and benchmarks.
// Both compute every output element with the same operation order, so
// their results agree bit for bit.

namespace occelm::kernels {

/// H[i,k] = 1 / (1 + exp(-(W[k]·x_i + b[k])))
Eigen::MatrixXd sigmoid_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                                 const Eigen::VectorXd& b);
/// H[i,k] = exp(-b[k] * ||x_i - W[k]||^2)
Eigen::MatrixXd rbf_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                             const Eigen::VectorXd& b);

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double sigma);
Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
Eigen::MatrixXd polynomial_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double degree,
                                double offset);
Eigen::MatrixXd wavelet_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double a,
                             double b, double c);

/// Smallest nonzero and largest pairwise Euclidean distance between rows.
/// Returns {0, 0} when all rows coincide.
std::pair<double, double> distance_range(const Eigen::MatrixXd& X);

/// K * B with a fixed left-to-right summation per element, so a row's result
/// never depends on how many other rows are in the batch.
Eigen::MatrixXd multiply(const Eigen::MatrixXd& K, const Eigen::MatrixXd& B);

}  // namespace occelm::kernels

namespace occelm::kernels::reference {

Eigen::MatrixXd sigmoid_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                                 const Eigen::VectorXd& b);
Eigen::MatrixXd rbf_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                             const Eigen::VectorXd& b);
Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double sigma);
Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
Eigen::MatrixXd polynomial_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double degree,
                                double offset);
Eigen::MatrixXd wavelet_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double a,
                             double b, double c);
std::pair<double, double> distance_range(const Eigen::MatrixXd& X);
Eigen::MatrixXd multiply(const Eigen::MatrixXd& K, const Eigen::MatrixXd& B);

}  // namespace occelm::kernels::reference
