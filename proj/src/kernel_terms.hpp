#pragma once

// Per-element formulas shared by the parallel and serial kernels.

#include <Eigen/Dense>

#include <cmath>

namespace occelm::kernels::detail {

inline double dot(const Eigen::MatrixXd& A, Eigen::Index i, const Eigen::MatrixXd& B, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index l = 0; l < A.cols(); ++l) s += A(i, l) * B(j, l);
  return s;
}

inline double squared_distance(const Eigen::MatrixXd& A, Eigen::Index i, const Eigen::MatrixXd& B,
                               Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index l = 0; l < A.cols(); ++l) {
    const double d = A(i, l) - B(j, l);
    s += d * d;
  }
  return s;
}

inline double sigmoid_term(const Eigen::MatrixXd& X, Eigen::Index i, const Eigen::MatrixXd& W,
                           const Eigen::VectorXd& b, Eigen::Index k) {
  return 1.0 / (1.0 + std::exp(-(dot(X, i, W, k) + b(k))));
}

inline double rbf_node_term(const Eigen::MatrixXd& X, Eigen::Index i, const Eigen::MatrixXd& W,
                            const Eigen::VectorXd& b, Eigen::Index k) {
  return std::exp(-b(k) * squared_distance(X, i, W, k));
}

inline double rbf_term(const Eigen::MatrixXd& A, Eigen::Index i, const Eigen::MatrixXd& B,
                       Eigen::Index j, double inv_two_sigma_sq) {
  return std::exp(-squared_distance(A, i, B, j) * inv_two_sigma_sq);
}

inline double polynomial_term(const Eigen::MatrixXd& A, Eigen::Index i, const Eigen::MatrixXd& B,
                              Eigen::Index j, double degree, double offset) {
  return std::pow(dot(A, i, B, j) + offset, degree);
}

inline double wavelet_term(const Eigen::MatrixXd& A, Eigen::Index i, const Eigen::MatrixXd& B,
                           Eigen::Index j, double a, double b, double c) {
  double prod = 1.0;
  for (Eigen::Index l = 0; l < A.cols(); ++l) {
    const double d = A(i, l) - B(j, l);
    prod *= std::cos(a * d / b) * std::exp(-d * d / c);
  }
  return prod;
}

inline double product_term(const Eigen::MatrixXd& K, Eigen::Index i, const Eigen::MatrixXd& B,
                           Eigen::Index c) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < K.cols(); ++j) s += K(i, j) * B(j, c);
  return s;
}

}  // namespace occelm::kernels::detail
