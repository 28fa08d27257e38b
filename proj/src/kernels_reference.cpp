#include <algorithm>
#include <cmath>
#include <limits>

#include "kernel_terms.hpp"
#include "occelm/kernels.hpp"

namespace occelm::kernels::reference {

Eigen::MatrixXd sigmoid_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                                 const Eigen::VectorXd& b) {
  Eigen::MatrixXd H(X.rows(), W.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index k = 0; k < W.rows(); ++k) H(i, k) = detail::sigmoid_term(X, i, W, b, k);
  return H;
}

Eigen::MatrixXd rbf_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                             const Eigen::VectorXd& b) {
  Eigen::MatrixXd H(X.rows(), W.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index k = 0; k < W.rows(); ++k) H(i, k) = detail::rbf_node_term(X, i, W, b, k);
  return H;
}

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double sigma) {
  const double scale = 1.0 / (2.0 * sigma * sigma);
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j) K(i, j) = detail::rbf_term(A, i, B, j, scale);
  return K;
}

Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j) K(i, j) = detail::dot(A, i, B, j);
  return K;
}

Eigen::MatrixXd polynomial_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double degree,
                                double offset) {
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j)
      K(i, j) = detail::polynomial_term(A, i, B, j, degree, offset);
  return K;
}

Eigen::MatrixXd wavelet_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double a,
                             double b, double c) {
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j) K(i, j) = detail::wavelet_term(A, i, B, j, a, b, c);
  return K;
}

std::pair<double, double> distance_range(const Eigen::MatrixXd& X) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = i + 1; j < X.rows(); ++j) {
      const double d2 = detail::squared_distance(X, i, X, j);
      if (d2 > 0.0) lo = std::min(lo, d2);
      hi = std::max(hi, d2);
    }
  if (hi == 0.0) return {0.0, 0.0};
  return {std::sqrt(lo), std::sqrt(hi)};
}

Eigen::MatrixXd multiply(const Eigen::MatrixXd& K, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd out(K.rows(), B.cols());
  for (Eigen::Index i = 0; i < K.rows(); ++i)
    for (Eigen::Index c = 0; c < B.cols(); ++c) out(i, c) = detail::product_term(K, i, B, c);
  return out;
}

}  // namespace occelm::kernels::reference
