#include "occelm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernel_terms.hpp"

namespace occelm::kernels {

namespace {

template <typename Term>
Eigen::MatrixXd fill(Eigen::Index rows, Eigen::Index cols, Term term) {
  Eigen::MatrixXd out(rows, cols);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = term(i, j);
  return out;
}

}  // namespace

Eigen::MatrixXd sigmoid_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                                 const Eigen::VectorXd& b) {
  return fill(X.rows(), W.rows(),
              [&](Eigen::Index i, Eigen::Index k) { return detail::sigmoid_term(X, i, W, b, k); });
}

Eigen::MatrixXd rbf_features(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                             const Eigen::VectorXd& b) {
  return fill(X.rows(), W.rows(),
              [&](Eigen::Index i, Eigen::Index k) { return detail::rbf_node_term(X, i, W, b, k); });
}

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double sigma) {
  const double scale = 1.0 / (2.0 * sigma * sigma);
  return fill(A.rows(), B.rows(),
              [&](Eigen::Index i, Eigen::Index j) { return detail::rbf_term(A, i, B, j, scale); });
}

Eigen::MatrixXd linear_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  return fill(A.rows(), B.rows(), [&](Eigen::Index i, Eigen::Index j) { return detail::dot(A, i, B, j); });
}

Eigen::MatrixXd polynomial_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double degree,
                                double offset) {
  return fill(A.rows(), B.rows(), [&](Eigen::Index i, Eigen::Index j) {
    return detail::polynomial_term(A, i, B, j, degree, offset);
  });
}

Eigen::MatrixXd wavelet_gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double a,
                             double b, double c) {
  return fill(A.rows(), B.rows(), [&](Eigen::Index i, Eigen::Index j) {
    return detail::wavelet_term(A, i, B, j, a, b, c);
  });
}

std::pair<double, double> distance_range(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : lo) reduction(max : hi)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = detail::squared_distance(X, i, X, j);
      if (d2 > 0.0) lo = std::min(lo, d2);
      hi = std::max(hi, d2);
    }
  }
  if (hi == 0.0) return {0.0, 0.0};
  return {std::sqrt(lo), std::sqrt(hi)};
}

Eigen::MatrixXd multiply(const Eigen::MatrixXd& K, const Eigen::MatrixXd& B) {
  return fill(K.rows(), B.cols(),
              [&](Eigen::Index i, Eigen::Index c) { return detail::product_term(K, i, B, c); });
}

}  // namespace occelm::kernels
