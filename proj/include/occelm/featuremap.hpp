#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace occelm {

enum class NodeType { additive_sigmoid, rbf };

/// Random, fixed hidden layer of an ELM. For additive nodes W holds input
/// weights and b biases; for RBF nodes W holds centres and b impact factors.
struct HiddenLayer {
  NodeType node_type = NodeType::additive_sigmoid;
  Eigen::MatrixXd W;  // m x n
  Eigen::VectorXd b;  // m

  Eigen::Index hidden() const { return W.rows(); }
  Eigen::Index inputs() const { return W.cols(); }
};

enum class KernelKind { random, rbf, linear, polynomial, wavelet };

struct KernelSpec {
  KernelKind kind = KernelKind::rbf;
  double sigma = 1.0;     // rbf bandwidth
  double degree = 2.0;    // polynomial
  double offset = 1.0;    // polynomial
  double wavelet_a = 1.75;
  double wavelet_b = 1.0;
  double wavelet_c = 2.0;

  /// Checks the parameter domains; throws InvalidArgument.
  void validate() const;
};

HiddenLayer hidden_init(NodeType node_type, Eigen::Index m, Eigen::Index n, std::uint64_t seed);

Eigen::MatrixXd hidden_apply(const HiddenLayer& layer, const Eigen::MatrixXd& X);

/// Omega = H * H^T, the "random kernel" of a random feature map.
Eigen::MatrixXd random_kernel_gram(const Eigen::MatrixXd& H);

/// K[i,j] = k(a_i, b_j). Random kernels go through hidden_apply instead.
Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

std::string_view to_string(NodeType type);
std::string_view to_string(KernelKind kind);
NodeType parse_node_type(std::string_view text);
KernelKind parse_kernel_kind(std::string_view text);

/// Kind-specific parameter list: rbf {sigma}, polynomial {degree, offset},
/// wavelet {a, b, c}, linear/random {}.
std::vector<double> kernel_params(const KernelSpec& spec);
KernelSpec make_kernel(KernelKind kind, const std::vector<double>& params);

}  // namespace occelm
