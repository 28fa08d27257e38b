#include "occelm/featuremap.hpp"

#include <cmath>

#include "occelm/error.hpp"
#include "occelm/kernels.hpp"
#include "occelm/random.hpp"

namespace occelm {

void KernelSpec::validate() const {
  switch (kind) {
    case KernelKind::rbf:
      if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "rbf sigma must be > 0");
      break;
    case KernelKind::polynomial:
      if (!(degree >= 1.0)) throw Error(ErrorCode::InvalidArgument, "polynomial degree must be >= 1");
      if (!(offset >= 0.0)) throw Error(ErrorCode::InvalidArgument, "polynomial offset must be >= 0");
      break;
    case KernelKind::wavelet:
      if (!(wavelet_a > 0.0 && wavelet_b > 0.0 && wavelet_c > 0.0))
        throw Error(ErrorCode::InvalidArgument, "wavelet parameters must be > 0");
      break;
    case KernelKind::linear:
    case KernelKind::random:
      break;
  }
}

HiddenLayer hidden_init(NodeType node_type, Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "hidden layer needs m >= 1 and n >= 1");
  Rng rng(seed);
  HiddenLayer layer;
  layer.node_type = node_type;
  layer.W.resize(m, n);
  layer.b.resize(m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index j = 0; j < n; ++j) layer.W(k, j) = rng.uniform(-1.0, 1.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (node_type == NodeType::additive_sigmoid) {
      layer.b(k) = rng.uniform(-1.0, 1.0);
    } else {
      // (0.05, 1]: flip the half-open draw so zero-width nodes never appear
      layer.b(k) = 1.0 - 0.95 * rng.uniform01();
    }
  }
  return layer;
}

Eigen::MatrixXd hidden_apply(const HiddenLayer& layer, const Eigen::MatrixXd& X) {
  if (X.cols() != layer.inputs())
    throw Error(ErrorCode::DimensionMismatch, "input has " + std::to_string(X.cols()) +
                                                  " features, layer expects " +
                                                  std::to_string(layer.inputs()));
  return layer.node_type == NodeType::additive_sigmoid ? kernels::sigmoid_features(X, layer.W, layer.b)
                                                       : kernels::rbf_features(X, layer.W, layer.b);
}

Eigen::MatrixXd random_kernel_gram(const Eigen::MatrixXd& H) {
  Eigen::MatrixXd omega = H * H.transpose();
  return omega;
}

Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.cols() != B.cols())
    throw Error(ErrorCode::DimensionMismatch, "kernel arguments have " + std::to_string(A.cols()) +
                                                  " and " + std::to_string(B.cols()) + " features");
  spec.validate();
  switch (spec.kind) {
    case KernelKind::rbf: return kernels::rbf_gram(A, B, spec.sigma);
    case KernelKind::linear: return kernels::linear_gram(A, B);
    case KernelKind::polynomial: return kernels::polynomial_gram(A, B, spec.degree, spec.offset);
    case KernelKind::wavelet:
      return kernels::wavelet_gram(A, B, spec.wavelet_a, spec.wavelet_b, spec.wavelet_c);
    case KernelKind::random: break;
  }
  throw Error(ErrorCode::InvalidArgument, "random kernels are built from a hidden layer");
}

std::string_view to_string(NodeType type) {
  return type == NodeType::additive_sigmoid ? "sig" : "rbf";
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::random: return "random";
    case KernelKind::rbf: return "rbf";
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "polynomial";
    case KernelKind::wavelet: return "wavelet";
  }
  return "?";
}

NodeType parse_node_type(std::string_view text) {
  if (text == "sig" || text == "sigmoid" || text == "additive" || text == "additive_sigmoid")
    return NodeType::additive_sigmoid;
  if (text == "rbf") return NodeType::rbf;
  throw Error(ErrorCode::InvalidArgument, "unknown node type '" + std::string(text) + "'");
}

KernelKind parse_kernel_kind(std::string_view text) {
  if (text == "random") return KernelKind::random;
  if (text == "rbf") return KernelKind::rbf;
  if (text == "linear") return KernelKind::linear;
  if (text == "polynomial" || text == "poly") return KernelKind::polynomial;
  if (text == "wavelet") return KernelKind::wavelet;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(text) + "'");
}

std::vector<double> kernel_params(const KernelSpec& spec) {
  switch (spec.kind) {
    case KernelKind::rbf: return {spec.sigma};
    case KernelKind::polynomial: return {spec.degree, spec.offset};
    case KernelKind::wavelet: return {spec.wavelet_a, spec.wavelet_b, spec.wavelet_c};
    case KernelKind::linear:
    case KernelKind::random: return {};
  }
  return {};
}

KernelSpec make_kernel(KernelKind kind, const std::vector<double>& params) {
  KernelSpec spec;
  spec.kind = kind;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi)
      throw Error(ErrorCode::InvalidArgument, std::string(to_string(kind)) + " kernel takes " +
                                                  std::to_string(lo) + ".." + std::to_string(hi) +
                                                  " parameters");
  };
  switch (kind) {
    case KernelKind::rbf:
      need(0, 1);
      if (!params.empty()) spec.sigma = params[0];
      break;
    case KernelKind::polynomial:
      need(0, 2);
      if (params.size() > 0) spec.degree = params[0];
      if (params.size() > 1) spec.offset = params[1];
      break;
    case KernelKind::wavelet:
      need(0, 3);
      if (params.size() > 0) spec.wavelet_a = params[0];
      if (params.size() > 1) spec.wavelet_b = params[1];
      if (params.size() > 2) spec.wavelet_c = params[2];
      break;
    case KernelKind::linear:
    case KernelKind::random:
      need(0, 0);
      break;
  }
  spec.validate();
  return spec;
}

}  // namespace occelm
