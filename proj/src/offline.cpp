#include "occelm/offline.hpp"

#include <string>

#include "occelm/error.hpp"
#include "occelm/kernels.hpp"
#include "occelm/linsolve.hpp"

namespace occelm {

const char* to_string(Family family) {
  return family == Family::boundary ? "boundary" : "reconstruction";
}

Family parse_family(std::string_view text) {
  if (text == "boundary") return Family::boundary;
  if (text == "reconstruction") return Family::reconstruction;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(text) + "'");
}

namespace detail {

Eigen::VectorXd row_errors(Family family, const ThresholdSpec& tspec, double R,
                           const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& outputs) {
  const Eigen::Index rows = outputs.rows();
  Eigen::VectorXd e(rows);
  if (family == Family::boundary) {
    // |o - R| for thr1 and (o - R)^2 for thr2, as the two criteria define them
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double d = outputs(i, 0) - R;
      e(i) = tspec.kind == ThresholdKind::thr2 ? d * d : std::abs(d);
    }
    return e;
  }
  if (tspec.kind == ThresholdKind::thr3) {
    for (Eigen::Index i = 0; i < rows; ++i)
      e(i) = thr3_decide(inputs.row(i), outputs.row(i), tspec.condn1, tspec.condn2_frac).score;
    return e;
  }
  for (Eigen::Index i = 0; i < rows; ++i) e(i) = (inputs.row(i) - outputs.row(i)).squaredNorm();
  return e;
}

std::vector<Decision> decide(Family family, const ThresholdSpec& tspec, double thresh, double R,
                             const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& outputs) {
  std::vector<Decision> out(static_cast<std::size_t>(outputs.rows()));
  if (family == Family::reconstruction && tspec.kind == ThresholdKind::thr3) {
    for (Eigen::Index i = 0; i < outputs.rows(); ++i)
      out[static_cast<std::size_t>(i)] =
          thr3_decide(inputs.row(i), outputs.row(i), tspec.condn1, tspec.condn2_frac);
    return out;
  }
  const Eigen::VectorXd e = row_errors(family, tspec, R, inputs, outputs);
  for (Eigen::Index i = 0; i < e.size(); ++i) out[static_cast<std::size_t>(i)] = apply_threshold(e(i), thresh);
  return out;
}

double fit_threshold(const ThresholdSpec& tspec, const Eigen::VectorXd& errors) {
  const std::span<const double> view(errors.data(), static_cast<std::size_t>(errors.size()));
  switch (tspec.kind) {
    case ThresholdKind::thr1: return thr1_fit(view, tspec.fracrej);
    case ThresholdKind::thr2: return thr2_fit(view, tspec.std_mult);
    case ThresholdKind::thr3: return tspec.condn2_frac;
  }
  return 0.0;
}

}  // namespace detail

namespace {

// Cross matrix between new (normalised) rows and the stored training basis,
// already multiplied through to network outputs.
Eigen::MatrixXd outputs_for(const OfflineModel& model, const Eigen::MatrixXd& normalised) {
  if (const auto* layer = std::get_if<HiddenLayer>(&model.mapping)) {
    const Eigen::MatrixXd projection = model.basis.transpose() * model.beta;  // m x k
    return kernels::multiply(hidden_apply(*layer, normalised), projection);
  }
  const auto& spec = std::get<KernelSpec>(model.mapping);
  return kernels::multiply(kernel_gram(spec, normalised, model.basis), model.beta);
}

}  // namespace

OfflineModel train_offline(const Eigen::MatrixXd& X, const OfflineConfig& cfg) {
  if (X.rows() < 2) throw Error(ErrorCode::TooFewSamples, "training needs at least 2 rows");
  cfg.tspec.validate();
  if (cfg.family == Family::boundary && cfg.tspec.kind == ThresholdKind::thr3)
    throw Error(ErrorCode::Thr3NotApplicable, "thr3 needs per-feature outputs; boundary models have one");
  if (!(cfg.C > 0.0)) throw Error(ErrorCode::InvalidArgument, "C must be > 0");

  OfflineModel model;
  model.family = cfg.family;
  model.C = cfg.C;
  model.tspec = cfg.tspec;
  model.R = cfg.R;
  model.zstats = cfg.normalize ? zscore_fit(X, cfg.scaling) : ZScoreStats::identity(X.cols());
  const Eigen::MatrixXd Xn = zscore_apply(X, model.zstats);

  Eigen::MatrixXd omega;
  if (cfg.kernel.kind == KernelKind::random) {
    if (cfg.hidden < 1) throw Error(ErrorCode::InvalidArgument, "hidden width must be >= 1");
    HiddenLayer layer = hidden_init(cfg.node_type, cfg.hidden, X.cols(), cfg.seed);
    model.basis = hidden_apply(layer, Xn);
    omega = random_kernel_gram(model.basis);
    model.mapping = std::move(layer);
  } else {
    omega = kernel_gram(cfg.kernel, Xn, Xn);
    model.basis = Xn;
    model.mapping = cfg.kernel;
  }

  const Eigen::MatrixXd T =
      cfg.family == Family::boundary ? Eigen::MatrixXd::Constant(X.rows(), 1, cfg.R) : Xn;
  model.beta = solve_regularized(omega, T, cfg.C);

  const Eigen::MatrixXd O = outputs_for(model, Xn);
  model.train_errors = detail::row_errors(model.family, model.tspec, model.R, Xn, O);
  model.thresh = detail::fit_threshold(model.tspec, model.train_errors);
  return model;
}

OfflineModel train_boundary(const Eigen::MatrixXd& X, OfflineConfig cfg) {
  cfg.family = Family::boundary;
  return train_offline(X, cfg);
}

OfflineModel train_reconstruction(const Eigen::MatrixXd& X, OfflineConfig cfg) {
  cfg.family = Family::reconstruction;
  return train_offline(X, cfg);
}

Eigen::MatrixXd offline_outputs(const OfflineModel& model, const Eigen::MatrixXd& Y) {
  return outputs_for(model, zscore_apply(Y, model.zstats));
}

std::vector<Decision> score(const OfflineModel& model, const Eigen::MatrixXd& Y) {
  const Eigen::MatrixXd Yn = zscore_apply(Y, model.zstats);
  return detail::decide(model.family, model.tspec, model.thresh, model.R, Yn, outputs_for(model, Yn));
}

}  // namespace occelm
