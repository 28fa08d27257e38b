#include "occelm/online.hpp"

#include <algorithm>
#include <string>

#include "occelm/error.hpp"
#include "occelm/kernels.hpp"

namespace occelm {

namespace {

Eigen::MatrixXd targets_for(const OnlineModel& model, const Eigen::MatrixXd& normalised) {
  if (model.family == Family::boundary) return Eigen::MatrixXd::Constant(normalised.rows(), 1, model.R);
  return normalised;
}

// |o - R| or squared reconstruction error; thr2's squared boundary error is
// derived from the first at finalize.
void append_errors(OnlineModel& model, const Eigen::MatrixXd& normalised, const Eigen::MatrixXd& H) {
  const Eigen::MatrixXd O = kernels::multiply(H, model.rls.beta);
  ThresholdSpec base;
  base.kind = ThresholdKind::thr1;
  const Eigen::VectorXd e = detail::row_errors(model.family, base, model.R, normalised, O);
  model.train_errors.insert(model.train_errors.end(), e.data(), e.data() + e.size());
}

void retain(OnlineModel& model, const Eigen::MatrixXd& normalised) {
  if (!model.retain_rows) return;
  const Eigen::Index old = model.retained.rows();
  model.retained.conservativeResize(old + normalised.rows(), normalised.cols());
  model.retained.bottomRows(normalised.rows()) = normalised;
}

}  // namespace

OnlineModel os_init(Family family, HiddenLayer layer, const Eigen::MatrixXd& X0, const OnlineOptions& options) {
  if (X0.cols() != layer.inputs())
    throw Error(ErrorCode::DimensionMismatch, "initial chunk has " + std::to_string(X0.cols()) +
                                                  " features, layer expects " + std::to_string(layer.inputs()));
  if (X0.rows() < layer.hidden())
    throw Error(ErrorCode::TooFewInitialSamples, "initial chunk has " + std::to_string(X0.rows()) +
                                                     " rows, need N0 >= m = " + std::to_string(layer.hidden()));
  OnlineModel model;
  model.family = family;
  model.R = options.R;
  model.zstats = options.zstats ? *options.zstats : ZScoreStats::identity(X0.cols());
  model.retain_rows = options.retain_rows;
  model.N0 = X0.rows();
  model.layer = std::move(layer);

  const Eigen::MatrixXd Xn = zscore_apply(X0, model.zstats);
  const Eigen::MatrixXd H0 = hidden_apply(model.layer, Xn);
  model.rls = rls_init(H0, targets_for(model, Xn));
  model.seen_count = X0.rows();
  append_errors(model, Xn, H0);
  retain(model, Xn);
  return model;
}

void os_update(OnlineModel& model, const Eigen::MatrixXd& chunk) {
  if (model.finalized()) throw Error(ErrorCode::AlreadyFinalized, "model no longer accepts chunks");
  if (chunk.cols() != model.input_dim())
    throw Error(ErrorCode::DimensionMismatch, "chunk has " + std::to_string(chunk.cols()) +
                                                  " features, model expects " +
                                                  std::to_string(model.input_dim()));
  if (chunk.rows() == 0) return;
  const Eigen::MatrixXd Xn = zscore_apply(chunk, model.zstats);
  const Eigen::MatrixXd H = hidden_apply(model.layer, Xn);
  rls_update(model.rls, H, targets_for(model, Xn));
  model.seen_count += chunk.rows();
  model.block = std::max(model.block, chunk.rows());
  append_errors(model, Xn, H);
  retain(model, Xn);
}

void os_finalize(OnlineModel& model, const ThresholdSpec& tspec) {
  if (model.finalized()) throw Error(ErrorCode::AlreadyFinalized, "model already finalized");
  tspec.validate();
  if (model.family == Family::boundary && tspec.kind == ThresholdKind::thr3)
    throw Error(ErrorCode::Thr3NotApplicable, "thr3 needs per-feature outputs; boundary models have one");
  if (model.seen_count < 2) throw Error(ErrorCode::TooFewSamples, "finalize needs at least 2 samples");

  model.tspec = tspec;
  if (model.retain_rows) {
    const Eigen::MatrixXd O = kernels::multiply(hidden_apply(model.layer, model.retained), model.rls.beta);
    const Eigen::VectorXd e = detail::row_errors(model.family, tspec, model.R, model.retained, O);
    model.train_errors.assign(e.data(), e.data() + e.size());
    model.retained.resize(0, 0);
  } else if (model.family == Family::boundary && tspec.kind == ThresholdKind::thr2) {
    for (double& e : model.train_errors) e *= e;
  }
  const Eigen::Map<const Eigen::VectorXd> errors(model.train_errors.data(),
                                                 static_cast<Eigen::Index>(model.train_errors.size()));
  model.thresh = detail::fit_threshold(tspec, errors);
}

Eigen::MatrixXd os_outputs(const OnlineModel& model, const Eigen::MatrixXd& Y) {
  return kernels::multiply(hidden_apply(model.layer, zscore_apply(Y, model.zstats)), model.rls.beta);
}

std::vector<Decision> os_score(const OnlineModel& model, const Eigen::MatrixXd& Y) {
  if (!model.finalized()) throw Error(ErrorCode::NotFinalized, "finalize the model before scoring");
  const Eigen::MatrixXd Yn = zscore_apply(Y, model.zstats);
  const Eigen::MatrixXd O = kernels::multiply(hidden_apply(model.layer, Yn), model.rls.beta);
  return detail::decide(model.family, model.tspec, *model.thresh, model.R, Yn, O);
}

Eigen::Index default_chunk(Eigen::Index hidden, Eigen::Index N) { return std::max(hidden, N / 10); }

OnlineModel train_online(const Eigen::MatrixXd& X, const OnlineConfig& cfg) {
  if (cfg.hidden < 1) throw Error(ErrorCode::InvalidArgument, "hidden width must be >= 1");
  const Eigen::Index N = X.rows();
  const Eigen::Index n0 = cfg.N0 > 0 ? cfg.N0 : default_chunk(cfg.hidden, N);
  const Eigen::Index block = cfg.block > 0 ? cfg.block : default_chunk(cfg.hidden, N);
  if (n0 > N)
    throw Error(ErrorCode::TooFewInitialSamples, "initial chunk of " + std::to_string(n0) +
                                                     " rows exceeds the " + std::to_string(N) +
                                                     " training rows");
  OnlineOptions options;
  options.R = cfg.R;
  options.zstats = cfg.normalize ? zscore_fit(X, cfg.scaling) : ZScoreStats::identity(X.cols());
  options.retain_rows = cfg.retain_rows;

  OnlineModel model =
      os_init(cfg.family, hidden_init(cfg.node_type, cfg.hidden, X.cols(), cfg.seed), X.topRows(n0), options);
  for (Eigen::Index start = n0; start < N; start += block)
    os_update(model, X.middleRows(start, std::min(block, N - start)));
  model.block = block;
  os_finalize(model, cfg.tspec);
  return model;
}

}  // namespace occelm
