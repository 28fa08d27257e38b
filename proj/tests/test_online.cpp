#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "occelm/error.hpp"
#include "occelm/online.hpp"
#include "support.hpp"

using namespace occelm;
using testing::error_code;

namespace {

ThresholdSpec thr(ThresholdKind kind) {
  ThresholdSpec t;
  t.kind = kind;
  return t;
}

// Least-squares weights for the stacked hidden outputs, via SVD.
Eigen::MatrixXd batch_beta(const HiddenLayer& layer, const Eigen::MatrixXd& Xn, const Eigen::MatrixXd& T) {
  const Eigen::MatrixXd H = hidden_apply(layer, Xn);
  return H.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(T);
}

}  // namespace

TEST_CASE("init sets P to the inverse Gram of the first hidden block") {
  Rng rng(40);
  const HiddenLayer layer = hidden_init(NodeType::additive_sigmoid, 4, 3, 1);
  const Eigen::MatrixXd X0 = testing::normal_matrix(10, 3, rng);
  const OnlineModel m = os_init(Family::boundary, layer, X0);
  const Eigen::MatrixXd H0 = hidden_apply(layer, X0);
  CHECK((m.rls.P * (H0.transpose() * H0) - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-8);
  CHECK(m.seen_count == 10);
  CHECK(m.train_errors.size() == 10);
}

TEST_CASE("final beta equals the batch least-squares solution") {
  Rng rng(41);
  const Eigen::MatrixXd X = testing::normal_matrix(200, 3, rng);
  for (NodeType nt : {NodeType::additive_sigmoid, NodeType::rbf})
    for (Family fam : {Family::boundary, Family::reconstruction}) {
      OnlineConfig cfg;
      cfg.family = fam;
      cfg.node_type = nt;
      cfg.hidden = 15;
      cfg.N0 = 30;
      cfg.block = 17;
      cfg.seed = 8;
      const OnlineModel m = train_online(X, cfg);
      const Eigen::MatrixXd Xn = zscore_apply(X, zscore_fit(X));
      const Eigen::MatrixXd T = fam == Family::boundary ? Eigen::MatrixXd::Ones(200, 1) : Xn;
      const HiddenLayer layer = hidden_init(nt, 15, 3, 8);
      CAPTURE(static_cast<int>(nt));
      CHECK(testing::rel_frobenius(m.rls.beta, batch_beta(layer, Xn, T)) < 1e-7);
    }
}

TEST_CASE("chunking does not change the final weights") {
  Rng rng(42);
  const Eigen::MatrixXd X = testing::normal_matrix(120, 2, rng);
  OnlineConfig cfg;
  cfg.hidden = 10;
  cfg.N0 = 10;
  cfg.seed = 3;
  cfg.block = 1;
  const OnlineModel ones = train_online(X, cfg);
  cfg.block = 37;
  const OnlineModel chunks = train_online(X, cfg);
  cfg.N0 = 120;
  const OnlineModel batch = train_online(X, cfg);
  CHECK(testing::rel_frobenius(ones.rls.beta, chunks.rls.beta) < 1e-7);
  CHECK(testing::rel_frobenius(ones.rls.beta, batch.rls.beta) < 1e-7);
  CHECK(ones.thresh.value() == doctest::Approx(batch.thresh.value()).epsilon(1e-8));
}

TEST_CASE("feeding update chunks in a different order ends at the same weights") {
  Rng rng(43);
  const Eigen::MatrixXd X = testing::normal_matrix(90, 3, rng);
  const HiddenLayer layer = hidden_init(NodeType::rbf, 8, 3, 2);
  OnlineModel a = os_init(Family::boundary, layer, X.topRows(30));
  OnlineModel b = a;
  os_update(a, X.middleRows(30, 30));
  os_update(a, X.bottomRows(30));
  os_update(b, X.bottomRows(30));
  os_update(b, X.middleRows(30, 30));
  CHECK(testing::rel_frobenius(a.rls.beta, b.rls.beta) < 1e-8);
}

TEST_CASE("online equals the offline random-feature model at large C") {
  Rng rng(44);
  const Eigen::MatrixXd X = testing::normal_matrix(150, 3, rng);
  OnlineConfig on;
  on.hidden = 12;
  on.N0 = 20;
  on.block = 25;
  on.seed = 13;
  OfflineConfig off;
  off.kernel.kind = KernelKind::random;
  off.hidden = 12;
  off.C = 1e8;
  off.seed = 13;
  const OnlineModel m = train_online(X, on);
  const OfflineModel o = train_offline(X, off);
  const Eigen::MatrixXd Y = testing::normal_matrix(40, 3, rng);
  CHECK((os_outputs(m, Y) - offline_outputs(o, Y)).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("thr2 threshold is recomputed from the final weights") {
  Rng rng(45);
  const Eigen::MatrixXd X = testing::normal_matrix(80, 2, rng);
  OnlineConfig cfg;
  cfg.hidden = 6;
  cfg.N0 = 10;
  cfg.block = 10;
  cfg.tspec = thr(ThresholdKind::thr2);
  const OnlineModel m = train_online(X, cfg);
  const Eigen::MatrixXd O = os_outputs(m, X);
  const Eigen::ArrayXd e = (O.col(0).array() - 1.0).square();
  const double mean = e.mean();
  const double sd = std::sqrt((e - mean).square().sum() / 79.0);
  CHECK(*m.thresh == doctest::Approx(mean + 0.2 * sd).epsilon(1e-10));
}

TEST_CASE("streaming mode thresholds the errors recorded on arrival") {
  Rng rng(46);
  const Eigen::MatrixXd X = testing::normal_matrix(60, 2, rng);
  const HiddenLayer layer = hidden_init(NodeType::additive_sigmoid, 5, 2, 4);
  OnlineOptions opts;
  opts.retain_rows = false;
  OnlineModel m = os_init(Family::boundary, layer, X.topRows(10), opts);
  std::vector<double> expected;
  {
    const Eigen::MatrixXd O = hidden_apply(layer, X.topRows(10)) * m.rls.beta;
    for (Eigen::Index i = 0; i < 10; ++i) expected.push_back(std::abs(O(i, 0) - 1.0));
  }
  for (Eigen::Index s = 10; s < 60; s += 10) {
    os_update(m, X.middleRows(s, 10));
    const Eigen::MatrixXd O = hidden_apply(layer, X.middleRows(s, 10)) * m.rls.beta;
    for (Eigen::Index i = 0; i < 10; ++i) expected.push_back(std::abs(O(i, 0) - 1.0));
  }
  CHECK(m.retained.size() == 0);
  os_finalize(m, thr(ThresholdKind::thr1));
  REQUIRE(m.train_errors.size() == 60);
  for (std::size_t i = 0; i < 60; ++i) CHECK(m.train_errors[i] == doctest::Approx(expected[i]).epsilon(1e-10));
  std::sort(expected.begin(), expected.end(), std::greater<>());
  CHECK(*m.thresh == doctest::Approx(expected[5]).epsilon(1e-10));
}

TEST_CASE("online lifecycle errors") {
  Rng rng(47);
  const Eigen::MatrixXd X = testing::normal_matrix(30, 3, rng);
  const HiddenLayer layer = hidden_init(NodeType::additive_sigmoid, 10, 3, 1);
  CHECK(error_code([&] { os_init(Family::boundary, layer, X.topRows(9)); }) == ErrorCode::TooFewInitialSamples);
  CHECK(error_code([&] { os_init(Family::boundary, layer, X.leftCols(2)); }) == ErrorCode::DimensionMismatch);

  OnlineModel m = os_init(Family::boundary, layer, X.topRows(10));
  CHECK(error_code([&] { os_score(m, X); }) == ErrorCode::NotFinalized);
  CHECK(error_code([&] { os_update(m, X.leftCols(2)); }) == ErrorCode::DimensionMismatch);
  CHECK(error_code([&] { os_finalize(m, thr(ThresholdKind::thr3)); }) == ErrorCode::Thr3NotApplicable);
  os_update(m, X.bottomRows(20));
  os_finalize(m, thr(ThresholdKind::thr1));
  CHECK(error_code([&] { os_update(m, X); }) == ErrorCode::AlreadyFinalized);
  CHECK(error_code([&] { os_finalize(m, thr(ThresholdKind::thr1)); }) == ErrorCode::AlreadyFinalized);
  CHECK(os_score(m, X).size() == 30);

  OnlineConfig cfg;
  cfg.hidden = 10;
  cfg.N0 = 31;
  CHECK(error_code([&] { train_online(X, cfg); }) == ErrorCode::TooFewInitialSamples);
}

TEST_CASE("default chunk size") {
  CHECK(default_chunk(20, 100) == 20);
  CHECK(default_chunk(20, 1000) == 100);
  CHECK(default_chunk(20, 209) == 20);
}

TEST_CASE("online reconstruction with thr3") {
  Rng rng(48);
  const Eigen::MatrixXd X = testing::normal_matrix(100, 4, rng);
  OnlineConfig cfg;
  cfg.family = Family::reconstruction;
  cfg.hidden = 20;
  cfg.tspec = thr(ThresholdKind::thr3);
  const OnlineModel m = train_online(X, cfg);
  const auto d = os_score(m, X);
  const Eigen::MatrixXd O = os_outputs(m, X), Xn = zscore_apply(X, m.zstats);
  for (Eigen::Index i = 0; i < 100; ++i)
    CHECK(d[static_cast<std::size_t>(i)].is_target ==
          thr3_decide(Xn.row(i), O.row(i), 0.5, 0.1).is_target);
}
