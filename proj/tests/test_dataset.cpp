#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "occelm/dataset.hpp"
#include "occelm/error.hpp"
#include "support.hpp"

using namespace occelm;
using testing::error_code;

TEST_CASE("parse_csv maps +1/-1 label tokens") {
  const Dataset d = parse_csv("1.0,2.0,+1\n3.0,4.0,+1\n5.0,6.0,-1\n", -1);
  CHECK(d.sample_count() == 3);
  CHECK(d.feature_count() == 2);
  REQUIRE(d.labels);
  CHECK(*d.labels == std::vector<Label>{Label::target, Label::target, Label::outlier});
  CHECK(d.samples(2, 1) == 6.0);
}

TEST_CASE("parse_csv accepts every documented label token") {
  const Dataset d = parse_csv("1,target\n2,1\n3,+1\n4,outlier\n5,0\n6,-1\n", 1);
  REQUIRE(d.labels);
  CHECK(d.count(Label::target) == 3);
  CHECK(d.count(Label::outlier) == 3);
  CHECK(d.feature_count() == 1);
}

TEST_CASE("parse_csv detects a header line and keeps feature names") {
  const Dataset d = parse_csv("a,b,label\n1,2,target\n3,4,outlier\n", -1);
  CHECK(d.sample_count() == 2);
  CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("parse_csv without a label column keeps every column as a feature") {
  const Dataset d = parse_csv("1,2,3\n4,5,6\n", std::nullopt);
  CHECK(d.feature_count() == 3);
  CHECK_FALSE(d.labels);
  CHECK(d.targets().rows() == 2);
}

TEST_CASE("label column index may point at the first column") {
  const Dataset d = parse_csv("-1,0.5,0.25\n+1,1.5,2.5\n", 0);
  CHECK(d.feature_count() == 2);
  CHECK((*d.labels)[0] == Label::outlier);
  CHECK(d.samples(1, 1) == 2.5);
}

TEST_CASE("parse errors name the offending cell") {
  try {
    parse_csv("1,2\n3,abc\n", std::nullopt);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    const std::string msg = e.what();
    CHECK(msg.find("abc") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }
}

TEST_CASE("csv error contract") {
  CHECK(error_code([] { parse_csv("1,2\n3\n", std::nullopt); }) == ErrorCode::RaggedRows);
  CHECK(error_code([] { parse_csv("", std::nullopt); }) == ErrorCode::EmptyFile);
  CHECK(error_code([] { parse_csv("\n  \n", std::nullopt); }) == ErrorCode::EmptyFile);
  CHECK(error_code([] { parse_csv("1,2,maybe\n", -1); }) == ErrorCode::UnknownLabelToken);
  CHECK(error_code([] { parse_csv("a,b\n", std::nullopt); }) == ErrorCode::EmptyFile);
  CHECK(error_code([] { parse_csv("1,2\n1,nan\n", std::nullopt); }) == ErrorCode::ParseError);
  CHECK(error_code([] { load_csv("/nonexistent/file.csv", std::nullopt); }) == ErrorCode::Io);
}

TEST_CASE("format_csv round trips through parse_csv") {
  Dataset d;
  d.samples.resize(2, 2);
  d.samples << 0.1, -2.5e-7, 1.0 / 3.0, 12345.678;
  d.labels = std::vector<Label>{Label::target, Label::outlier};
  d.feature_names = {"x", "y"};
  const Dataset back = parse_csv(format_csv(d), -1);
  CHECK(back.samples == d.samples);
  CHECK(*back.labels == *d.labels);
  CHECK(back.feature_names == d.feature_names);
}

TEST_CASE("Breast Cancer file has 458 targets and 241 outliers") {
  const Dataset d = load_csv(testing::data_file("breast_cancer.csv"), -1);
  CHECK(d.sample_count() == 699);
  CHECK(d.feature_count() == 9);
  CHECK(d.count(Label::target) == 458);
  CHECK(d.count(Label::outlier) == 241);
}

TEST_CASE("Diabetes file has 500 targets and 268 outliers") {
  const Dataset d = load_csv(testing::data_file("diabetes.csv"), -1);
  CHECK(d.sample_count() == 768);
  CHECK(d.feature_count() == 8);
  CHECK(d.count(Label::target) == 500);
  CHECK(d.count(Label::outlier) == 268);
}

TEST_CASE("zscore_fit on hand columns") {
  Eigen::MatrixXd X(3, 2);
  X << 1, 5, 2, 5, 3, 5;
  const ZScoreStats s = zscore_fit(X);
  CHECK(s.mean.size() == 2);
  CHECK(s.std.size() == 2);
  CHECK(s.mean(0) == doctest::Approx(2.0));
  CHECK(s.std(0) == doctest::Approx(1.0));
  CHECK(s.mean(1) == 5.0);
  CHECK(s.std(1) == 0.0);

  const Eigen::MatrixXd Z = zscore_apply(X, s);
  CHECK(Z(0, 0) == doctest::Approx(-1.0));
  CHECK(Z(1, 0) == doctest::Approx(0.0));
  CHECK(Z(2, 0) == doctest::Approx(1.0));
  CHECK(Z.col(1).isZero());
}

TEST_CASE("zscore errors") {
  CHECK(error_code([] { zscore_fit(Eigen::MatrixXd::Ones(1, 3)); }) == ErrorCode::TooFewSamples);
  const ZScoreStats s = zscore_fit(Eigen::MatrixXd::Random(4, 3));
  CHECK(error_code([&] { zscore_apply(Eigen::MatrixXd::Ones(2, 2), s); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("z-scored training data has mean 0 and sample std 1") {
  Rng rng(11);
  Eigen::MatrixXd X = testing::uniform_matrix(37, 4, rng, -3.0, 8.0);
  X.col(2) *= 1e3;
  const Eigen::MatrixXd Z = zscore_apply(X, zscore_fit(X));
  for (Eigen::Index j = 0; j < Z.cols(); ++j) {
    const double mean = Z.col(j).mean();
    const double var = (Z.col(j).array() - mean).square().sum() / (Z.rows() - 1);
    CHECK(std::abs(mean) < 1e-10);
    CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-10);
  }
}

TEST_CASE("minmax scaling maps training columns onto [0, 1]") {
  Eigen::MatrixXd X(3, 2);
  X << 2, 7, 4, 7, 6, 7;
  const ZScoreStats s = zscore_fit(X, Scaling::minmax);
  const Eigen::MatrixXd Z = zscore_apply(X, s);
  CHECK(Z(0, 0) == 0.0);
  CHECK(Z(1, 0) == doctest::Approx(0.5));
  CHECK(Z(2, 0) == 1.0);
  CHECK(Z.col(1).isZero());
}

TEST_CASE("train_size rounds half up") {
  CHECK(train_size(0.5, 458) == 229);
  CHECK(train_size(0.5, 5) == 3);
  CHECK(train_size(0.5, 4) == 2);
  CHECK(train_size(1.0, 7) == 7);
}

namespace {

Dataset labeled(std::size_t targets, std::size_t outliers) {
  Dataset d;
  d.samples.resize(static_cast<Eigen::Index>(targets + outliers), 2);
  d.labels.emplace();
  for (std::size_t i = 0; i < targets + outliers; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    d.samples(r, 0) = static_cast<double>(i);
    d.samples(r, 1) = -static_cast<double>(i);
    d.labels->push_back(i < targets ? Label::target : Label::outlier);
  }
  return d;
}

}  // namespace

TEST_CASE("occ_split on the Breast Cancer counts") {
  const Dataset d = labeled(458, 241);
  const Split s = occ_split(d, SplitPlan{20, 0.5, 99}, 0);
  CHECK(s.train.sample_count() == 229);
  CHECK(s.test.sample_count() == 470);
  CHECK_FALSE(s.train.labels);
  REQUIRE(s.test.labels);
  CHECK(s.test.count(Label::target) == 229);
  CHECK(s.test.count(Label::outlier) == 241);

  std::set<std::size_t> seen;
  for (auto r : s.train_rows) {
    CHECK((*d.labels)[r] == Label::target);
    seen.insert(r);
  }
  for (auto r : s.test_rows) CHECK(seen.insert(r).second);
  CHECK(seen.size() == 699);
  for (std::size_t i = 0; i < s.train_rows.size(); ++i)
    CHECK(s.train.samples(static_cast<Eigen::Index>(i), 0) == static_cast<double>(s.train_rows[i]));
}

TEST_CASE("occ_split is deterministic per (seed, run) and varies across runs") {
  const Dataset d = labeled(40, 10);
  const SplitPlan plan{20, 0.5, 5};
  const Split a = occ_split(d, plan, 3);
  const Split b = occ_split(d, plan, 3);
  CHECK(a.train_rows == b.train_rows);
  CHECK(a.test_rows == b.test_rows);
  CHECK(occ_split(d, plan, 4).train_rows != a.train_rows);
  CHECK(occ_split(d, SplitPlan{20, 0.5, 6}, 3).train_rows != a.train_rows);
}

TEST_CASE("occ_split with fraction 1 trains on every target") {
  const Dataset d = labeled(12, 5);
  const Split s = occ_split(d, SplitPlan{1, 1.0, 1}, 0);
  CHECK(s.train.sample_count() == 12);
  CHECK(s.test.sample_count() == 5);
  CHECK(s.test.count(Label::outlier) == 5);
}

TEST_CASE("occ_split error contract") {
  Dataset unlabeled;
  unlabeled.samples = Eigen::MatrixXd::Zero(4, 2);
  CHECK(error_code([&] { occ_split(unlabeled, SplitPlan{}, 0); }) == ErrorCode::MissingLabels);
  CHECK(error_code([] { occ_split(labeled(1, 3), SplitPlan{}, 0); }) == ErrorCode::NoTargets);
  CHECK(error_code([] { occ_split(labeled(5, 0), SplitPlan{}, 0); }) == ErrorCode::NoOutliers);
  CHECK(error_code([] { occ_split(labeled(5, 2), SplitPlan{2, 0.5, 0}, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("gen_banana shape, zero-noise arc and determinism") {
  const Dataset d = gen_banana(100, 1.0, 7);
  CHECK(d.sample_count() == 100);
  CHECK(d.feature_count() == 2);
  CHECK_FALSE(d.labels);

  const Dataset clean = gen_banana(500, 0.0, 3);
  for (Eigen::Index i = 0; i < clean.samples.rows(); ++i) {
    const double x = clean.samples(i, 0), y = clean.samples(i, 1);
    CHECK(std::abs(std::hypot(x, y) - kBananaRadius) < 1e-9);
    CHECK(x >= -1e-12);
  }

  CHECK(gen_banana(50, 1.0, 9).samples == gen_banana(50, 1.0, 9).samples);
  CHECK(gen_banana(50, 1.0, 9).samples != gen_banana(50, 1.0, 10).samples);
}

TEST_CASE("gen_banana with two lobes labels the mirrored lobe as outliers") {
  const Dataset d = gen_banana(10, 0.0, 2, 2);
  REQUIRE(d.labels);
  CHECK(d.count(Label::target) == 5);
  CHECK(d.count(Label::outlier) == 5);
  for (Eigen::Index i = 5; i < 10; ++i) {
    const double x = -d.samples(i, 0) - 5.0, y = d.samples(i, 1) - 2.5;
    CHECK(std::abs(std::hypot(x, y) - kBananaRadius) < 1e-9);
  }
}

TEST_CASE("gen_ring radius and noise") {
  const Dataset d = gen_ring(100, 1.0, 0.1, 1);
  CHECK(d.sample_count() == 100);
  CHECK(d.feature_count() == 2);

  const Dataset clean = gen_ring(200, 2.5, 0.0, 4);
  for (Eigen::Index i = 0; i < clean.samples.rows(); ++i)
    CHECK(std::abs(clean.samples.row(i).norm() - 2.5) < 1e-9);

  // Monte-Carlo oracle: the mean radius is within 3 standard errors.
  const std::size_t n = 100000;
  const Dataset big = gen_ring(n, 1.0, 0.1, 21);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < big.samples.rows(); ++i) sum += big.samples.row(i).norm();
  CHECK(std::abs(sum / n - 1.0) <= 3.0 * 0.1 / std::sqrt(static_cast<double>(n)));

  CHECK(gen_ring(20, 1.0, 0.1, 5).samples == gen_ring(20, 1.0, 0.1, 5).samples);
  CHECK(gen_ring(20, 1.0, 0.1, 5).samples != gen_ring(20, 1.0, 0.1, 6).samples);
}

TEST_CASE("generator argument checks") {
  CHECK(error_code([] { gen_banana(0, 1.0, 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { gen_ring(0, 1.0, 0.1, 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { gen_ring(5, 0.0, 0.1, 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { gen_banana(5, -1.0, 1); }) == ErrorCode::InvalidArgument);
}
