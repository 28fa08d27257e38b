#include <doctest.h>

#include "occelm/error.hpp"
#include "occelm/model_io.hpp"
#include "support.hpp"

using namespace occelm;
using testing::error_code;

namespace {

Model trained(const std::string& variant, KernelKind kernel, const Eigen::MatrixXd& X,
              NodeType node_type = NodeType::additive_sigmoid) {
  ClassifierConfig cfg;
  cfg.variant = parse_variant(variant);
  if (!cfg.variant.online()) cfg.variant.node_type = node_type;
  cfg.params = default_params(cfg.variant);
  cfg.params.kernel.kind = kernel;
  cfg.params.hidden = 15;
  cfg.seed = 99;
  return train_classifier(X, cfg);
}

void check_same_scores(const Model& a, const Model& b, const Eigen::MatrixXd& Y) {
  const auto da = score(a, Y), db = score(b, Y);
  REQUIRE(da.size() == db.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    CHECK(da[i].score == db[i].score);
    CHECK(da[i].thresh == db[i].thresh);
    CHECK(da[i].is_target == db[i].is_target);
  }
}

}  // namespace

TEST_CASE("save/load round trip restores scores exactly") {
  Rng rng(60);
  const Eigen::MatrixXd X = testing::normal_matrix(80, 3, rng);
  const Eigen::MatrixXd Y = testing::normal_matrix(30, 3, rng);
  testing::TempDir dir("model_io");
  struct Case {
    const char* variant;
    KernelKind kernel;
    NodeType node_type = NodeType::additive_sigmoid;
  };
  for (const Case c : {Case{"ocelm_thr1", KernelKind::random}, Case{"aaelm_thr3", KernelKind::random, NodeType::rbf},
                       Case{"ockelm_thr1", KernelKind::rbf}, Case{"aakelm_thr2", KernelKind::polynomial},
                       Case{"aakelm_thr3", KernelKind::wavelet}, Case{"ockelm_thr1", KernelKind::linear},
                       Case{"os_ocelm_thr2_rbf", KernelKind::random},
                       Case{"os_aaelm_thr3_sig", KernelKind::random}}) {
    CAPTURE(c.variant);
    const Model m = trained(c.variant, c.kernel, X, c.node_type);
    const auto path = dir.file("m.txt");
    save_model(path, m);
    const Model back = load_model(path);
    check_same_scores(m, back, Y);
    CHECK(serialize(back) == serialize(m));
  }
}

TEST_CASE("model text starts with the format header") {
  Rng rng(61);
  const Model m = trained("ockelm_thr1", KernelKind::rbf, testing::normal_matrix(10, 2, rng));
  CHECK(serialize(m).rfind("OCCELM v1\n", 0) == 0);
}

TEST_CASE("malformed model files") {
  Rng rng(62);
  const std::string good = serialize(trained("ockelm_thr1", KernelKind::rbf, testing::normal_matrix(10, 2, rng)));
  CHECK(error_code([] { deserialize(""); }) == ErrorCode::ModelFormat);
  CHECK(error_code([] { deserialize("OCCELM v2\n"); }) == ErrorCode::ModelFormat);
  CHECK(error_code([&] { deserialize(good.substr(0, good.size() / 2)); }) == ErrorCode::ModelFormat);
  std::string bad = good;
  bad.replace(bad.find("threshold thr1"), 14, "threshold thr9");
  CHECK(error_code([&] { deserialize(bad); }).has_value());
  CHECK(error_code([] { load_model("/nonexistent/dir/model.txt"); }) == ErrorCode::Io);
}
