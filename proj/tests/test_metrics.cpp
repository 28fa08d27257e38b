#include <doctest.h>

#include <cmath>
#include <vector>

#include "occelm/error.hpp"
#include "occelm/metrics.hpp"
#include "support.hpp"

using namespace occelm;
using testing::error_code;

namespace {

std::vector<Decision> decisions(const std::vector<bool>& accept) {
  std::vector<Decision> out;
  for (bool a : accept) out.push_back({a, a ? 0.0 : 1.0, 0.5});
  return out;
}

}  // namespace

TEST_CASE("confuse counts") {
  std::vector<Label> labels(10, Label::target);
  labels.insert(labels.end(), 5, Label::outlier);
  std::vector<bool> correct(10, true);
  correct.insert(correct.end(), 5, false);

  ConfusionCounts c = confuse(decisions(correct), labels);
  CHECK(c.tp == 10);
  CHECK(c.tn == 5);
  CHECK(c.fp == 0);
  CHECK(c.fn == 0);

  c = confuse(decisions(std::vector<bool>(15, true)), labels);
  CHECK(c.fp == 5);
  CHECK(c.fn == 0);

  // hand tally: (accept, label) pairs
  const std::vector<bool> acc{true, false, true, true, false, false};
  const std::vector<Label> lab{Label::target, Label::target, Label::outlier, Label::target, Label::outlier,
                               Label::outlier};
  c = confuse(decisions(acc), lab);
  CHECK(c.tp == 2);
  CHECK(c.fn == 1);
  CHECK(c.fp == 1);
  CHECK(c.tn == 2);
  CHECK(c.total() == 6);

  CHECK(error_code([&] { confuse(decisions(acc), std::vector<Label>(5, Label::target)); }) ==
        ErrorCode::LengthMismatch);
}

TEST_CASE("measures hand cases") {
  EvalReport r = measures({50, 50, 0, 0});
  CHECK(r.recall == 100.0);
  CHECK(r.specificity == 0.0);
  CHECK(r.auc == 50.0);
  CHECK(r.precision == 50.0);
  CHECK(r.accuracy == 50.0);

  r = measures({0, 0, 30, 20});
  CHECK(std::isnan(r.precision));
  CHECK(std::isnan(r.f1));
  CHECK(r.recall == 0.0);
  CHECK(r.specificity == 100.0);

  r = measures({3, 1, 4, 2});
  CHECK(r.precision == doctest::Approx(75.0));
  CHECK(r.recall == doctest::Approx(60.0));
  CHECK(r.specificity == doctest::Approx(80.0));
  CHECK(r.f1 == doctest::Approx(2 * 75.0 * 60.0 / 135.0));
  CHECK(r.accuracy == doctest::Approx(70.0));
  CHECK(r.auc == doctest::Approx(70.0));
}

TEST_CASE("sensitivity 75.57 and specificity 98.38 give AUC 86.98") {
  // counts chosen so both rates come out exact
  const EvalReport r = measures({7557, 162, 9838, 2443});
  CHECK(r.recall == doctest::Approx(75.57));
  CHECK(r.specificity == doctest::Approx(98.38));
  CHECK(std::abs(r.auc - 86.98) <= 0.01);
}

TEST_CASE("AUC is balanced accuracy on random counts") {
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const ConfusionCounts c{rng.below(50), rng.below(50), rng.below(50), rng.below(50)};
    const EvalReport r = measures(c);
    const double sens = (c.tp + c.fn) ? 100.0 * c.tp / (c.tp + c.fn) : NAN;
    const double spec = (c.tn + c.fp) ? 100.0 * c.tn / (c.tn + c.fp) : NAN;
    if (std::isnan(sens) || std::isnan(spec)) {
      CHECK(std::isnan(r.auc));
      continue;
    }
    CHECK(std::abs(r.auc - (sens + spec) / 2) <= 1e-9);
    CHECK(std::abs(r.auc - (r.recall + r.specificity) / 2) <= 1e-9);
    if (c.total()) CHECK(r.accuracy == doctest::Approx(100.0 * (c.tp + c.tn) / c.total()));
  }
}

TEST_CASE("aggregate means, sample std and NAN propagation") {
  EvalReport a = measures({8, 2, 6, 4});
  std::vector<EvalReport> same(5, a);
  EvalReport agg = aggregate(same);
  CHECK(agg.auc == doctest::Approx(a.auc));
  CHECK(agg.std_auc == 0.0);
  CHECK(agg.run_count == 5);

  EvalReport r70 = a, r80 = a;
  r70.auc = 70;
  r80.auc = 80;
  agg = aggregate(std::vector<EvalReport>{r70, r80});
  CHECK(agg.auc == 75.0);
  CHECK(agg.std_auc == doctest::Approx(7.0710678).epsilon(1e-7));

  std::vector<EvalReport> runs(20, a);
  runs[13] = measures({0, 0, 10, 10});
  agg = aggregate(runs);
  CHECK(std::isnan(agg.f1));
  CHECK(std::isnan(agg.precision));
  CHECK_FALSE(std::isnan(agg.auc));

  CHECK(aggregate(std::vector<EvalReport>{a}).std_auc == 0.0);
  CHECK(error_code([] { aggregate(std::vector<EvalReport>{}); }) == ErrorCode::EmptyRuns);
}

TEST_CASE("aggregate is permutation invariant") {
  Rng rng(3);
  std::vector<EvalReport> runs;
  for (int i = 0; i < 9; ++i) runs.push_back(measures({1 + rng.below(20), rng.below(20), 1 + rng.below(20), rng.below(20)}));
  const EvalReport a = aggregate(runs);
  rng.shuffle(runs);
  const EvalReport b = aggregate(runs);
  CHECK(a.auc == doctest::Approx(b.auc).epsilon(1e-14));
  CHECK(a.std_auc == doctest::Approx(b.std_auc).epsilon(1e-12));
}

TEST_CASE("report layout") {
  CHECK(report_header() == "dataset,classifier,variant,F1,ACC,AUC,Std_AUC");
  EvalReport r = measures({0, 0, 5, 5});
  r.std_auc = 1.234;
  CHECK(report_row("Sonar", "AAKELM", "Thr3", r) == "Sonar,AAKELM,Thr3,NAN,50.00,50.00,1.23");
}
