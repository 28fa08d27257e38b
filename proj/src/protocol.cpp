#include "occelm/protocol.hpp"

#include <chrono>
#include <exception>
#include <sstream>

#include "occelm/error.hpp"
#include "occelm/format.hpp"
#include "occelm/random.hpp"

namespace occelm {

std::uint64_t split_seed(std::uint64_t seed) { return derive_seed(seed, 0x5111); }
std::uint64_t fold_seed(std::uint64_t seed) { return derive_seed(seed, 0xF01D); }
std::uint64_t model_seed(std::uint64_t seed, int run) {
  return derive_seed(derive_seed(seed, 0x40DE1), static_cast<std::uint64_t>(run));
}

ClassifierConfig classifier_config(const BenchmarkSpec& spec, const ParamSet& params, std::uint64_t seed) {
  ClassifierConfig cfg;
  cfg.variant = spec.variant;
  cfg.params = params;
  cfg.tspec = spec.tspec;
  cfg.tspec.kind = spec.variant.threshold;
  cfg.scaling = spec.scaling;
  cfg.seed = seed;
  return cfg;
}

SelectionConfig selection_config(const Eigen::MatrixXd& X, const BenchmarkSpec& spec) {
  SelectionConfig sel;
  sel.folds = spec.folds;
  sel.sigma_thr = spec.sigma_thr;
  sel.fracrej = spec.tspec.fracrej;
  sel.base = spec.params;
  if (spec.variant.kernelized()) sel.base.kernel.kind = spec.kernel;
  sel.grid = default_axes(spec.variant, spec.kernel, X, spec.folds);
  sel.rng_seed = fold_seed(spec.seed);
  return sel;
}

SelectionResult run_selection(const Eigen::MatrixXd& X, const BenchmarkSpec& spec) {
  const SelectionConfig sel = selection_config(X, spec);
  return select(make_trainer(classifier_config(spec, sel.base, model_seed(spec.seed, 0))), X, sel);
}

BenchmarkResult run_benchmark(const Dataset& data, const BenchmarkSpec& spec) {
  if (spec.run_count < 1) throw Error(ErrorCode::InvalidArgument, "run count must be >= 1");
  const SplitPlan plan{spec.run_count, spec.target_train_fraction, split_seed(spec.seed)};

  BenchmarkResult result;
  result.params = spec.params;
  if (spec.select) {
    result.selection = run_selection(occ_split(data, plan, 0).train.samples, spec);
    result.params = result.selection->chosen;
  }

  result.runs.resize(static_cast<std::size_t>(spec.run_count));
  std::vector<std::exception_ptr> failures(result.runs.size());
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < spec.run_count; ++r) {
    try {
      const Split split = occ_split(data, plan, r);
      const auto cfg = classifier_config(spec, result.params, model_seed(spec.seed, r));
      const auto start = std::chrono::steady_clock::now();
      const Model model = train_classifier(split.train.samples, cfg);
      const auto stop = std::chrono::steady_clock::now();
      const auto decisions = score(model, split.test.samples);
      auto& run = result.runs[static_cast<std::size_t>(r)];
      run.run = r;
      run.train_seconds = std::chrono::duration<double>(stop - start).count();
      run.counts = confuse(decisions, *split.test.labels);
      run.report = measures(run.counts);
    } catch (...) {
      failures[static_cast<std::size_t>(r)] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::vector<EvalReport> reports;
  for (const auto& run : result.runs) reports.push_back(run.report);
  result.aggregate = aggregate(reports);
  return result;
}

std::string runs_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "run,tp,fp,tn,fn,precision,recall,specificity,F1,ACC,AUC\n";
  for (const auto& r : result.runs) {
    out << r.run << ',' << r.counts.tp << ',' << r.counts.fp << ',' << r.counts.tn << ',' << r.counts.fn << ','
        << format_fixed(r.report.precision, 4) << ',' << format_fixed(r.report.recall, 4) << ','
        << format_fixed(r.report.specificity, 4) << ',' << format_fixed(r.report.f1, 4) << ','
        << format_fixed(r.report.accuracy, 4) << ',' << format_fixed(r.report.auc, 4) << '\n';
  }
  return out.str();
}

}  // namespace occelm
