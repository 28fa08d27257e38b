#include "occelm/modelsel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <tuple>

#include "occelm/dataset.hpp"
#include "occelm/error.hpp"
#include "occelm/format.hpp"
#include "occelm/kernels.hpp"
#include "occelm/random.hpp"

namespace occelm {

double error_threshold(double fracrej, double sigma_thr, double M) {
  if (!(M >= 1.0)) throw Error(ErrorCode::InvalidArgument, "M must be >= 1");
  if (!(fracrej >= 0.0 && fracrej < 1.0)) throw Error(ErrorCode::InvalidArgument, "fracrej must be in [0, 1)");
  if (!(sigma_thr >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma_thr must be >= 0");
  return fracrej + sigma_thr * std::sqrt(fracrej * (1.0 - fracrej) / M);
}

std::vector<double> sigma_grid(const Eigen::MatrixXd& X, int count) {
  if (X.rows() < 2) throw Error(ErrorCode::TooFewSamples, "sigma grid needs at least 2 rows");
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "sigma grid needs count >= 2");
  const auto [lo, hi] = kernels::distance_range(X);
  if (hi == 0.0) throw Error(ErrorCode::AllPointsIdentical, "no nonzero pairwise distance");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = std::exp(log_lo + step * i);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> c_grid() {
  std::vector<double> grid;
  for (int e = -8; e <= 8; ++e) grid.push_back(std::pow(10.0, e));
  return grid;
}

std::vector<ParamSet> enumerate_grid(const ParamSet& base, const GridAxes& axes) {
  auto or_base = [](const auto& axis, auto fallback) {
    using T = std::decay_t<decltype(fallback)>;
    return axis.empty() ? std::vector<T>{fallback} : std::vector<T>(axis.begin(), axis.end());
  };
  const auto sigmas = or_base(axes.sigma, base.kernel.sigma);
  const auto cs = or_base(axes.C, base.C);
  const auto hiddens = or_base(axes.hidden, base.hidden);
  const auto degrees = or_base(axes.degree, base.kernel.degree);
  const auto wavelets = or_base(
      axes.wavelet, std::array<double, 3>{base.kernel.wavelet_a, base.kernel.wavelet_b, base.kernel.wavelet_c});

  std::vector<ParamSet> grid;
  for (double sigma : sigmas)
    for (Eigen::Index hidden : hiddens)
      for (double degree : degrees)
        for (const auto& w : wavelets)
          for (double c : cs) {
            ParamSet p = base;
            p.kernel.sigma = sigma;
            p.kernel.degree = degree;
            p.kernel.wavelet_a = w[0];
            p.kernel.wavelet_b = w[1];
            p.kernel.wavelet_c = w[2];
            p.hidden = hidden;
            p.C = c;
            grid.push_back(p);
          }
  // stable: equal keys keep the axes' listed order
  std::stable_sort(grid.begin(), grid.end(), [](const ParamSet& a, const ParamSet& b) {
    auto key = [](const ParamSet& p) {
      return std::make_tuple(p.kernel.sigma, -p.hidden, -p.kernel.degree, p.kernel.wavelet_b,
                             p.kernel.wavelet_c, -p.kernel.wavelet_a, -p.C);
    };
    return key(a) < key(b);
  });
  return grid;
}

std::vector<int> assign_folds(Eigen::Index N, int folds, std::uint64_t seed) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(N));
  for (Eigen::Index i = 0; i < N; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<int> fold(static_cast<std::size_t>(N));
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    fold[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos % static_cast<std::size_t>(folds));
  return fold;
}

namespace {

struct FoldData {
  Eigen::MatrixXd fit;
  Eigen::MatrixXd held_out;
};

std::vector<FoldData> make_folds(const Eigen::MatrixXd& X, const SelectionConfig& cfg) {
  if (cfg.folds < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 folds");
  if (X.rows() < cfg.folds)
    throw Error(ErrorCode::TooFewSamples, std::to_string(X.rows()) + " rows cannot fill " +
                                              std::to_string(cfg.folds) + " folds");
  const auto fold = assign_folds(X.rows(), cfg.folds, cfg.rng_seed);
  std::vector<FoldData> out(static_cast<std::size_t>(cfg.folds));
  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<Eigen::Index> in, out_rows;
    for (Eigen::Index i = 0; i < X.rows(); ++i) (fold[static_cast<std::size_t>(i)] == f ? out_rows : in).push_back(i);
    auto& fd = out[static_cast<std::size_t>(f)];
    fd.fit = X(in, Eigen::all);
    fd.held_out = X(out_rows, Eigen::all);
  }
  return out;
}

double mean_rejection(const FoldTrainer& trainer, const std::vector<FoldData>& folds, const ParamSet& p) {
  double total = 0.0;
  for (const auto& fd : folds) {
    const auto decisions = trainer(fd.fit, fd.held_out, p);
    if (decisions.size() != static_cast<std::size_t>(fd.held_out.rows()))
      throw Error(ErrorCode::LengthMismatch, "trainer returned the wrong number of decisions");
    const auto rejected = std::count_if(decisions.begin(), decisions.end(),
                                        [](const Decision& d) { return !d.is_target; });
    total += static_cast<double>(rejected) / static_cast<double>(decisions.size());
  }
  return total / static_cast<double>(folds.size());
}

}  // namespace

namespace {
std::atomic<std::size_t> select_calls{0};
}  // namespace

std::size_t selection_call_count() { return select_calls.load(); }

SelectionResult select(const FoldTrainer& trainer, const Eigen::MatrixXd& X, const SelectionConfig& cfg) {
  ++select_calls;
  const auto folds = make_folds(X, cfg);
  SelectionResult result;
  result.M = X.rows() / cfg.folds;
  result.err_thr = error_threshold(cfg.fracrej, cfg.sigma_thr, static_cast<double>(result.M));

  const auto grid = enumerate_grid(cfg.base, cfg.grid);
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty parameter grid");
  result.rows.resize(grid.size());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t g = 0; g < count; ++g) {
    auto& row = result.rows[static_cast<std::size_t>(g)];
    row.params = grid[static_cast<std::size_t>(g)];
    try {
      row.rejection = mean_rejection(trainer, folds, row.params);
    } catch (const std::exception& e) {
      row.rejection = 1.0;
      row.error = e.what();
    }
    row.consistent = row.error.empty() && row.rejection <= result.err_thr;
  }

  const auto first = std::find_if(result.rows.begin(), result.rows.end(),
                                  [](const SelectionRow& r) { return r.consistent; });
  if (first != result.rows.end()) {
    result.consistent = true;
    result.chosen_index = static_cast<std::size_t>(first - result.rows.begin());
  } else {
    const auto best = std::min_element(result.rows.begin(), result.rows.end(),
                                       [](const SelectionRow& a, const SelectionRow& b) {
                                         return a.rejection < b.rejection;
                                       });
    result.chosen_index = static_cast<std::size_t>(best - result.rows.begin());
  }
  result.chosen = result.rows[result.chosen_index].params;
  result.chosen_rejection = result.rows[result.chosen_index].rejection;
  return result;
}

double replay_rejection(const FoldTrainer& trainer, const Eigen::MatrixXd& X, const SelectionConfig& cfg,
                        const ParamSet& params) {
  return mean_rejection(trainer, make_folds(X, cfg), params);
}

GridAxes default_axes(const VariantId& variant, KernelKind kernel, const Eigen::MatrixXd& X, int folds) {
  GridAxes axes;
  if (!variant.online()) axes.C = c_grid();
  if (variant.kernelized()) {
    switch (kernel) {
      case KernelKind::rbf:
        axes.sigma = sigma_grid(zscore_apply(X, zscore_fit(X)), 20);
        break;
      case KernelKind::polynomial:
        axes.degree = {2.0, 3.0};
        break;
      case KernelKind::wavelet:
        for (double a : {1.0, 1.75})
          for (double b : {0.5, 1.0, 2.0})
            for (double c : {1.0, 2.0, 4.0}) axes.wavelet.push_back({a, b, c});
        break;
      case KernelKind::linear:
      case KernelKind::random:
        break;
    }
    return axes;
  }
  const Eigen::Index fit_rows = X.rows() - X.rows() / std::max(folds, 1);
  for (Eigen::Index m : {20, 50, 100, 200})
    if (m <= fit_rows) axes.hidden.push_back(m);
  if (axes.hidden.empty()) axes.hidden.push_back(std::max<Eigen::Index>(1, fit_rows));
  return axes;
}

FoldTrainer make_trainer(const ClassifierConfig& base) {
  return [base](const Eigen::MatrixXd& fit, const Eigen::MatrixXd& held_out, const ParamSet& params) {
    ClassifierConfig cfg = base;
    cfg.params = params;
    return score(train_classifier(fit, cfg), held_out);
  };
}

std::string selection_csv(const SelectionResult& result, const VariantId& variant) {
  std::ostringstream out;
  out << "index,kernel,kern_par,hidden,C,rejection,err_thr,consistent,chosen,error\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    std::string kern = variant.kernelized() ? std::string(to_string(r.params.kernel.kind)) : "random";
    std::string par;
    if (variant.kernelized()) {
      const auto values = kernel_params(r.params.kernel);
      for (std::size_t j = 0; j < values.size(); ++j) par += (j ? ";" : "") + format_double(values[j]);
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << i << ',' << kern << ',' << par << ',' << (variant.kernelized() ? 0 : r.params.hidden) << ','
        << (variant.online() ? std::string("") : format_double(r.params.C)) << ','
        << format_double(r.rejection) << ',' << format_double(result.err_thr) << ','
        << (r.consistent ? 1 : 0) << ',' << (i == result.chosen_index ? 1 : 0) << ',' << err << '\n';
  }
  return out.str();
}

}  // namespace occelm
