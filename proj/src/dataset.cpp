#include "occelm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "occelm/error.hpp"
#include "occelm/format.hpp"
#include "occelm/random.hpp"

namespace occelm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

Eigen::MatrixXd Dataset::targets() const {
  if (!labels) return samples;
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < labels->size(); ++i)
    if ((*labels)[i] == Label::target) rows.push_back(static_cast<Eigen::Index>(i));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), samples.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = samples.row(rows[i]);
  return out;
}

std::size_t Dataset::count(Label label) const {
  if (!labels) return label == Label::target ? sample_count() : 0;
  return static_cast<std::size_t>(std::count(labels->begin(), labels->end(), label));
}

ZScoreStats ZScoreStats::identity(Eigen::Index n) {
  return {Scaling::zscore, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n)};
}

std::optional<Label> parse_label(std::string_view token) {
  token = trim(token);
  if (token == "+1" || token == "1" || token == "target") return Label::target;
  if (token == "-1" || token == "0" || token == "outlier") return Label::outlier;
  return std::nullopt;
}

Dataset parse_csv(std::string_view text, std::optional<int> label_column) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    if (!trim(line).empty()) lines.push_back(line);
    start = nl + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::EmptyFile, "no rows");

  const std::size_t width = split_cells(lines.front()).size();
  std::optional<std::size_t> label_col;
  if (label_column) {
    const int c = *label_column < 0 ? static_cast<int>(width) + *label_column : *label_column;
    if (c < 0 || static_cast<std::size_t>(c) >= width)
      throw Error(ErrorCode::InvalidArgument, "label column " + std::to_string(*label_column) +
                                                  " outside " + std::to_string(width) + " columns");
    label_col = static_cast<std::size_t>(c);
  }
  const std::size_t n = width - (label_col ? 1 : 0);
  if (n == 0) throw Error(ErrorCode::ParseError, "no feature columns");

  // Header: the first line has a feature cell that is not a number.
  std::vector<std::string> names;
  std::size_t first_data = 0;
  {
    const auto cells = split_cells(lines.front());
    bool header = false;
    for (std::size_t j = 0; j < cells.size(); ++j)
      if (j != label_col && !parse_number(cells[j])) header = true;
    if (header) {
      for (std::size_t j = 0; j < cells.size(); ++j)
        if (j != label_col) names.emplace_back(cells[j]);
      first_data = 1;
    } else {
      for (std::size_t j = 0; j < n; ++j) names.push_back("x" + std::to_string(j));
    }
  }
  const std::size_t rows = lines.size() - first_data;
  if (rows == 0) throw Error(ErrorCode::EmptyFile, "header only");

  Dataset data;
  data.samples.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  data.feature_names = std::move(names);
  if (label_col) data.labels.emplace(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t line_no = r + first_data + 1;
    const auto cells = split_cells(lines[r + first_data]);
    if (cells.size() != width)
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(cells.size()) + " cells, expected " +
                                             std::to_string(width));
    std::size_t out_col = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == label_col) {
        const auto label = parse_label(cells[j]);
        if (!label)
          throw Error(ErrorCode::UnknownLabelToken,
                      "line " + std::to_string(line_no) + ": '" + std::string(cells[j]) + "'");
        (*data.labels)[r] = *label;
        continue;
      }
      const auto value = parse_number(cells[j]);
      if (!value)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + " column " +
                                               std::to_string(j + 1) + ": '" + std::string(cells[j]) + "'");
      data.samples(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(out_col++)) = *value;
    }
  }
  return data;
}

Dataset load_csv(const std::filesystem::path& path, std::optional<int> label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), label_column);
}

std::string format_csv(const Dataset& data) {
  std::string out;
  for (std::size_t j = 0; j < data.feature_count(); ++j) {
    if (j) out += ',';
    out += j < data.feature_names.size() ? data.feature_names[j] : "x" + std::to_string(j);
  }
  if (data.labels) out += ",label";
  out += '\n';
  for (Eigen::Index i = 0; i < data.samples.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.samples.cols(); ++j) {
      if (j) out += ',';
      out += format_double(data.samples(i, j));
    }
    if (data.labels)
      out += (*data.labels)[static_cast<std::size_t>(i)] == Label::target ? ",target" : ",outlier";
    out += '\n';
  }
  return out;
}

void save_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << format_csv(data);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ZScoreStats zscore_fit(const Eigen::MatrixXd& train, Scaling scaling) {
  const Eigen::Index n = train.cols();
  ZScoreStats stats{scaling, Eigen::VectorXd(n), Eigen::VectorXd(n)};
  if (scaling == Scaling::minmax) {
    if (train.rows() < 1) throw Error(ErrorCode::TooFewSamples, "min-max needs at least one row");
    stats.mean = train.colwise().minCoeff().transpose();
    stats.std = (train.colwise().maxCoeff().transpose() - stats.mean);
    return stats;
  }
  if (train.rows() < 2) throw Error(ErrorCode::TooFewSamples, "sample std needs N >= 2");
  const double denom = static_cast<double>(train.rows() - 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mu = train.col(j).mean();
    stats.mean(j) = mu;
    stats.std(j) = std::sqrt((train.col(j).array() - mu).square().sum() / denom);
  }
  return stats;
}

Eigen::MatrixXd zscore_apply(const Eigen::MatrixXd& data, const ZScoreStats& stats) {
  if (data.cols() != stats.mean.size() || stats.std.size() != stats.mean.size())
    throw Error(ErrorCode::DimensionMismatch, "data has " + std::to_string(data.cols()) +
                                                  " features, stats have " +
                                                  std::to_string(stats.mean.size()));
  Eigen::MatrixXd out(data.rows(), data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    if (stats.std(j) == 0.0)
      out.col(j).setZero();
    else
      out.col(j) = (data.col(j).array() - stats.mean(j)) / stats.std(j);
  }
  return out;
}

Dataset zscore_apply(const Dataset& data, const ZScoreStats& stats) {
  Dataset out = data;
  out.samples = zscore_apply(data.samples, stats);
  return out;
}

std::size_t train_size(double fraction, std::size_t count) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 0.5));
}

Split occ_split(const Dataset& data, const SplitPlan& plan, int run_index) {
  if (!data.labels) throw Error(ErrorCode::MissingLabels, "split needs target/outlier labels");
  if (plan.run_count < 1 || run_index < 0 || run_index >= plan.run_count)
    throw Error(ErrorCode::InvalidArgument, "run index " + std::to_string(run_index) +
                                                " outside run count " + std::to_string(plan.run_count));
  if (!(plan.target_train_fraction > 0.0 && plan.target_train_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "target train fraction must be in (0, 1]");

  std::vector<std::size_t> target_rows, outlier_rows;
  for (std::size_t i = 0; i < data.labels->size(); ++i)
    ((*data.labels)[i] == Label::target ? target_rows : outlier_rows).push_back(i);
  if (target_rows.size() < 2) throw Error(ErrorCode::NoTargets, "need at least 2 target rows");
  if (outlier_rows.empty()) throw Error(ErrorCode::NoOutliers, "need at least 1 outlier row");

  Rng rng(derive_seed(plan.rng_seed, static_cast<std::uint64_t>(run_index)));
  std::vector<std::size_t> shuffled = target_rows;
  rng.shuffle(shuffled);
  const std::size_t k = std::clamp<std::size_t>(train_size(plan.target_train_fraction, target_rows.size()),
                                                1, target_rows.size());

  Split split;
  split.train_rows.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::vector<bool> in_train(data.sample_count(), false);
  for (auto r : split.train_rows) in_train[r] = true;
  for (std::size_t i = 0; i < data.sample_count(); ++i)
    if (!in_train[i]) split.test_rows.push_back(i);

  auto gather = [&](const std::vector<std::size_t>& rows, bool keep_labels) {
    Dataset d;
    d.feature_names = data.feature_names;
    d.samples.resize(static_cast<Eigen::Index>(rows.size()), data.samples.cols());
    if (keep_labels) d.labels.emplace();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      d.samples.row(static_cast<Eigen::Index>(i)) = data.samples.row(static_cast<Eigen::Index>(rows[i]));
      if (keep_labels) d.labels->push_back((*data.labels)[rows[i]]);
    }
    return d;
  };
  split.train = gather(split.train_rows, false);
  split.test = gather(split.test_rows, true);
  return split;
}

Dataset gen_banana(std::size_t count, double noise_std, std::uint64_t seed, int lobes) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  if (noise_std < 0.0) throw Error(ErrorCode::InvalidArgument, "noise std must be >= 0");
  if (lobes != 1 && lobes != 2) throw Error(ErrorCode::InvalidArgument, "lobes must be 1 or 2");
  Rng rng(seed);
  Dataset data;
  data.feature_names = {"x", "y"};
  data.samples.resize(static_cast<Eigen::Index>(count), 2);
  if (lobes == 2) data.labels.emplace(count, Label::target);
  const std::size_t first_lobe = lobes == 2 ? (count + 1) / 2 : count;
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
    double x = kBananaRadius * std::cos(theta);
    double y = kBananaRadius * std::sin(theta);
    if (i >= first_lobe) {
      // mirrored lobe, shifted so the two arcs face each other
      x = -x - 5.0;
      y = y + 2.5;
      (*data.labels)[i] = Label::outlier;
    }
    const auto r = static_cast<Eigen::Index>(i);
    data.samples(r, 0) = x + noise_std * rng.normal();
    data.samples(r, 1) = y + noise_std * rng.normal();
  }
  return data;
}

Dataset gen_ring(std::size_t count, double radius, double noise_std, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be > 0");
  if (noise_std < 0.0) throw Error(ErrorCode::InvalidArgument, "noise std must be >= 0");
  Rng rng(seed);
  Dataset data;
  data.feature_names = {"x", "y"};
  data.samples.resize(static_cast<Eigen::Index>(count), 2);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double r = radius + noise_std * rng.normal();
    data.samples(static_cast<Eigen::Index>(i), 0) = r * std::cos(theta);
    data.samples(static_cast<Eigen::Index>(i), 1) = r * std::sin(theta);
  }
  return data;
}

}  // namespace occelm
