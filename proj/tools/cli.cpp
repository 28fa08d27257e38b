#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "occelm/classifier.hpp"
#include "occelm/dataset.hpp"
#include "occelm/error.hpp"
#include "occelm/format.hpp"
#include "occelm/metrics.hpp"
#include "occelm/model_io.hpp"
#include "occelm/modelsel.hpp"
#include "occelm/protocol.hpp"
#include "occelm/random.hpp"

namespace occelm::cli {
namespace {

// Raised for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string label_col = "auto";
  double fracrej = 0.1;
  int folds = 5;
  double sigma_thr = 2.0;
  std::string kernel;
  std::vector<double> kern_par;
  std::optional<double> c_reg;
  std::optional<Eigen::Index> hidden;
  std::optional<Eigen::Index> n0;
  std::optional<Eigen::Index> block;
  std::string node_type;
  std::string scaling = "zscore";
  bool select = false;
};

void add_seed_out(CLI::App* cmd, CommonFlags& f, bool out_required) {
  cmd->add_option("--seed", f.seed, "RNG seed; drawn from entropy and printed when omitted");
  auto* out = cmd->add_option("-o,--out", f.out, "Output file");
  if (out_required) out->required();
}

void add_data_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--label-col", f.label_col,
                  "Label column: auto, none or a 0-based index (negative counts from the end)")
      ->capture_default_str();
}

void add_model_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--fracrej", f.fracrej, "Target fraction rejected by the threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--folds", f.folds, "Cross-validation folds for model selection")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd->add_option("--sigma-thr", f.sigma_thr, "Width of the consistency bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--kernel", f.kernel, "rbf, linear, polynomial or wavelet (kernelized variants)");
  cmd->add_option("--kern-par", f.kern_par, "Kernel parameters, comma separated")->delimiter(',');
  cmd->add_option("--c-reg", f.c_reg, "Regularization constant C")->check(CLI::PositiveNumber);
  cmd->add_option("--hidden", f.hidden, "Hidden nodes")->check(CLI::PositiveNumber);
  cmd->add_option("--n0", f.n0, "Initial block size (online variants)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--block", f.block, "Update block size (online variants)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--node-type", f.node_type, "Hidden node type")->check(CLI::IsMember({"sig", "rbf"}));
  cmd->add_option("--scaling", f.scaling, "Feature normalization")
      ->check(CLI::IsMember({"zscore", "minmax"}))
      ->capture_default_str();
}

std::uint64_t resolve_seed(const CommonFlags& f, std::ostream& out) {
  if (f.seed) return *f.seed;
  const std::uint64_t seed = entropy_seed();
  out << "seed: " << seed << '\n';
  return seed;
}

std::optional<int> resolve_label_column(const std::string& flag, const std::string& path) {
  if (flag == "none") return std::nullopt;
  if (flag != "auto") {
    int col = 0;
    const auto* end = flag.data() + flag.size();
    const auto [ptr, ec] = std::from_chars(flag.data(), end, col);
    if (ec != std::errc{} || ptr != end) throw UsageError("--label-col must be auto, none or an integer");
    return col;
  }
  // auto: a trailing "label"/"class" header, or a label token in the last cell
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  auto cell = line.substr(line.find_last_of(',') == std::string::npos ? 0 : line.find_last_of(',') + 1);
  cell.erase(std::remove_if(cell.begin(), cell.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '"'; }),
             cell.end());
  std::transform(cell.begin(), cell.end(), cell.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (cell == "label" || cell == "class" || cell == "target" || cell == "outlier" || cell == "+1" || cell == "-1")
    return -1;
  return std::nullopt;
}

Dataset load_dataset(const std::string& path, const CommonFlags& f) {
  return load_csv(path, resolve_label_column(f.label_col, path));
}

VariantId resolve_variant(const std::string& id, const CommonFlags& f) {
  VariantId variant = as_usage([&] { return parse_variant(id); });
  if (!f.node_type.empty()) {
    if (variant.kernelized()) throw UsageError("--node-type does not apply to kernelized variants");
    variant.node_type = parse_node_type(f.node_type);
  }
  return variant;
}

ParamSet resolve_params(const VariantId& variant, const CommonFlags& f) {
  ParamSet p = default_params(variant);
  if (!f.kernel.empty() || !f.kern_par.empty()) {
    if (!variant.kernelized()) throw UsageError("--kernel/--kern-par only apply to ockelm and aakelm");
    const KernelKind kind = f.kernel.empty() ? p.kernel.kind : as_usage([&] { return parse_kernel_kind(f.kernel); });
    if (kind == KernelKind::random) throw UsageError("kernel 'random' is implied by the non-kernel variants");
    p.kernel = f.kern_par.empty() ? KernelSpec{.kind = kind} : as_usage([&] { return make_kernel(kind, f.kern_par); });
    as_usage([&] {
      p.kernel.validate();
      return 0;
    });
  }
  if (f.c_reg) {
    if (variant.online()) throw UsageError("--c-reg does not apply to online variants");
    p.C = *f.c_reg;
  }
  if (f.hidden) {
    if (variant.kernelized()) throw UsageError("--hidden does not apply to kernelized variants");
    p.hidden = *f.hidden;
  }
  if ((f.n0 || f.block) && !variant.online()) throw UsageError("--n0/--block only apply to online variants");
  if (f.n0) p.N0 = *f.n0;
  if (f.block) p.block = *f.block;
  return p;
}

BenchmarkSpec make_spec(const VariantId& variant, const CommonFlags& f, std::uint64_t seed) {
  BenchmarkSpec spec;
  spec.variant = variant;
  spec.params = resolve_params(variant, f);
  spec.kernel = spec.params.kernel.kind;
  spec.tspec.kind = variant.threshold;
  spec.tspec.fracrej = f.fracrej;
  as_usage([&] {
    spec.tspec.validate();
    return 0;
  });
  spec.scaling = f.scaling == "minmax" ? Scaling::minmax : Scaling::zscore;
  spec.folds = f.folds;
  spec.sigma_thr = f.sigma_thr;
  spec.seed = seed;
  return spec;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  file << text;
  if (!file) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

void print_selection(const SelectionResult& sel, std::ostream& out) {
  out << "selection: " << sel.rows.size() << " combinations, M=" << sel.M
      << " err_thr=" << format_fixed(sel.err_thr, 4) << " rejection=" << format_fixed(sel.chosen_rejection, 4)
      << (sel.consistent ? " consistent" : " (no consistent combination, lowest rejection kept)") << '\n';
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string shape;
  std::size_t count = 100;
  std::optional<double> noise;
  double radius = 5.0;
  int lobes = 1;
};

int cmd_gen(const GenArgs& a, const CommonFlags& f, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(f, out);
  const Dataset data = a.shape == "banana" ? gen_banana(a.count, a.noise.value_or(1.0), seed, a.lobes)
                                           : gen_ring(a.count, a.radius, a.noise.value_or(0.1 * a.radius), seed);
  save_csv(f.out, data);
  out << "wrote " << data.sample_count() << " rows to " << f.out << '\n';
  return kExitOk;
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string dataset;
  std::string classifier;
  std::string selection_out;
};

int cmd_train(const TrainArgs& a, const CommonFlags& f, std::ostream& out) {
  const VariantId variant = resolve_variant(a.classifier, f);
  const Dataset data = load_dataset(a.dataset, f);
  const std::uint64_t seed = resolve_seed(f, out);
  BenchmarkSpec spec = make_spec(variant, f, seed);
  const Eigen::MatrixXd X = data.targets();
  ParamSet params = spec.params;
  if (f.select) {
    const SelectionResult sel = run_selection(X, spec);
    print_selection(sel, out);
    if (!a.selection_out.empty()) write_text(a.selection_out, selection_csv(sel, variant));
    params = sel.chosen;
  }
  const Model model = train_classifier(X, classifier_config(spec, params, model_seed(seed, 0)));
  save_model(f.out, model);
  out << variant.id() << ' ' << params.describe(variant) << '\n';
  out << "trained on " << X.rows() << " targets, model written to " << f.out << '\n';
  return kExitOk;
}

// ---- score -----------------------------------------------------------------

struct ScoreArgs {
  std::string model;
  std::string dataset;
};

int cmd_score(const ScoreArgs& a, const CommonFlags& f, std::ostream& out, std::ostream& err) {
  const Model model = load_model(a.model);
  const Dataset data = load_dataset(a.dataset, f);
  if (data.samples.cols() != input_dim(model))
    throw Error(ErrorCode::DimensionMismatch, "model expects " + std::to_string(input_dim(model)) +
                                                  " features, dataset has " + std::to_string(data.samples.cols()));
  const auto decisions = score(model, data.samples);
  std::ostringstream csv;
  csv << "row,score,thresh,is_target" << (data.labels ? ",label" : "") << '\n';
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const auto& d = decisions[i];
    csv << i << ',' << format_double(d.score) << ',' << format_double(d.thresh) << ',' << (d.is_target ? 1 : 0);
    if (data.labels) csv << ',' << ((*data.labels)[i] == Label::target ? "target" : "outlier");
    csv << '\n';
  }
  if (!f.out.empty()) write_text(f.out, csv.str());
  else out << csv.str();

  const auto accepted = std::count_if(decisions.begin(), decisions.end(), [](const Decision& d) { return d.is_target; });
  (f.out.empty() ? err : out) << "accepted " << accepted << " of " << decisions.size() << " rows\n";
  if (data.labels && !f.out.empty()) {
    const ConfusionCounts c = confuse(decisions, *data.labels);
    const EvalReport r = measures(c);
    out << "tp=" << c.tp << " fp=" << c.fp << " tn=" << c.tn << " fn=" << c.fn << " F1=" << format_fixed(r.f1, 2)
        << " ACC=" << format_fixed(r.accuracy, 2) << " AUC=" << format_fixed(r.auc, 2) << '\n';
  }
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string dataset;
  std::string classifier;
  int runs = 20;
  std::string name;
  std::string runs_out;
  std::string selection_out;
};

int cmd_bench(const BenchArgs& a, const CommonFlags& f, std::ostream& out, std::ostream& err) {
  const VariantId variant = resolve_variant(a.classifier, f);
  const Dataset data = load_dataset(a.dataset, f);
  const std::uint64_t seed = resolve_seed(f, out);
  BenchmarkSpec spec = make_spec(variant, f, seed);
  spec.dataset_name = a.name.empty() ? std::filesystem::path(a.dataset).stem().string() : a.name;
  spec.run_count = a.runs;
  spec.select = f.select;

  const std::size_t calls_before = selection_call_count();
  const BenchmarkResult result = run_benchmark(data, spec);
  err << "model selection calls: " << selection_call_count() - calls_before << '\n';
  for (const auto& r : result.runs)
    err << "run " << r.run << " train_seconds " << format_fixed(r.train_seconds, 4) << '\n';

  if (result.selection) print_selection(*result.selection, out);
  out << variant.id() << ' ' << result.params.describe(variant) << '\n';
  const std::string report = report_header() + "\n" +
                             report_row(spec.dataset_name, variant.classifier_name(), variant.variant_name(),
                                        result.aggregate) +
                             "\n";
  out << report;
  if (!f.out.empty()) write_text(f.out, report);
  if (!a.runs_out.empty()) write_text(a.runs_out, runs_csv(result));
  if (!a.selection_out.empty() && result.selection)
    write_text(a.selection_out, selection_csv(*result.selection, variant));
  return kExitOk;
}

// ---- select ----------------------------------------------------------------

struct SelectArgs {
  std::string dataset;
  std::string classifier;
};

int cmd_select(const SelectArgs& a, const CommonFlags& f, std::ostream& out) {
  const VariantId variant = resolve_variant(a.classifier, f);
  const Dataset data = load_dataset(a.dataset, f);
  const std::uint64_t seed = resolve_seed(f, out);
  const BenchmarkSpec spec = make_spec(variant, f, seed);
  const SelectionResult sel = run_selection(data.targets(), spec);
  print_selection(sel, out);
  out << variant.id() << ' ' << sel.chosen.describe(variant) << '\n';
  const std::string csv = selection_csv(sel, variant);
  if (!f.out.empty()) write_text(f.out, csv);
  return kExitOk;
}

// ---- grid ------------------------------------------------------------------

struct GridArgs {
  std::string model;
  std::vector<double> bounds;
  int resolution = 100;
};

int cmd_grid(const GridArgs& a, const CommonFlags& f, std::ostream& out) {
  if (a.bounds.size() != 4) throw UsageError("--bounds takes xmin xmax ymin ymax");
  const double xmin = a.bounds[0], xmax = a.bounds[1], ymin = a.bounds[2], ymax = a.bounds[3];
  if (!(xmin <= xmax) || !(ymin <= ymax)) throw UsageError("--bounds needs xmin <= xmax and ymin <= ymax");
  const Model model = load_model(a.model);
  if (input_dim(model) != 2)
    throw Error(ErrorCode::NotTwoDimensional, "grid export needs a 2-feature model, got " +
                                                  std::to_string(input_dim(model)));
  const int res = a.resolution;
  auto coord = [res](double lo, double hi, int i) { return res == 1 ? lo : lo + i * (hi - lo) / (res - 1); };
  Eigen::MatrixXd points(static_cast<Eigen::Index>(res) * res, 2);
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const Eigen::Index r = static_cast<Eigen::Index>(iy) * res + ix;
      points(r, 0) = coord(xmin, xmax, ix);
      points(r, 1) = coord(ymin, ymax, iy);
    }
  const auto decisions = score(model, points);
  std::ostringstream csv;
  csv << "x,y,score,is_target\n";
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    const auto& d = decisions[static_cast<std::size_t>(r)];
    csv << format_double(points(r, 0)) << ',' << format_double(points(r, 1)) << ',' << format_double(d.score) << ','
        << (d.is_target ? 1 : 0) << '\n';
  }
  write_text(f.out, csv.str());
  out << "wrote " << points.rows() << " grid points to " << f.out << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-class classification with ELM and online sequential ELM", "occelm"};
  app.require_subcommand(1, 1);

  CommonFlags f;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic 2-D dataset");
  gen_cmd->add_option("shape", gen.shape, "banana or ring")->required()->check(CLI::IsMember({"banana", "ring"}));
  gen_cmd->add_option("--count", gen.count, "Number of points")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Gaussian noise std (banana 1, ring 0.1 * radius)")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--radius", gen.radius, "Ring radius")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--lobes", gen.lobes, "Banana lobes; 2 adds a labeled outlier lobe")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  add_seed_out(gen_cmd, f, true);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a classifier on the targets of a dataset");
  train_cmd->add_option("dataset", train.dataset, "CSV file")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("classifier", train.classifier, "Variant id, e.g. aakelm_thr1 or os_ocelm_thr2_rbf")
      ->required();
  train_cmd->add_flag("--select", f.select, "Choose hyperparameters by consistency-based selection");
  train_cmd->add_option("--selection-out", train.selection_out, "Write the selection table as CSV");
  add_seed_out(train_cmd, f, true);
  add_data_flags(train_cmd, f);
  add_model_flags(train_cmd, f);

  ScoreArgs sc;
  auto* score_cmd = app.add_subcommand("score", "Score a dataset with a trained model");
  score_cmd->add_option("model", sc.model, "Model file")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("dataset", sc.dataset, "CSV file")->required()->check(CLI::ExistingFile);
  add_seed_out(score_cmd, f, false);
  add_data_flags(score_cmd, f);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Repeated-split benchmark on a labeled dataset");
  bench_cmd->add_option("dataset", bench.dataset, "Labeled CSV file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("classifier", bench.classifier, "Variant id")->required();
  bench_cmd->add_option("--runs", bench.runs, "Number of runs")->check(CLI::Range(1, 100000))->capture_default_str();
  bench_cmd->add_option("--name", bench.name, "Dataset name in the report (default: file stem)");
  bench_cmd->add_option("--runs-out", bench.runs_out, "Write per-run measures as CSV");
  bench_cmd->add_option("--selection-out", bench.selection_out, "Write the selection table as CSV");
  bool no_select = false;
  bench_cmd->add_flag("--select", "Select hyperparameters on run 0 (the default)");
  bench_cmd->add_flag("--no-select", no_select, "Use the given parameters for every run");
  add_seed_out(bench_cmd, f, false);
  add_data_flags(bench_cmd, f);
  add_model_flags(bench_cmd, f);

  SelectArgs sel;
  auto* select_cmd = app.add_subcommand("select", "Run model selection and print the table");
  select_cmd->add_option("dataset", sel.dataset, "CSV file")->required()->check(CLI::ExistingFile);
  select_cmd->add_option("classifier", sel.classifier, "Variant id")->required();
  add_seed_out(select_cmd, f, false);
  add_data_flags(select_cmd, f);
  add_model_flags(select_cmd, f);

  GridArgs grid;
  auto* grid_cmd = app.add_subcommand("grid", "Evaluate a 2-D model over a lattice");
  grid_cmd->add_option("model", grid.model, "Model file")->required()->check(CLI::ExistingFile);
  grid_cmd->add_option("--bounds", grid.bounds, "xmin xmax ymin ymax")->expected(4)->required();
  grid_cmd->add_option("--resolution", grid.resolution, "Points per axis")
      ->check(CLI::Range(1, 10000))
      ->capture_default_str();
  add_seed_out(grid_cmd, f, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    for (const auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, f, out);
    if (train_cmd->parsed()) return cmd_train(train, f, out);
    if (score_cmd->parsed()) return cmd_score(sc, f, out, err);
    if (bench_cmd->parsed()) {
      f.select = !no_select;
      return cmd_bench(bench, f, out, err);
    }
    if (select_cmd->parsed()) return cmd_select(sel, f, out);
    if (grid_cmd->parsed()) return cmd_grid(grid, f, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace occelm::cli
