#include "occelm/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "occelm/error.hpp"
#include "occelm/format.hpp"

namespace occelm {

namespace {

constexpr std::string_view kMagic = "OCCELM v1";

class Writer {
 public:
  void line(const std::string& key, const std::string& value) { out_ << key << ' ' << value << '\n'; }
  void number(const std::string& key, double value) { line(key, format_double(value)); }

  void matrix(const std::string& name, const Eigen::MatrixXd& m) {
    out_ << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out_ << (j ? " " : "") << format_double(m(i, j));
      out_ << '\n';
    }
  }

  void vector(const std::string& name, const double* data, Eigen::Index n) {
    out_ << "vector " << name << ' ' << n << '\n';
    for (Eigen::Index i = 0; i < n; ++i) out_ << (i ? " " : "") << format_double(data[i]);
    out_ << '\n';
  }
  void vector(const std::string& name, const Eigen::VectorXd& v) { vector(name, v.data(), v.size()); }

  void threshold(const ThresholdSpec& t) {
    out_ << "threshold " << to_string(t.kind) << ' ' << format_double(t.fracrej) << ' '
         << format_double(t.std_mult) << ' ' << format_double(t.condn1) << ' ' << format_double(t.condn2_frac)
         << '\n';
  }

  void zstats(const ZScoreStats& z) {
    line("scaling", z.scaling == Scaling::zscore ? "zscore" : "minmax");
    vector("mean", z.mean);
    vector("std", z.std);
  }

  void layer(const HiddenLayer& l) {
    out_ << "layer " << to_string(l.node_type) << ' ' << l.hidden() << ' ' << l.inputs() << '\n';
    matrix("W", l.W);
    vector("b", l.b);
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  std::string word() {
    std::string w;
    if (!(in_ >> w)) throw Error(ErrorCode::ModelFormat, "unexpected end of model file");
    return w;
  }

  void expect(std::string_view key) {
    const auto w = word();
    if (w != key) throw Error(ErrorCode::ModelFormat, "expected '" + std::string(key) + "', found '" + w + "'");
  }

  double number() {
    const auto w = word();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size())
      throw Error(ErrorCode::ModelFormat, "bad number '" + w + "'");
    return v;
  }

  Eigen::Index index() {
    const double v = number();
    if (v < 0 || v != static_cast<double>(static_cast<Eigen::Index>(v)))
      throw Error(ErrorCode::ModelFormat, "bad size");
    return static_cast<Eigen::Index>(v);
  }

  double keyed(std::string_view key) {
    expect(key);
    return number();
  }

  Eigen::Index keyed_index(std::string_view key) {
    expect(key);
    return index();
  }

  Eigen::MatrixXd matrix(std::string_view name) {
    expect("matrix");
    expect(name);
    const Eigen::Index r = index(), c = index();
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = number();
    return m;
  }

  Eigen::VectorXd vector(std::string_view name) {
    expect("vector");
    expect(name);
    const Eigen::Index n = index();
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = number();
    return v;
  }

  ThresholdSpec threshold() {
    expect("threshold");
    ThresholdSpec t;
    t.kind = parse_threshold_kind(word());
    t.fracrej = number();
    t.std_mult = number();
    t.condn1 = number();
    t.condn2_frac = number();
    return t;
  }

  ZScoreStats zstats() {
    expect("scaling");
    const auto kind = word();
    if (kind != "zscore" && kind != "minmax") throw Error(ErrorCode::ModelFormat, "bad scaling '" + kind + "'");
    ZScoreStats z;
    z.scaling = kind == "zscore" ? Scaling::zscore : Scaling::minmax;
    z.mean = vector("mean");
    z.std = vector("std");
    return z;
  }

  HiddenLayer layer() {
    expect("layer");
    HiddenLayer l;
    l.node_type = parse_node_type(word());
    const Eigen::Index m = index(), n = index();
    l.W = matrix("W");
    l.b = vector("b");
    if (l.W.rows() != m || l.W.cols() != n || l.b.size() != m)
      throw Error(ErrorCode::ModelFormat, "layer dimensions disagree");
    return l;
  }

 private:
  std::istringstream in_;
};

std::string serialize_offline(const OfflineModel& m) {
  Writer w;
  w.line("model", "offline");
  w.line("family", to_string(m.family));
  if (const auto* layer = std::get_if<HiddenLayer>(&m.mapping)) {
    w.line("mapping", "random");
    w.layer(*layer);
  } else {
    const auto& spec = std::get<KernelSpec>(m.mapping);
    const auto params = kernel_params(spec);
    std::string value = "kernel " + std::string(to_string(spec.kind)) + " " + std::to_string(params.size());
    for (double p : params) value += " " + format_double(p);
    w.line("mapping", value);
  }
  w.number("C", m.C);
  w.number("R", m.R);
  w.threshold(m.tspec);
  w.number("thresh", m.thresh);
  w.zstats(m.zstats);
  w.matrix("basis", m.basis);
  w.matrix("beta", m.beta);
  w.vector("train_errors", m.train_errors);
  return w.str();
}

std::string serialize_online(const OnlineModel& m) {
  if (!m.finalized()) throw Error(ErrorCode::NotFinalized, "only finalized online models are saved");
  Writer w;
  w.line("model", "online");
  w.line("family", to_string(m.family));
  w.layer(m.layer);
  w.number("R", m.R);
  w.line("seen_count", std::to_string(m.seen_count));
  w.line("N0", std::to_string(m.N0));
  w.line("block", std::to_string(m.block));
  w.threshold(m.tspec);
  w.number("thresh", *m.thresh);
  w.zstats(m.zstats);
  w.matrix("P", m.rls.P);
  w.matrix("beta", m.rls.beta);
  w.vector("train_errors", m.train_errors.data(), static_cast<Eigen::Index>(m.train_errors.size()));
  return w.str();
}

OfflineModel parse_offline(Reader& r) {
  OfflineModel m;
  r.expect("family");
  m.family = parse_family(r.word());
  r.expect("mapping");
  const auto kind = r.word();
  if (kind == "random") {
    m.mapping = r.layer();
  } else if (kind == "kernel") {
    const auto k = parse_kernel_kind(r.word());
    const auto count = r.index();
    std::vector<double> params;
    for (Eigen::Index i = 0; i < count; ++i) params.push_back(r.number());
    m.mapping = make_kernel(k, params);
  } else {
    throw Error(ErrorCode::ModelFormat, "bad mapping '" + kind + "'");
  }
  m.C = r.keyed("C");
  m.R = r.keyed("R");
  m.tspec = r.threshold();
  m.thresh = r.keyed("thresh");
  m.zstats = r.zstats();
  m.basis = r.matrix("basis");
  m.beta = r.matrix("beta");
  m.train_errors = r.vector("train_errors");
  const Eigen::Index k = m.family == Family::boundary ? 1 : m.zstats.mean.size();
  if (m.basis.rows() != m.beta.rows() || m.beta.cols() != k)
    throw Error(ErrorCode::ModelFormat, "basis/beta dimensions disagree");
  return m;
}

OnlineModel parse_online(Reader& r) {
  OnlineModel m;
  r.expect("family");
  m.family = parse_family(r.word());
  m.layer = r.layer();
  m.R = r.keyed("R");
  m.seen_count = r.keyed_index("seen_count");
  m.N0 = r.keyed_index("N0");
  m.block = r.keyed_index("block");
  m.tspec = r.threshold();
  m.thresh = r.keyed("thresh");
  m.zstats = r.zstats();
  m.rls.P = r.matrix("P");
  m.rls.beta = r.matrix("beta");
  const Eigen::VectorXd e = r.vector("train_errors");
  m.train_errors.assign(e.data(), e.data() + e.size());
  m.retain_rows = false;
  if (m.rls.beta.rows() != m.layer.hidden()) throw Error(ErrorCode::ModelFormat, "beta/layer dimensions disagree");
  return m;
}

}  // namespace

std::string serialize(const Model& model) {
  std::string body = std::visit(
      [](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, OnlineModel>)
          return serialize_online(m);
        else
          return serialize_offline(m);
      },
      model);
  return std::string(kMagic) + "\n" + body + "end\n";
}

Model deserialize(const std::string& text) {
  if (text.compare(0, kMagic.size(), kMagic) != 0)
    throw Error(ErrorCode::ModelFormat, "missing '" + std::string(kMagic) + "' header");
  Reader r(text.substr(kMagic.size()));
  r.expect("model");
  const auto type = r.word();
  Model model;
  if (type == "offline") model = parse_offline(r);
  else if (type == "online") model = parse_online(r);
  else throw Error(ErrorCode::ModelFormat, "unknown model type '" + type + "'");
  r.expect("end");
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << serialize(model);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

}  // namespace occelm
