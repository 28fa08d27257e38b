#include "occelm/classifier.hpp"

#include <sstream>

#include "occelm/error.hpp"
#include "occelm/format.hpp"

namespace occelm {

Family VariantId::family() const {
  switch (method) {
    case Method::ocelm:
    case Method::ockelm:
    case Method::os_ocelm: return Family::boundary;
    default: return Family::reconstruction;
  }
}

namespace {

constexpr std::pair<std::string_view, Method> kMethods[] = {
    {"os_ocelm", Method::os_ocelm}, {"os_aaelm", Method::os_aaelm}, {"ockelm", Method::ockelm},
    {"aakelm", Method::aakelm},     {"ocelm", Method::ocelm},       {"aaelm", Method::aaelm},
};

std::string_view method_id(Method m) {
  for (const auto& [name, method] : kMethods)
    if (method == m) return name;
  return "?";
}

}  // namespace

std::string VariantId::id() const {
  std::string out = std::string(method_id(method)) + "_" + std::string(to_string(threshold));
  if (online()) out += "_" + std::string(to_string(node_type));
  return out;
}

std::string VariantId::classifier_name() const {
  switch (method) {
    case Method::ocelm: return "OCELM";
    case Method::ockelm: return "OCKELM";
    case Method::aaelm: return "AAELM";
    case Method::aakelm: return "AAKELM";
    case Method::os_ocelm: return "OS-OCELM";
    case Method::os_aaelm: return "OS-AAELM";
  }
  return "?";
}

std::string VariantId::variant_name() const {
  std::string out = threshold == ThresholdKind::thr1 ? "Thr1" : threshold == ThresholdKind::thr2 ? "Thr2" : "Thr3";
  if (online()) out += node_type == NodeType::rbf ? "(RBF)" : "(Sig)";
  return out;
}

VariantId parse_variant(std::string_view text) {
  std::string s(text);
  for (auto& c : s) {
    if (c == '-') c = '_';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  VariantId v;
  std::string_view rest = s;
  bool matched = false;
  for (const auto& [name, method] : kMethods) {
    if (rest.substr(0, name.size()) == name && rest.size() > name.size() && rest[name.size()] == '_') {
      v.method = method;
      rest.remove_prefix(name.size() + 1);
      matched = true;
      break;
    }
  }
  if (!matched) throw Error(ErrorCode::InvalidArgument, "unknown classifier '" + std::string(text) + "'");
  const auto underscore = rest.find('_');
  const std::string_view thr = rest.substr(0, underscore);
  v.threshold = parse_threshold_kind(thr);
  if (underscore != std::string_view::npos) {
    if (!v.online())
      throw Error(ErrorCode::InvalidArgument, "node-type suffix only applies to online variants: '" +
                                                  std::string(text) + "'");
    v.node_type = parse_node_type(rest.substr(underscore + 1));
  }
  if (v.family() == Family::boundary && v.threshold == ThresholdKind::thr3)
    throw Error(ErrorCode::Thr3NotApplicable, std::string(text) + ": boundary classifiers support thr1/thr2 only");
  return v;
}

std::string ParamSet::describe(const VariantId& variant) const {
  std::ostringstream out;
  if (variant.kernelized()) {
    out << "kernel=" << to_string(kernel.kind);
    const auto params = kernel_params(kernel);
    if (!params.empty()) {
      out << " kern_par=";
      for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << format_double(params[i]);
    }
  } else {
    out << "hidden=" << hidden;
  }
  if (variant.online()) {
    out << " N0=" << N0 << " block=" << block;
  } else {
    out << " C=" << format_double(C);
  }
  return out.str();
}

ParamSet default_params(const VariantId& variant) {
  ParamSet p;
  if (variant.kernelized()) {
    p.kernel.kind = KernelKind::rbf;
  } else {
    p.kernel.kind = KernelKind::random;
    p.hidden = variant.online() ? 20 : 100;
  }
  return p;
}

Model train_classifier(const Eigen::MatrixXd& X, const ClassifierConfig& cfg) {
  ThresholdSpec tspec = cfg.tspec;
  tspec.kind = cfg.variant.threshold;
  const Family family = cfg.variant.family();
  if (cfg.variant.online()) {
    OnlineConfig oc;
    oc.family = family;
    oc.node_type = cfg.variant.node_type;
    oc.hidden = cfg.params.hidden;
    oc.N0 = cfg.params.N0;
    oc.block = cfg.params.block;
    oc.tspec = tspec;
    oc.R = cfg.R;
    oc.scaling = cfg.scaling;
    oc.retain_rows = cfg.retain_rows;
    oc.seed = cfg.seed;
    return train_online(X, oc);
  }
  OfflineConfig fc;
  fc.family = family;
  fc.tspec = tspec;
  fc.C = cfg.params.C;
  fc.R = cfg.R;
  fc.scaling = cfg.scaling;
  fc.seed = cfg.seed;
  if (cfg.variant.kernelized()) {
    fc.kernel = cfg.params.kernel;
    if (fc.kernel.kind == KernelKind::random)
      throw Error(ErrorCode::InvalidArgument, "kernelized variants need an explicit kernel");
  } else {
    fc.kernel.kind = KernelKind::random;
    fc.node_type = cfg.variant.node_type;
    fc.hidden = cfg.params.hidden;
  }
  return train_offline(X, fc);
}

std::vector<Decision> score(const Model& model, const Eigen::MatrixXd& Y) {
  return std::visit(
      [&](const auto& m) -> std::vector<Decision> {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, OnlineModel>)
          return os_score(m, Y);
        else
          return score(m, Y);
      },
      model);
}

Eigen::Index input_dim(const Model& model) {
  return std::visit([](const auto& m) { return m.input_dim(); }, model);
}

}  // namespace occelm
