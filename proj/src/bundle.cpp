#include "aus/bundle.hpp"

#include <fstream>

#include "json.hpp"

namespace aus {
namespace {

using Json = nlohmann::ordered_json;

Json coeffs_to_json(const SpectralCoeffs& A) {
  Json out = Json::object();
  for (const auto& [label, mat] : A.table) {
    Json flat = Json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r)
      for (Eigen::Index c = 0; c < mat.cols(); ++c)
        flat.push_back(Json::array({mat(r, c).real(), mat(r, c).imag()}));
    out[label.to_string()] = std::move(flat);
  }
  return out;
}

SpectralCoeffs coeffs_from_json(const GroupDescriptor& G, const Json& j, const char* where) {
  if (!j.is_object()) throw BundleFormatError(std::string(where) + ": expected an object");
  SpectralCoeffs A;
  A.G = G;
  for (const auto& [key, flat] : j.items()) {
    IrrepLabel label;
    try {
      label = IrrepLabel::parse(G, key);
    } catch (const std::exception& e) {
      throw BundleFormatError(std::string(where) + ": bad label '" + key + "': " + e.what());
    }
    const int d = label.degree();
    if (!flat.is_array() || flat.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
      throw BundleFormatError(std::string(where) + ": label '" + key + "' needs " +
                              std::to_string(d * d) + " entries");
    Eigen::MatrixXcd mat(d, d);
    std::size_t idx = 0;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c, ++idx) {
        const Json& pair = flat[idx];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
          throw BundleFormatError(std::string(where) + ": entries must be [re, im] pairs");
        mat(r, c) = Cplx(pair[0].get<double>(), pair[1].get<double>());
      }
    A.table.emplace(label, std::move(mat));
  }
  return A;
}

Json intervals_to_json(const std::vector<std::pair<double, double>>& iv) {
  Json out = Json::array();
  for (const auto& ab : iv) out.push_back(Json::array({ab.first, ab.second}));
  return out;
}

std::vector<std::pair<double, double>> intervals_from_json(const Json& j, const char* where) {
  if (!j.is_array()) throw BundleFormatError(std::string(where) + ": expected an array");
  std::vector<std::pair<double, double>> out;
  out.reserve(j.size());
  for (const Json& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw BundleFormatError(std::string(where) + ": intervals must be [a, b] pairs");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

const Json& field(const Json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw BundleFormatError(std::string("missing field '") + name + "'");
  return *it;
}

double num_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number()) throw BundleFormatError(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer())
    throw BundleFormatError(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

}  // namespace

std::string bundle_to_json(const SystemBundle& bundle) {
  Json top = Json::object();
  top["version"] = bundle.version;
  top["group"] = bundle.params.G.to_string();
  top["f0"] = coeffs_to_json(bundle.params.f0);
  top["epsilons"] = bundle.params.epsilons;
  Json recs = Json::array();
  for (const StageRecord& r : bundle.records) {
    Json jr = Json::object();
    jr["m"] = r.m;
    jr["k_m"] = r.k_m;
    jr["delta_m"] = r.delta_m;
    Json lam = Json::array();
    for (const IrrepLabel& label : r.lambda) lam.push_back(label.to_string());
    jr["lambda"] = std::move(lam);
    jr["coeffs"] = coeffs_to_json(r.coeffs);
    jr["omega"] = intervals_to_json(r.omega);
    jr["omega_measure"] = r.omega_measure;
    jr["sup_err"] = r.sup_err;
    recs.push_back(std::move(jr));
  }
  top["records"] = std::move(recs);
  Json tree = Json::object();
  tree["k_max"] = bundle.tree.K_max;
  tree["nu_total"] = bundle.tree.nu_total;
  tree["mesh_size"] = bundle.tree.mesh_size_used;
  Json levels = Json::array();
  for (const auto& level : bundle.tree.boundaries) levels.push_back(level);
  tree["boundaries"] = std::move(levels);
  top["tree"] = std::move(tree);
  Json params = Json::object();
  params["M"] = bundle.params.M;
  params["K_cap"] = bundle.params.K_cap;
  params["B_cap"] = bundle.params.B_cap;
  params["dense_factor"] = bundle.params.dense_factor;
  params["cdf_mesh"] = bundle.params.cdf_mesh;
  params["seed"] = bundle.params.seed;
  top["params"] = std::move(params);
  top["partial"] = bundle.partial;
  if (bundle.partial) top["error"] = bundle.error;
  return top.dump(2) + "\n";
}

SystemBundle bundle_from_json(const std::string& text) {
  Json top;
  try {
    top = Json::parse(text);
  } catch (const std::exception& e) {
    throw BundleFormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!top.is_object()) throw BundleFormatError("top level must be an object");
  const int version = int_field(top, "version");
  if (version != kBundleVersion)
    throw BundleFormatError("unsupported bundle version " + std::to_string(version));

  SystemBundle bundle;
  bundle.version = version;
  try {
    bundle.params.G = GroupDescriptor::parse(field(top, "group").get<std::string>());
  } catch (const BundleFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw BundleFormatError(std::string("bad group: ") + e.what());
  }
  bundle.params.f0 = coeffs_from_json(bundle.params.G, field(top, "f0"), "f0");
  const Json& eps = field(top, "epsilons");
  if (!eps.is_array()) throw BundleFormatError("epsilons must be an array");
  for (const Json& e : eps) {
    if (!e.is_number()) throw BundleFormatError("epsilons must be numbers");
    bundle.params.epsilons.push_back(e.get<double>());
  }

  const Json& recs = field(top, "records");
  if (!recs.is_array()) throw BundleFormatError("records must be an array");
  for (const Json& jr : recs) {
    StageRecord r;
    r.m = int_field(jr, "m");
    r.k_m = int_field(jr, "k_m");
    r.delta_m = num_field(jr, "delta_m");
    const Json& lam = field(jr, "lambda");
    if (!lam.is_array()) throw BundleFormatError("lambda must be an array");
    for (const Json& s : lam) {
      if (!s.is_string()) throw BundleFormatError("lambda entries must be label strings");
      try {
        r.lambda.push_back(IrrepLabel::parse(bundle.params.G, s.get<std::string>()));
      } catch (const std::exception& e) {
        throw BundleFormatError(std::string("bad lambda label: ") + e.what());
      }
    }
    r.coeffs = coeffs_from_json(bundle.params.G, field(jr, "coeffs"), "coeffs");
    r.omega = intervals_from_json(field(jr, "omega"), "omega");
    r.omega_measure = num_field(jr, "omega_measure");
    r.sup_err = num_field(jr, "sup_err");
    bundle.records.push_back(std::move(r));
  }

  const Json& jt = field(top, "tree");
  bundle.tree.K_max = int_field(jt, "k_max");
  bundle.tree.nu_total = num_field(jt, "nu_total");
  bundle.tree.mesh_size_used = field(jt, "mesh_size").get<std::size_t>();
  const Json& levels = field(jt, "boundaries");
  if (!levels.is_array()) throw BundleFormatError("tree boundaries must be an array");
  for (const Json& level : levels) {
    if (!level.is_array()) throw BundleFormatError("tree level must be an array");
    std::vector<double> b;
    for (const Json& v : level) {
      if (!v.is_number()) throw BundleFormatError("tree boundaries must be numbers");
      b.push_back(v.get<double>());
    }
    bundle.tree.boundaries.push_back(std::move(b));
  }
  if (bundle.tree.K_max < 0 ||
      bundle.tree.boundaries.size() != static_cast<std::size_t>(bundle.tree.K_max) + 1)
    throw BundleFormatError("tree levels do not match k_max");
  for (int k = 0; k <= bundle.tree.K_max; ++k) {
    const auto& level = bundle.tree.boundaries[static_cast<std::size_t>(k)];
    if (level.size() != (std::size_t(1) << k) + 1)
      throw BundleFormatError("tree level " + std::to_string(k) + " has wrong cell count");
    bundle.tree.cores.push_back(shrink_cores(bundle.tree, k));
  }

  const Json& jp = field(top, "params");
  bundle.params.M = int_field(jp, "M");
  bundle.params.K_cap = int_field(jp, "K_cap");
  bundle.params.B_cap = int_field(jp, "B_cap");
  bundle.params.dense_factor = int_field(jp, "dense_factor");
  bundle.params.cdf_mesh = field(jp, "cdf_mesh").get<std::size_t>();
  bundle.params.seed = field(jp, "seed").get<std::uint64_t>();
  bundle.partial = field(top, "partial").get<bool>();
  if (bundle.partial) bundle.error = field(top, "error").get<std::string>();
  return bundle;
}

std::string coeffs_to_json_text(const SpectralCoeffs& A) { return coeffs_to_json(A).dump(2); }

SpectralCoeffs coeffs_from_json_text(const GroupDescriptor& G, const std::string& text,
                                     const std::string& where) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw BundleFormatError(where + ": not valid JSON: " + e.what());
  }
  return coeffs_from_json(G, j, where.c_str());
}

void save_bundle(const SystemBundle& bundle, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << bundle_to_json(bundle);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

SystemBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bundle_from_json(text);
}

}  // namespace aus
