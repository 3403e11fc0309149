#include "aus/scenario.hpp"

#include <cmath>

#include "aus/bundle.hpp"
#include "json.hpp"

namespace aus {
namespace {

using Json = nlohmann::ordered_json;

}  // namespace

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string piece = text.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw ScenarioError("bad epsilon value '" + piece + "'");
    }
    if (used != piece.size()) throw ScenarioError("bad epsilon value '" + piece + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<double> geometric_eps(double start, double ratio, int count) {
  if (count < 1) throw ScenarioError("geometric epsilon count must be >= 1");
  if (!(start > 0.0) || !(ratio > 0.0) || !(ratio < 1.0))
    throw ScenarioError("geometric epsilons need start > 0 and 0 < ratio < 1");
  std::vector<double> out;
  double v = start;
  for (int i = 0; i < count; ++i, v *= ratio) out.push_back(v);
  return out;
}

SpectralCoeffs constant_one(const GroupDescriptor& G) {
  SpectralCoeffs one;
  one.G = G;
  const std::vector<IrrepLabel> trivial = enumerate_irreps(G, 0);
  Eigen::MatrixXcd unit(1, 1);
  unit(0, 0) = 1.0;
  one.table.emplace(trivial.front(), std::move(unit));
  return one;
}

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ScenarioError("config must be a JSON object");
  ScenarioConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "group") {
        cfg.group = value.get<std::string>();
      } else if (key == "f0") {
        cfg.f0 = value.is_string() ? value.get<std::string>() : value.dump();
      } else if (key == "epsilons") {
        if (value.is_array()) {
          cfg.epsilons = value.get<std::vector<double>>();
        } else if (value.is_object()) {
          cfg.epsilons = geometric_eps(value.at("start").get<double>(),
                                       value.at("ratio").get<double>(),
                                       value.at("count").get<int>());
        } else {
          throw ScenarioError("epsilons must be a list or {start, ratio, count}");
        }
      } else if (key == "stages") {
        cfg.stages = value.get<int>();
      } else if (key == "k_cap") {
        cfg.k_cap = value.get<int>();
      } else if (key == "b_cap") {
        cfg.b_cap = value.get<int>();
      } else if (key == "dense_factor") {
        cfg.dense_factor = value.get<int>();
      } else if (key == "cdf_mesh") {
        cfg.cdf_mesh = value.get<std::size_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "bundle") {
        cfg.bundle_path = value.get<std::string>();
      } else if (key == "report") {
        cfg.report_path = value.get<std::string>();
      } else if (key == "plot_dir") {
        cfg.plot_dir = value.get<std::string>();
      } else {
        throw ScenarioError("unknown config field '" + key + "'");
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError("config field '" + key + "': " + e.what());
    }
  }
  return cfg;
}

ConstructionParams ScenarioConfig::to_params() const {
  ConstructionParams params;
  try {
    params.G = GroupDescriptor::parse(group);
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("bad group: ") + e.what());
  }
  if (f0 == "one") {
    params.f0 = constant_one(params.G);
  } else {
    try {
      params.f0 = coeffs_from_json_text(params.G, f0, "f0");
    } catch (const std::exception& e) {
      throw ScenarioError(e.what());
    }
  }
  if (epsilons.empty()) throw ScenarioError("no epsilons given");
  params.epsilons = epsilons;
  params.M = stages.value_or(static_cast<int>(epsilons.size()));
  if (k_cap) params.K_cap = *k_cap;
  if (b_cap) params.B_cap = *b_cap;
  if (dense_factor) params.dense_factor = *dense_factor;
  if (cdf_mesh) params.cdf_mesh = *cdf_mesh;
  if (seed) params.seed = *seed;
  return params;
}

}  // namespace aus
