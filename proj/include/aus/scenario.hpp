#pragma once
// Batch-run configuration: a single JSON document (or the flag-equivalent CLI
// layer on top) describing group, base function, epsilon schedule, caps, and
// output paths.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aus/constructor.hpp"

namespace aus {

// Config-level problems map to usage errors (CLI exit 2).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::string group = "circle";
  // "one" selects the constant function; otherwise JSON text of a coefficient
  // object (same encoding as bundles).
  std::string f0 = "one";
  std::vector<double> epsilons;
  std::optional<int> stages;  // defaults to the epsilon count
  std::optional<int> k_cap;
  std::optional<int> b_cap;
  std::optional<int> dense_factor;
  std::optional<std::size_t> cdf_mesh;
  std::optional<std::uint64_t> seed;
  std::string bundle_path = "bundle.json";
  std::string report_path = "report.json";
  std::string plot_dir = "plots";

  static ScenarioConfig from_json(const std::string& text);
  ConstructionParams to_params() const;
};

// "0.5,0.25,0.125" -> values; rejects empty pieces and trailing junk.
std::vector<double> parse_eps_list(const std::string& text);
// start, ratio, count -> the geometric sequence start * ratio^i.
std::vector<double> geometric_eps(double start, double ratio, int count);
// Coefficient table of the constant-one function: identity at the trivial label.
SpectralCoeffs constant_one(const GroupDescriptor& G);

}  // namespace aus
