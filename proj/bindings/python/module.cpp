// Python face of the core: thin JSON-text wrappers over construction,
// verification, and pointwise evaluation. Structured data crosses the
// boundary as JSON so both sides keep their native representations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "aus/bundle.hpp"
#include "aus/constructor.hpp"
#include "aus/scenario.hpp"
#include "aus/spectral.hpp"
#include "aus/verifier.hpp"

namespace py = pybind11;

namespace {

std::vector<aus::GroupPoint> to_points(const aus::GroupDescriptor& G,
                                       const std::vector<std::vector<double>>& coords) {
  std::vector<aus::GroupPoint> pts;
  pts.reserve(coords.size());
  for (const auto& c : coords) pts.push_back(aus::normalize_point(G, c));
  return pts;
}

}  // namespace

PYBIND11_MODULE(_aus, m) {
  m.doc() = "spectrally disjoint stage systems on compact groups";

  m.def(
      "construct",
      [](const std::string& config) {
        const aus::ScenarioConfig cfg = aus::ScenarioConfig::from_json(config);
        return aus::bundle_to_json(aus::construct_system(cfg.to_params()));
      },
      py::arg("config"),
      "Build a stage system from a JSON config; returns the bundle as JSON text.");

  m.def(
      "verify",
      [](const std::string& bundle) {
        return aus::report_to_json(aus::run_verification(aus::bundle_from_json(bundle)));
      },
      py::arg("bundle"),
      "Re-check a bundle given as JSON text; returns the report as JSON text.");

  m.def(
      "eval_stage",
      [](const std::string& bundle, int m, const std::vector<std::vector<double>>& points) {
        const aus::SystemBundle b = aus::bundle_from_json(bundle);
        for (const auto& rec : b.records)
          if (rec.m == m) return aus::synthesize_at_points(rec.coeffs, to_points(b.params.G, points));
        throw std::out_of_range("no stage m=" + std::to_string(m) + " in bundle");
      },
      py::arg("bundle"), py::arg("m"), py::arg("points"),
      "Evaluate stage m at the given group coordinates; returns complex values.");

  m.def(
      "eval_f0",
      [](const std::string& bundle, const std::vector<std::vector<double>>& points) {
        const aus::SystemBundle b = aus::bundle_from_json(bundle);
        return aus::synthesize_at_points(b.params.f0, to_points(b.params.G, points));
      },
      py::arg("bundle"), py::arg("points"),
      "Evaluate the bundle's reference function at the given group coordinates.");
}
