#pragma once

#include <stdexcept>
#include <string>

#include "aus/constructor.hpp"

namespace aus {

// Raised on any structural problem with a bundle or report file (unknown
// version, missing field, malformed label, wrong matrix size).
struct BundleFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kBundleVersion = 1;

// Serialized layout, stable across runs (insertion-ordered keys, shortest
// round-trip decimals): top level {version, group, f0, epsilons, records,
// tree, params, partial[, error]}.
std::string bundle_to_json(const SystemBundle& bundle);
SystemBundle bundle_from_json(const std::string& text);

void save_bundle(const SystemBundle& bundle, const std::string& path);
SystemBundle load_bundle(const std::string& path);

// Coefficient tables reuse the bundle encoding: an object keyed by label
// strings, each value the row-major flat list of [re, im] entry pairs.
std::string coeffs_to_json_text(const SpectralCoeffs& A);
SpectralCoeffs coeffs_from_json_text(const GroupDescriptor& G, const std::string& text,
                                     const std::string& where = "coeffs");

}  // namespace aus
