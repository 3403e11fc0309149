#pragma once
// Re-certifies a persisted bundle from the file contents alone: exact support
// arithmetic, quadrature residuals, dense-grid plus random-point margins,
// interval arithmetic on the band cores, and the per-stage error chain.

#include <cstdint>
#include <string>
#include <vector>

#include "aus/bundle.hpp"

namespace aus {

struct VerifyOptions {
  int dense_factor = 8;
  std::uint64_t seed = 0x5eedc0deULL;
  double margin_tol = 1e-9;     // pointwise margin slack
  double residual_tol = 1e-10;  // recomputed coefficient mass on forbidden labels
};

struct ChainRecord {
  double delta = 0.0;
  double bound = 0.0;  // delta^2 + 2 delta
  double sup_err = 0.0;
  double eps = 0.0;
  bool eps_oversized = false;  // eps > 3: bound <= eps can fail arithmetically
  bool pass = false;
};

struct StageVerification {
  int m = 0;
  bool disjoint_pass = false;
  double residual = 0.0;
  bool upper_pass = false;
  double upper_margin = 0.0;     // min |f0| + eps - |f_m|
  double triangle_margin = 0.0;  // eps - sup_err, analytic cross-check only
  bool lower_pass = false;
  double lower_margin = 0.0;  // min over core points of |f_m| - |f0| + eps
  std::size_t lower_points = 0;
  bool omega_pass = false;
  double omega_measure = 0.0;
  double omega_bound = 0.0;  // 1 - 2^-k_m
  ChainRecord chain;
  std::vector<std::size_t> grid_axes;
  std::string notes;
};

struct VerificationReport {
  bool pass = false;
  std::string group;
  int stages = 0;
  bool partial = false;
  std::vector<std::string> failed_checks;  // "m=2:upper", "bundle:partial", ...
  std::vector<StageVerification> stage;
  std::size_t random_probes = 0;
  std::uint64_t seed = 0;
};

VerificationReport run_verification(const SystemBundle& bundle, const VerifyOptions& opt = {});

std::string report_to_json(const VerificationReport& report);
void save_report(const VerificationReport& report, const std::string& path);

}  // namespace aus
