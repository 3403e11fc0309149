#include "aus/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "aus/fft.hpp"
#include "aus/parallel.hpp"
#include "json.hpp"

namespace aus {
namespace {

constexpr std::size_t kVerifyProbes = 10000;

int label_band(const SpectralCoeffs& A) {
  int b = 0;
  for (const auto& [label, mat] : A.table) b = std::max(b, label.bandlimit());
  return b;
}

// Grid keyed to the actual spectral content; the circle floor keeps coarse
// early stages honest.
QuadratureGrid margin_grid(const GroupDescriptor& G, int band, int factor) {
  int B = std::max(band, 1);
  if (G.kind == GroupKind::SU2) B = (B + 1) / 2;
  QuadratureGrid grid = dense_grid_for(G, B, factor);
  if (G.kind == GroupKind::Circle && grid.axis_nodes[0].size() < 8192)
    grid = uniform_grid(G, {std::size_t(8192)}, B);
  return grid;
}

bool in_some_core(const std::vector<std::pair<double, double>>& cores, double t) {
  // Cores are sorted and disjoint; find the last core starting at or before t.
  auto it = std::upper_bound(cores.begin(), cores.end(), t,
                             [](double v, const std::pair<double, double>& c) {
                               return v < c.first;
                             });
  if (it == cores.begin()) return false;
  --it;
  return t <= it->second;
}

double stage_residual(const StageRecord& rec, const SpectralCoeffs& f0,
                      const GroupDescriptor& G) {
  if (rec.lambda.empty()) return 0.0;
  int bq = label_band(rec.coeffs);
  for (const IrrepLabel& label : rec.lambda) bq = std::max(bq, label.bandlimit());
  if (G.kind == GroupKind::SU2) bq = (bq + 1) / 2;
  const QuadratureGrid grid = haar_grid(G, std::max(bq, 1));
  GridFunction samples;
  samples.values = synthesize_on_grid(rec.coeffs, grid);
  double worst = 0.0;
  for (const IrrepLabel& label : rec.lambda) {
    const Eigen::MatrixXcd hat = fourier_coeff(samples, label, grid);
    worst = std::max(worst, hat.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

VerificationReport run_verification(const SystemBundle& bundle, const VerifyOptions& opt) {
  VerificationReport report;
  report.group = bundle.params.G.to_string();
  report.stages = static_cast<int>(bundle.records.size());
  report.partial = bundle.partial;
  report.random_probes = kVerifyProbes;
  report.seed = opt.seed;
  if (report.partial) report.failed_checks.push_back("bundle:partial");

  const GroupDescriptor& G = bundle.params.G;
  for (std::size_t i = 0; i < bundle.records.size(); ++i) {
    if (bundle.records[i].m != static_cast<int>(i) + 1)
      throw BundleFormatError("records are not the consecutive stages 1..M");
    if (i >= bundle.params.epsilons.size())
      throw BundleFormatError("record without a matching epsilon");
    if (bundle.records[i].k_m < 1 || bundle.records[i].k_m > bundle.tree.K_max)
      throw BundleFormatError("record level outside the stored tree");
  }

  // Exact support bookkeeping across stages.
  std::vector<std::vector<IrrepLabel>> supports;
  for (const StageRecord& rec : bundle.records) supports.push_back(rec.coeffs.support());

  double prev_bound = 0.0;
  for (std::size_t i = 0; i < bundle.records.size(); ++i) {
    const StageRecord& rec = bundle.records[i];
    const double eps = bundle.params.epsilons[i];
    StageVerification sv;
    sv.m = rec.m;

    // Disjointness: stored supports pairwise disjoint, stored lambda equals
    // the union of earlier supports, and recomputed coefficients on lambda
    // stay at quadrature-noise level.
    std::set<IrrepLabel> expected_lambda;
    bool overlap = false;
    for (std::size_t p = 0; p < i; ++p)
      for (const IrrepLabel& label : supports[p]) expected_lambda.insert(label);
    for (const IrrepLabel& label : supports[i])
      if (expected_lambda.count(label) != 0) overlap = true;
    const bool lambda_ok =
        std::equal(rec.lambda.begin(), rec.lambda.end(), expected_lambda.begin(),
                   expected_lambda.end());
    sv.residual = stage_residual(rec, bundle.params.f0, G);
    sv.disjoint_pass = !overlap && lambda_ok && sv.residual < opt.residual_tol;

    // Shared evaluations for the pointwise checks.
    const int band = std::max(label_band(rec.coeffs), label_band(bundle.params.f0));
    const QuadratureGrid grid = margin_grid(G, band, opt.dense_factor);
    for (const auto& axis : grid.axis_nodes) sv.grid_axes.push_back(axis.size());
    const std::vector<Cplx> fm = synthesize_on_grid(rec.coeffs, grid);
    const std::vector<Cplx> f0v = synthesize_on_grid(bundle.params.f0, grid);
    const std::vector<GroupPoint> pts =
        random_points(G, kVerifyProbes, opt.seed + static_cast<std::uint64_t>(rec.m));
    const std::vector<Cplx> fm_pts = synthesize_at_points(rec.coeffs, pts);
    const std::vector<Cplx> f0_pts = synthesize_at_points(bundle.params.f0, pts);

    // Upper bound |f_m| < |f0| + eps everywhere.
    double worst_excess = deterministic_max(fm.size(), [&](std::size_t n) {
      return std::abs(fm[n]) - std::abs(f0v[n]) - eps;
    });
    for (std::size_t n = 0; n < pts.size(); ++n)
      worst_excess = std::max(worst_excess, std::abs(fm_pts[n]) - std::abs(f0_pts[n]) - eps);
    sv.upper_margin = -worst_excess;
    sv.triangle_margin = eps - rec.sup_err;
    sv.upper_pass = sv.upper_margin > -opt.margin_tol;

    // Lower bound |f_m| > |f0| - eps on the recorded cores.
    double worst_deficit = -std::numeric_limits<double>::infinity();
    std::size_t core_points = 0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const double t = sweep_coordinate(G, grid.point(n));
      if (!in_some_core(rec.omega, t)) continue;
      ++core_points;
      worst_deficit = std::max(worst_deficit, std::abs(f0v[n]) - eps - std::abs(fm[n]));
    }
    for (std::size_t n = 0; n < pts.size(); ++n) {
      const double t = sweep_coordinate(G, pts[n]);
      if (!in_some_core(rec.omega, t)) continue;
      ++core_points;
      worst_deficit = std::max(worst_deficit, std::abs(f0_pts[n]) - eps - std::abs(fm_pts[n]));
    }
    sv.lower_points = core_points;
    if (core_points == 0) {
      sv.lower_pass = false;
      sv.lower_margin = 0.0;
      sv.notes = "no evaluation points landed in the cores; rerun with a denser grid";
    } else {
      sv.lower_margin = -worst_deficit;
      sv.lower_pass = sv.lower_margin > -opt.margin_tol;
    }

    // Core intervals: re-derive from the stored tree and compare exactly.
    const auto recomputed = shrink_cores(bundle.tree, rec.k_m);
    bool cores_match = recomputed.size() == rec.omega.size();
    for (std::size_t c = 0; cores_match && c < recomputed.size(); ++c)
      cores_match = std::abs(recomputed[c].first - rec.omega[c].first) <= 1e-12 &&
                    std::abs(recomputed[c].second - rec.omega[c].second) <= 1e-12;
    sv.omega_measure = omega_measure(bundle.tree, rec.k_m);
    sv.omega_bound = 1.0 - std::ldexp(1.0, -rec.k_m);
    sv.omega_pass = cores_match && std::abs(sv.omega_measure - rec.omega_measure) <= 1e-12 &&
                    sv.omega_measure >= sv.omega_bound && sv.omega_bound >= prev_bound;
    prev_bound = sv.omega_bound;

    // Error chain, arithmetic over stored quantities.
    sv.chain.delta = rec.delta_m;
    sv.chain.bound = rec.delta_m * rec.delta_m + 2.0 * rec.delta_m;
    sv.chain.sup_err = rec.sup_err;
    sv.chain.eps = eps;
    sv.chain.eps_oversized = eps > 3.0;
    const double delta_rec = compute_delta_m(eps, rec.lambda);
    sv.chain.pass = std::abs(delta_rec - rec.delta_m) <= 1e-12 && rec.sup_err < sv.chain.bound &&
                    (sv.chain.bound <= eps || sv.chain.eps_oversized);

    const auto flag = [&](bool ok, const char* name) {
      if (!ok) report.failed_checks.push_back("m=" + std::to_string(rec.m) + ":" + name);
    };
    flag(sv.disjoint_pass, "disjoint");
    flag(sv.upper_pass, "upper");
    flag(sv.lower_pass, "lower");
    flag(sv.omega_pass, "omega");
    flag(sv.chain.pass, "chain");
    report.stage.push_back(std::move(sv));
  }

  report.pass = report.failed_checks.empty();
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  using Json = nlohmann::ordered_json;
  Json top = Json::object();
  top["pass"] = report.pass;
  top["group"] = report.group;
  top["stages"] = report.stages;
  top["partial"] = report.partial;
  top["failed_checks"] = report.failed_checks;
  top["random_probes"] = report.random_probes;
  top["seed"] = report.seed;
  Json stages = Json::array();
  for (const StageVerification& sv : report.stage) {
    Json js = Json::object();
    js["m"] = sv.m;
    js["disjoint"] = {{"pass", sv.disjoint_pass}, {"residual", sv.residual}};
    js["upper"] = {{"pass", sv.upper_pass},
                   {"margin", sv.upper_margin},
                   {"triangle_margin", sv.triangle_margin}};
    js["lower"] = {{"pass", sv.lower_pass},
                   {"margin", sv.lower_margin},
                   {"points", sv.lower_points}};
    js["omega"] = {{"pass", sv.omega_pass},
                   {"measure", sv.omega_measure},
                   {"bound", sv.omega_bound}};
    js["chain"] = {{"pass", sv.chain.pass},         {"delta", sv.chain.delta},
                   {"bound", sv.chain.bound},       {"sup_err", sv.chain.sup_err},
                   {"eps", sv.chain.eps},           {"eps_oversized", sv.chain.eps_oversized}};
    js["grid"] = sv.grid_axes;
    if (!sv.notes.empty()) js["notes"] = sv.notes;
    stages.push_back(std::move(js));
  }
  top["stage_detail"] = std::move(stages);
  return top.dump(2) + "\n";
}

void save_report(const VerificationReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << report_to_json(report);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace aus
