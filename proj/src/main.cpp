// Batch front end: construct a bundle, verify it, emit plots, or run the
// built-in invariant suite. Exit codes: 0 ok, 1 failed checks or runtime
// error, 2 usage/config/format error, 3 cap hit (partial bundle written).
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aus/bundle.hpp"
#include "aus/constructor.hpp"
#include "aus/dyadic.hpp"
#include "aus/fft.hpp"
#include "aus/plots.hpp"
#include "aus/scenario.hpp"
#include "aus/verifier.hpp"
#include "aus/window.hpp"

namespace {

using namespace aus;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot read '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct ConstructFlags {
  std::optional<std::string> config;
  std::optional<std::string> group;
  std::optional<std::string> f0;
  std::optional<std::string> eps;
  std::optional<std::string> eps_geom;
  std::optional<int> stages, k_cap, b_cap, dense_factor;
  std::optional<std::size_t> cdf_mesh;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

ScenarioConfig merge_config(const ConstructFlags& fl) {
  ScenarioConfig cfg;
  if (fl.config) cfg = ScenarioConfig::from_json(read_file(*fl.config));
  if (fl.group) cfg.group = *fl.group;
  if (fl.f0) {
    // "one", inline JSON, or a path to a coefficient-table file.
    if (*fl.f0 == "one" || fl.f0->rfind('{', 0) == 0)
      cfg.f0 = *fl.f0;
    else
      cfg.f0 = read_file(*fl.f0);
  }
  if (fl.eps) cfg.epsilons = parse_eps_list(*fl.eps);
  if (fl.eps_geom) {
    const std::vector<double> g = parse_eps_list(*fl.eps_geom);
    if (g.size() != 3) throw ScenarioError("--eps-geom needs start,ratio,count");
    const double count = g[2];
    if (count != std::floor(count)) throw ScenarioError("--eps-geom count must be an integer");
    cfg.epsilons = geometric_eps(g[0], g[1], static_cast<int>(count));
  }
  if (fl.stages) cfg.stages = *fl.stages;
  if (fl.k_cap) cfg.k_cap = *fl.k_cap;
  if (fl.b_cap) cfg.b_cap = *fl.b_cap;
  if (fl.dense_factor) cfg.dense_factor = *fl.dense_factor;
  if (fl.cdf_mesh) cfg.cdf_mesh = *fl.cdf_mesh;
  if (fl.seed) cfg.seed = *fl.seed;
  if (fl.out) cfg.bundle_path = *fl.out;
  return cfg;
}

int run_construct(const ConstructFlags& fl) {
  ScenarioConfig cfg;
  ConstructionParams params;
  try {
    cfg = merge_config(fl);
    params = cfg.to_params();
  } catch (const ScenarioError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  SystemBundle bundle;
  try {
    bundle = construct_system(params);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  save_bundle(bundle, cfg.bundle_path);
  for (const StageRecord& r : bundle.records) {
    std::printf("m=%d: k=%d delta=%.6g |lambda|=%zu sup_err=%.6g mu_omega=%.6g |supp|=%zu\n",
                r.m, r.k_m, r.delta_m, r.lambda.size(), r.sup_err, r.omega_measure,
                r.coeffs.table.size());
  }
  std::printf("bundle: %s\n", cfg.bundle_path.c_str());
  if (bundle.partial) {
    std::cerr << "partial bundle: " << bundle.error << "\n";
    return kExitCap;
  }
  return kExitOk;
}

int run_verify(const std::string& bundle_path, const std::string& report_path,
               const VerifyOptions& opt) {
  SystemBundle bundle;
  try {
    bundle = load_bundle(bundle_path);
  } catch (const BundleFormatError& e) {
    std::cerr << "bundle error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const VerificationReport report = run_verification(bundle, opt);
  save_report(report, report_path);
  if (report.pass) {
    std::printf("PASS (%d stages)\n", report.stages);
    std::printf("report: %s\n", report_path.c_str());
    return kExitOk;
  }
  std::string joined;
  for (const std::string& f : report.failed_checks) {
    if (!joined.empty()) joined += ", ";
    joined += f;
  }
  std::printf("FAIL: %s\n", joined.c_str());
  std::printf("report: %s\n", report_path.c_str());
  return kExitFail;
}

int run_plot(const std::string& bundle_path, const std::string& out_dir) {
  SystemBundle bundle;
  try {
    bundle = load_bundle(bundle_path);
  } catch (const BundleFormatError& e) {
    std::cerr << "bundle error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const std::vector<std::string> files = emit_plots(bundle, out_dir);
  if (files.empty()) {
    std::cerr << "warning: bundle has no records; nothing to plot\n";
    return kExitOk;
  }
  for (const std::string& f : files) std::printf("wrote %s\n", f.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Self test: fast invariant sweep over every library layer.

struct SelfTest {
  int failures = 0;
  void run(const std::string& name, const std::function<std::string()>& fn) {
    std::string msg;
    try {
      msg = fn();
    } catch (const std::exception& e) {
      msg = e.what();
    }
    if (msg.empty()) {
      std::printf("ok   %s\n", name.c_str());
    } else {
      std::printf("FAIL %s: %s\n", name.c_str(), msg.c_str());
      ++failures;
    }
  }
};

std::vector<GroupDescriptor> selftest_groups() {
  GroupDescriptor torus;
  torus.kind = GroupKind::Torus;
  torus.dim = 2;
  return {GroupDescriptor{}, torus, GroupDescriptor{GroupKind::SU2, 1}};
}

int selftest_band(const GroupDescriptor& G) { return G.kind == GroupKind::Torus ? 2 : (G.kind == GroupKind::SU2 ? 1 : 4); }

SpectralCoeffs random_coeffs(const GroupDescriptor& G, int B, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  SpectralCoeffs A;
  A.G = G;
  for (const IrrepLabel& label : enumerate_irreps(G, B)) {
    const int d = label.degree();
    Eigen::MatrixXcd mat(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) mat(r, c) = Cplx(2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
    A.table.emplace(label, std::move(mat));
  }
  return A;
}

std::string check_orthogonality(const GroupDescriptor& G, int B, double tol) {
  const std::vector<IrrepLabel> labels = enumerate_irreps(G, B);
  const QuadratureGrid grid = haar_grid(G, B);
  struct Entry {
    std::size_t label;
    int i, j;
    double deg;
  };
  std::vector<Entry> entries;
  for (std::size_t li = 0; li < labels.size(); ++li) {
    const int d = labels[li].degree();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        entries.push_back({li, i, j, static_cast<double>(d)});
  }
  Eigen::MatrixXcd E(grid.size(), entries.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const GroupPoint g = grid.point(n);
    const double w = grid.weight(n);
    std::size_t col = 0;
    for (std::size_t li = 0; li < labels.size(); ++li) {
      const Eigen::MatrixXcd mat = irrep_matrix(G, labels[li], g);
      const int d = labels[li].degree();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j, ++col)
          E(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(col)) = std::sqrt(w) * mat(i, j);
    }
  }
  const Eigen::MatrixXcd gram = E.adjoint() * E;
  double worst = 0.0;
  for (std::size_t a = 0; a < entries.size(); ++a)
    for (std::size_t b = 0; b < entries.size(); ++b) {
      const bool same = entries[a].label == entries[b].label && entries[a].i == entries[b].i &&
                        entries[a].j == entries[b].j;
      const double want = same ? 1.0 : 0.0;
      const double got =
          std::abs(std::sqrt(entries[a].deg * entries[b].deg) *
                       gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) -
                   want);
      worst = std::max(worst, got);
    }
  if (worst >= tol) return G.to_string() + ": max orthogonality deviation " + std::to_string(worst);
  return {};
}

std::string check_parseval(const GroupDescriptor& G, int B, std::uint64_t seed) {
  const SpectralCoeffs A = random_coeffs(G, B, seed);
  const QuadratureGrid grid = haar_grid(G, B);
  GridFunction f;
  f.values = synthesize_on_grid(A, grid);
  double quad = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) quad += grid.weight(n) * std::norm(f.values[n]);
  const double spec = A.l2_norm_sq();
  if (std::abs(quad - spec) > 1e-8 * std::max(1.0, spec))
    return G.to_string() + ": parseval mismatch " + std::to_string(std::abs(quad - spec));
  const SpectralCoeffs back = analyze(f, grid, B);
  for (const auto& [label, mat] : A.table) {
    const auto it = back.table.find(label);
    if (it == back.table.end()) return G.to_string() + ": label lost in round-trip";
    if ((it->second - mat).cwiseAbs().maxCoeff() > 1e-9)
      return G.to_string() + ": round-trip error at " + label.to_string();
  }
  return {};
}

SpectralCoeffs sqrt2_cos() {
  SpectralCoeffs f0;
  f0.G = GroupDescriptor{};
  Eigen::MatrixXcd half(1, 1);
  half(0, 0) = std::sqrt(2.0) / 2.0;
  IrrepLabel plus;
  plus.kind = GroupKind::Circle;
  plus.comps = {1};
  IrrepLabel minus;
  minus.kind = GroupKind::Circle;
  minus.comps = {-1};
  f0.table.emplace(plus, half);
  f0.table.emplace(minus, half);
  return f0;
}

std::string check_dyadic(const SpectralCoeffs& f0, const std::string& tag) {
  PushforwardCDF cdf = pushforward_cdf(f0, f0.G, std::size_t(1) << 14);
  const DyadicTree tree = build_tree(cdf, 5);
  for (int k = 0; k < 5; ++k) {
    const auto& coarse = tree.boundaries[static_cast<std::size_t>(k)];
    const auto& fine = tree.boundaries[static_cast<std::size_t>(k) + 1];
    for (std::size_t j = 0; j < coarse.size(); ++j)
      if (coarse[j] != fine[2 * j]) return tag + ": nesting broken at level " + std::to_string(k);
  }
  for (int k = 1; k <= 5; ++k) {
    const auto& b = tree.boundaries[static_cast<std::size_t>(k)];
    const double want = std::ldexp(1.0, -k);
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      const double mass = cdf.F(b[j + 1]) - cdf.F(b[j]);
      if (std::abs(mass - want) > 1e-8 * want)
        return tag + ": unequal cell mass at level " + std::to_string(k);
    }
    const auto cores = shrink_cores(tree, k);
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      const double gap = (b[j + 1] - b[j]) - (cores[j].second - cores[j].first);
      if (!(gap < std::ldexp(1.0, -2 * k)))
        return tag + ": core deficit too large at level " + std::to_string(k);
    }
    if (omega_measure(tree, k) < 1.0 - std::ldexp(1.0, -k))
      return tag + ": omega measure below bound at level " + std::to_string(k);
  }
  return {};
}

std::string check_deficit(const SpectralCoeffs& f0, const std::string& tag) {
  PushforwardCDF cdf = pushforward_cdf(f0, f0.G, std::size_t(1) << 14);
  const DyadicTree tree = build_tree(cdf, 4);
  // sup norm of a 1x1-coefficients circle polynomial on a fine grid
  const QuadratureGrid grid = uniform_grid(f0.G, {std::size_t(4096)}, 4);
  const std::vector<Cplx> vals = synthesize_on_grid(f0, grid);
  double sup = 0.0;
  for (const Cplx& v : vals) sup = std::max(sup, std::abs(v));
  for (int k = 1; k <= 4; ++k) {
    const double deficit = smoothing_deficit(tree, k, cdf);
    if (!(deficit <= std::ldexp(1.0, -k) * sup * sup + 1e-12))
      return tag + ": deficit bound fails at level " + std::to_string(k);
  }
  for (int k = 1; k <= 4; ++k)
    for (int l = 1; l < k; ++l)
      if (std::abs(delta_inner(tree, cdf, k, l)) > 1e-8)
        return tag + ": sign systems not orthogonal at " + std::to_string(k) + "," +
               std::to_string(l);
  return {};
}

std::string check_kunze(std::uint64_t seed) {
  const GroupDescriptor G;
  const SpectralCoeffs A = random_coeffs(G, 16, seed);
  const QuadratureGrid grid = uniform_grid(G, {std::size_t(1) << 12}, 16);
  const std::vector<Cplx> vals = synthesize_on_grid(A, grid);
  double sup = 0.0;
  for (const Cplx& v : vals) sup = std::max(sup, std::abs(v));
  if (sup > kunze_sup_bound(A) + 1e-10) return "sup exceeds the degree-weighted trace-norm sum";
  return {};
}

std::string check_mini_system() {
  ConstructionParams params;
  params.G = GroupDescriptor{};
  params.f0 = constant_one(params.G);
  params.epsilons = {0.5, 0.25};
  params.M = 2;
  params.B_cap = 64;
  params.cdf_mesh = std::size_t(1) << 14;
  const SystemBundle bundle = construct_system(params);
  if (bundle.partial) return "mini run hit a cap: " + bundle.error;
  if (bundle.records.size() != 2) return "expected 2 stages";
  const std::string once = bundle_to_json(bundle);
  const std::string twice = bundle_to_json(construct_system(params));
  if (once != twice) return "two runs produced different bundles";
  const SystemBundle reloaded = bundle_from_json(once);
  const VerificationReport report = run_verification(reloaded);
  if (!report.pass) {
    std::string joined;
    for (const std::string& f : report.failed_checks) joined += f + " ";
    return "verification failed: " + joined;
  }
  const auto dir = std::filesystem::temp_directory_path() / "aus_selftest_plots";
  const std::vector<std::string> files = emit_plots(reloaded, dir.string());
  const bool plots_ok = files.size() == 6;
  std::filesystem::remove_all(dir);
  if (!plots_ok) return "expected 6 plot files";
  return {};
}

int run_selftest() {
  SelfTest st;
  for (const GroupDescriptor& G : selftest_groups()) {
    st.run("haar-weights " + G.to_string(), [&G]() -> std::string {
      const QuadratureGrid grid = haar_grid(G, selftest_band(G));
      double total = 0.0;
      for (std::size_t n = 0; n < grid.size(); ++n) total += grid.weight(n);
      return std::abs(total - 1.0) < 1e-12 ? "" : "weights sum to " + std::to_string(total);
    });
    st.run("orthogonality " + G.to_string(),
           [&G]() { return check_orthogonality(G, selftest_band(G), 1e-9); });
    st.run("parseval " + G.to_string(), [&G]() {
      for (std::uint64_t s = 1; s <= 3; ++s) {
        const std::string msg = check_parseval(G, selftest_band(G), 0x7357 + s);
        if (!msg.empty()) return msg;
      }
      return std::string{};
    });
  }
  st.run("fft-roundtrip", []() -> std::string {
    std::mt19937_64 rng(99);
    const auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    std::vector<Cplx> v(64);
    for (Cplx& z : v) z = Cplx(2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
    std::vector<Cplx> w = v;
    fft_pow2(w, +1);
    const std::vector<Cplx> ref = dft_naive(v, +1);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (std::abs(w[i] - ref[i]) > 1e-10) return "fft disagrees with the direct transform";
    fft_pow2(w, -1);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (std::abs(w[i] / 64.0 - v[i]) > 1e-10) return "inverse round-trip failed";
    return {};
  });
  const SpectralCoeffs one = constant_one(GroupDescriptor{});
  const SpectralCoeffs cosine = sqrt2_cos();
  st.run("dyadic-tree constant", [&]() { return check_dyadic(one, "constant"); });
  st.run("dyadic-tree cosine", [&]() { return check_dyadic(cosine, "cosine"); });
  st.run("smoothing-deficit constant", [&]() { return check_deficit(one, "constant"); });
  st.run("smoothing-deficit cosine", [&]() { return check_deficit(cosine, "cosine"); });
  st.run("sup-bound", []() { return check_kunze(0xca11); });
  st.run("mini-system", []() { return check_mini_system(); });
  if (st.failures > 0) {
    std::printf("%d check(s) failed\n", st.failures);
    return kExitFail;
  }
  std::printf("all checks passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construct and certify stage systems of band-limited functions with pairwise "
               "disjoint spectra on compact groups"};
  app.require_subcommand(1);

  ConstructFlags cf;
  CLI::App* construct = app.add_subcommand("construct", "build a system bundle");
  construct->add_option("--config", cf.config, "scenario config JSON file");
  construct->add_option("--group", cf.group, "circle | torus:d | su2");
  construct->add_option("--f0", cf.f0, "'one', inline coefficient JSON, or a file path");
  auto* eps_opt = construct->add_option("--eps", cf.eps, "comma-separated epsilon list");
  construct->add_option("--eps-geom", cf.eps_geom, "geometric epsilons start,ratio,count")
      ->excludes(eps_opt);
  construct->add_option("--stages", cf.stages, "number of stages M");
  construct->add_option("--k-cap", cf.k_cap, "level search cap");
  construct->add_option("--b-cap", cf.b_cap, "bandlimit cap");
  construct->add_option("--dense-factor", cf.dense_factor, "dense-grid oversampling factor");
  construct->add_option("--cdf-mesh", cf.cdf_mesh, "band CDF tabulation size");
  construct->add_option("--seed", cf.seed, "seed for validation points");
  construct->add_option("--out", cf.out, "bundle output path");

  std::string bundle_path, report_path = "report.json", plot_dir = "plots";
  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand("verify", "re-certify a bundle file");
  verify->add_option("--bundle", bundle_path, "bundle JSON path")->required();
  verify->add_option("--report", report_path, "report output path");
  verify->add_option("--dense-factor", vopt.dense_factor, "dense-grid oversampling factor");
  verify->add_option("--seed", vopt.seed, "seed for random evaluation points");

  std::string plot_bundle;
  CLI::App* plot = app.add_subcommand("plot", "emit CSV/SVG views of a bundle");
  plot->add_option("--bundle", plot_bundle, "bundle JSON path")->required();
  plot->add_option("--out-dir", plot_dir, "output directory");

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) return run_construct(cf);
    if (verify->parsed()) return run_verify(bundle_path, report_path, vopt);
    if (plot->parsed()) return run_plot(plot_bundle, plot_dir);
    if (selftest->parsed()) return run_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
