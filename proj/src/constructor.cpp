#include "aus/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "aus/fft.hpp"
#include "aus/parallel.hpp"

namespace aus {
namespace {

constexpr std::size_t kRandomProbes = 10000;

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::size_t clamp_pow2(std::size_t want, std::size_t cap) {
  return std::min(next_pow2(want), cap);
}

std::vector<Cplx> target_values(const ApproxTarget& target, const QuadratureGrid& grid) {
  if (target.eval_batch) return target.eval_batch(grid);
  return sample_on_grid(grid, target.eval).values;
}

double grid_sup_against(const SpectralCoeffs& A, const std::vector<Cplx>& tvals,
                        const QuadratureGrid& dense) {
  const std::vector<Cplx> v = synthesize_on_grid(A, dense);
  return deterministic_max(v.size(), [&](std::size_t i) { return std::abs(v[i] - tvals[i]); });
}

double random_sup_against(const SpectralCoeffs& A, const ApproxTarget& target,
                          const GroupDescriptor& G, std::uint64_t seed) {
  const std::vector<GroupPoint> pts = random_points(G, kRandomProbes, seed);
  const std::vector<Cplx> av = synthesize_at_points(A, pts);
  double sup = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    sup = std::max(sup, std::abs(av[i] - target.eval(pts[i])));
  return sup;
}

}  // namespace

int default_b_cap(const GroupDescriptor& G) {
  switch (G.kind) {
    case GroupKind::Circle:
      return 131072;
    case GroupKind::Torus:
      return 512;
    case GroupKind::SU2:
      return 16;
  }
  return 512;
}

double compute_delta_m(double eps, const std::vector<IrrepLabel>& lambda) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  double delta = eps / 3.0;
  if (!lambda.empty()) {
    double degree_mass = 0.0;
    for (const IrrepLabel& label : lambda)
      degree_mass += std::pow(static_cast<double>(label.degree()), 2.5);
    delta = std::min(delta, 1.0 / degree_mass);
  }
  return std::min(delta, 1.0);
}

int find_cutoff_level(const std::vector<IrrepLabel>& lambda, double delta,
                      const DyadicTree& tree, const SpectralCoeffs& f0, int K_cap) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (lambda.empty()) return 1;
  const int top = std::min(K_cap, tree.K_max);
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= top; ++k) {
    const WindowEnvelope w = make_window(tree, k, WindowMode::Ramped);
    const SpectralCoeffs c = windowed_coeffs(w, f0, lambda);
    last = 0.0;
    for (const auto& [label, mat] : c.table)
      last += static_cast<double>(label.degree()) * mat.cwiseAbs().sum();
    if (last < delta) return k;
  }
  throw CapError("level cap " + std::to_string(K_cap) + " exhausted; last criterion sum " +
                     fmt_g(last) + " vs delta " + fmt_g(delta),
                 last);
}

QuadratureGrid dense_grid_for(const GroupDescriptor& G, int B, int factor) {
  factor = std::max(1, factor);
  const std::size_t span = static_cast<std::size_t>(2 * std::max(B, 0) + 1);
  if (G.kind == GroupKind::SU2) {
    const std::size_t f2 = static_cast<std::size_t>(std::max(4, factor / 2));
    const std::size_t na = clamp_pow2(f2 * span, 256);
    const std::size_t nb = clamp_pow2(f2 * static_cast<std::size_t>(B + 1), 128);
    return uniform_grid(G, {na, nb, na}, B);
  }
  // Per-axis cap keeps multi-axis grids inside memory; random probes cover
  // whatever the grid no longer resolves.
  std::size_t cap = std::size_t(1) << 21;
  if (G.kind == GroupKind::Torus) cap = (G.dim <= 2) ? 2048 : 128;
  const std::size_t n = clamp_pow2(static_cast<std::size_t>(factor) * span, cap);
  std::vector<std::size_t> counts(static_cast<std::size_t>(G.coord_count()), n);
  return uniform_grid(G, counts, B);
}

double taper_multiplier(int b, int B_label) {
  const int half = (B_label + 1) / 2;
  if (b <= half) return 1.0;
  const double v = static_cast<double>(B_label + 1 - b) / static_cast<double>(B_label + 1 - half);
  return std::clamp(v, 0.0, 1.0);
}

ApproxResult approximate_uniformly(const ApproxTarget& target, double target_sup,
                                   const GroupDescriptor& G, int B_cap,
                                   int dense_factor, std::uint64_t seed) {
  if (!(target_sup > 0.0)) throw std::invalid_argument("target_sup must be positive");
  if (B_cap < 1) throw std::invalid_argument("bandlimit cap must be >= 1");
  std::vector<int> rungs;
  for (int b = 8; b < B_cap; b *= 2) rungs.push_back(b);
  rungs.push_back(B_cap);
  double best = std::numeric_limits<double>::infinity();
  for (const int B : rungs) {
    SpectralCoeffs raw;
    if (target.exact_coeffs) {
      raw = target.exact_coeffs(B);
    } else {
      const QuadratureGrid qg = haar_grid(G, 2 * B);
      GridFunction samples;
      samples.values = target_values(target, qg);
      raw = analyze(samples, qg, B);
    }
    raw.G = G;
    const QuadratureGrid dense = dense_grid_for(G, B, dense_factor);
    const std::vector<Cplx> tvals = target_values(target, dense);
    const double raw_sup = grid_sup_against(raw, tvals, dense);
    const int B_label = (G.kind == GroupKind::SU2) ? 2 * B : B;
    SpectralCoeffs tapered = raw;
    for (auto& [label, mat] : tapered.table)
      mat *= taper_multiplier(label.bandlimit(), B_label);
    const double tap_sup = grid_sup_against(tapered, tvals, dense);
    best = std::min({best, raw_sup, tap_sup});
    const SpectralCoeffs* cand = nullptr;
    double cand_sup = 0.0;
    if (raw_sup < 1e-12) {
      // The series already reproduces the target: keep it untapered.
      cand = &raw;
      cand_sup = raw_sup;
    } else if (tap_sup < target_sup) {
      cand = &tapered;
      cand_sup = tap_sup;
    } else if (raw_sup < target_sup) {
      cand = &raw;
      cand_sup = raw_sup;
    }
    if (cand != nullptr) {
      const double combined =
          std::max(cand_sup, random_sup_against(*cand, target, G, seed));
      if (combined < target_sup) {
        ApproxResult out;
        out.coeffs = *cand;
        out.coeffs.prune();
        out.B_used = B;
        out.sup_err = combined;
        return out;
      }
      best = std::min(best, combined);
    }
  }
  throw CapError("bandlimit cap " + std::to_string(B_cap) + " reached; best sup " +
                     fmt_g(best) + " vs target " + fmt_g(target_sup),
                 best);
}

SystemBundle construct_system(const ConstructionParams& in) {
  ConstructionParams params = in;
  if (params.M < 1) throw std::invalid_argument("M must be >= 1");
  if (static_cast<int>(params.epsilons.size()) < params.M)
    throw std::invalid_argument("need an epsilon for every stage");
  for (int i = 0; i < params.M; ++i) {
    if (!(params.epsilons[static_cast<std::size_t>(i)] > 0.0))
      throw std::invalid_argument("epsilons must be positive");
    if (i > 0 && !(params.epsilons[static_cast<std::size_t>(i)] <
                   params.epsilons[static_cast<std::size_t>(i - 1)]))
      throw std::invalid_argument("epsilons must decrease strictly");
  }
  if (params.K_cap < 1) throw std::invalid_argument("K_cap must be >= 1");
  if (params.B_cap <= 0) params.B_cap = default_b_cap(params.G);
  if (params.dense_factor < 1) params.dense_factor = 8;
  if (params.f0.G.kind != params.G.kind)
    throw std::invalid_argument("f0 coefficients carry a different group");
  params.f0.prune();

  SystemBundle bundle;
  bundle.params = params;
  PushforwardCDF cdf = pushforward_cdf(params.f0, params.G, params.cdf_mesh);
  bundle.tree = build_tree(cdf, params.K_cap);

  std::vector<IrrepLabel> lambda;
  for (int m = 1; m <= params.M; ++m) {
    const double eps = params.epsilons[static_cast<std::size_t>(m - 1)];
    try {
      const double delta = compute_delta_m(eps, lambda);
      const int k = find_cutoff_level(lambda, delta, bundle.tree, params.f0, params.K_cap);
      const WindowEnvelope w = make_window(bundle.tree, k, WindowMode::Ramped);
      ApproxTarget target;
      target.eval = [&params, w](const GroupPoint& g) {
        return synthesize(params.f0, g) * w.eval(sweep_coordinate(params.G, g));
      };
      target.eval_batch = [&params, w](const QuadratureGrid& grid) {
        return window_samples(w, synthesize_on_grid(params.f0, grid), grid);
      };
      target.exact_coeffs = [&params, w](int B) {
        return windowed_coeffs_upto(w, params.f0, B);
      };
      // Approximation budget delta^2 + 0.9 delta: the forbidden-label removal
      // below costs at most the level-k criterion sum (< delta), keeping the
      // total under delta^2 + 2 delta.
      const double budget = delta * delta + 0.9 * delta;
      const ApproxResult ap = approximate_uniformly(target, budget, params.G, params.B_cap,
                                                    params.dense_factor,
                                                    params.seed + static_cast<std::uint64_t>(m));
      SpectralCoeffs fm = zero_on_set(ap.coeffs, lambda);
      fm.prune();
      const QuadratureGrid dense = dense_grid_for(params.G, ap.B_used, params.dense_factor);
      const std::vector<Cplx> tvals = target_values(target, dense);
      double sup = grid_sup_against(fm, tvals, dense);
      sup = std::max(sup, random_sup_against(fm, target, params.G,
                                             params.seed + static_cast<std::uint64_t>(m)));
      StageRecord rec;
      rec.m = m;
      rec.k_m = k;
      rec.delta_m = delta;
      rec.lambda = lambda;
      rec.coeffs = fm;
      rec.omega = bundle.tree.cores[static_cast<std::size_t>(k)];
      rec.omega_measure = omega_measure(bundle.tree, k);
      rec.sup_err = sup;
      bundle.records.push_back(std::move(rec));
      std::vector<IrrepLabel> merged = lambda;
      for (const IrrepLabel& label : bundle.records.back().coeffs.support())
        merged.push_back(label);
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      lambda = std::move(merged);
    } catch (const CapError& e) {
      bundle.partial = true;
      bundle.error = "stage " + std::to_string(m) + ": " + e.what();
      break;
    }
  }
  return bundle;
}

}  // namespace aus
