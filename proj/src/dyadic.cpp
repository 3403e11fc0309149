#include "aus/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aus/parallel.hpp"

namespace aus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double PushforwardCDF::density(double t) const {
  double v = h.empty() ? 0.0 : h[0].real();
  for (std::size_t q = 1; q < h.size(); ++q)
    v += 2.0 * (h[q] * std::polar(1.0, kTwoPi * static_cast<double>(q) * t)).real();
  return v;
}

double PushforwardCDF::F(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  if (h.empty() || nu_total <= 0.0) return t;
  double acc = h[0].real() * t;
  for (std::size_t q = 1; q < h.size(); ++q) {
    const double w = kTwoPi * static_cast<double>(q);
    const Cplx e = std::polar(1.0, w * t) - 1.0;
    acc += 2.0 * (h[q] * e / Cplx(0.0, w)).real();
  }
  return std::clamp(acc / h[0].real(), 0.0, 1.0);
}

double PushforwardCDF::quantile(double y) const {
  y = std::clamp(y, 0.0, 1.0);
  if (y <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (F(mid) >= y) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void PushforwardCDF::tabulate(std::size_t new_size) {
  mesh_size = new_size;
  mesh.assign(new_size + 1, 0.0);
  parallel_chunks(new_size + 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      mesh[i] = F(static_cast<double>(i) / static_cast<double>(new_size));
  });
}

PushforwardCDF pushforward_cdf(const SpectralCoeffs& f0, const GroupDescriptor& G,
                               std::size_t mesh_size) {
  const int L = f0.max_bandlimit();
  if (L < 0) throw std::invalid_argument("degenerate weight");
  // Marginal trig degree in t, and a grid exact for |f0|^2 times that tone.
  const int Q = (G.kind == GroupKind::SU2) ? L : 2 * L;
  const int Bgrid = std::max(1, (G.kind == GroupKind::SU2) ? L : 2 * L);
  const QuadratureGrid grid = haar_grid(G, Bgrid);
  const std::vector<Cplx> vals = synthesize_on_grid(f0, grid);
  std::vector<double> dens(vals.size());
  std::vector<double> sweep_angle(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    dens[i] = std::norm(vals[i]);
    sweep_angle[i] = grid.point(i).x[0];
  }
  PushforwardCDF cdf;
  cdf.h.resize(Q + 1);
  for (int q = 0; q <= Q; ++q) {
    cdf.h[q] = deterministic_sum(vals.size(), [&](std::size_t i) {
      return dens[i] * grid.weight(i) * std::polar(1.0, -q * sweep_angle[i]);
    });
  }
  cdf.nu_total = cdf.h[0].real();
  if (!(cdf.nu_total > 0.0)) throw std::invalid_argument("degenerate weight");
  cdf.tabulate(std::max<std::size_t>(mesh_size, 2));
  return cdf;
}

DyadicTree build_tree(PushforwardCDF& cdf, int K_max) {
  if (K_max < 1) throw std::invalid_argument("K_max must be >= 1");
  const std::size_t finest = std::size_t(1) << K_max;
  if (16 * finest > kMeshCap)
    throw std::runtime_error("dyadic cells under-resolved; required mesh size " +
                             std::to_string(16 * finest) + " exceeds cap");
  DyadicTree tree;
  tree.K_max = K_max;
  tree.nu_total = cdf.nu_total;
  std::vector<double> fine(finest + 1);
  fine[0] = 0.0;
  fine[finest] = 1.0;
  parallel_chunks(finest - 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t j = i + 1;
      fine[j] = cdf.quantile(static_cast<double>(j) / static_cast<double>(finest));
    }
  });
  double minw = 1.0;
  for (std::size_t j = 0; j < finest; ++j) minw = std::min(minw, fine[j + 1] - fine[j]);
  if (!(minw > 0.0)) throw std::runtime_error("dyadic cell collapsed to zero width");
  const double needed = 16.0 / minw;
  if (needed > static_cast<double>(kMeshCap))
    throw std::runtime_error("dyadic cells under-resolved; required mesh size " +
                             std::to_string(static_cast<std::size_t>(needed) + 1) +
                             " exceeds cap");
  std::size_t target = std::max<std::size_t>(cdf.mesh_size, 2);
  while (static_cast<double>(target) < needed) target *= 4;
  if (target != cdf.mesh_size) cdf.tabulate(target);
  tree.mesh_size_used = cdf.mesh_size;
  tree.boundaries.resize(K_max + 1);
  tree.cores.resize(K_max + 1);
  for (int k = 0; k <= K_max; ++k) {
    const std::size_t cells = std::size_t(1) << k;
    const std::size_t stride = finest / cells;
    tree.boundaries[k].resize(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j) tree.boundaries[k][j] = fine[j * stride];
  }
  for (int k = 0; k <= K_max; ++k) tree.cores[k] = shrink_cores(tree, k);
  return tree;
}

std::vector<std::pair<double, double>> shrink_cores(const DyadicTree& tree, int k) {
  if (k < 0 || k > tree.K_max) throw std::invalid_argument("level outside tree");
  const std::vector<double>& b = tree.boundaries[static_cast<std::size_t>(k)];
  std::vector<std::pair<double, double>> cores;
  cores.reserve(b.size() - 1);
  const double cap = std::ldexp(1.0, -2 * k - 2);
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    const double width = b[j + 1] - b[j];
    const double s = std::min(cap, width / 4.0);
    cores.emplace_back(b[j] + s, b[j + 1] - s);
  }
  return cores;
}

double omega_measure(const DyadicTree& tree, int k) {
  if (k < 0 || k > tree.K_max) throw std::invalid_argument("level outside tree");
  double sum = 0.0;
  for (const auto& [lo, hi] : tree.cores[static_cast<std::size_t>(k)]) sum += hi - lo;
  return sum;
}

}  // namespace aus
