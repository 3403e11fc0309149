#pragma once
// Equal-mass dyadic bands in the sweep coordinate, driven by the pushforward
// of |f0|^2 dmu. The CDF is an exact antiderivative of the sweep marginal of
// the weight, so nesting and equal-mass splitting reduce to quantile lookups.

#include <cstddef>
#include <utility>
#include <vector>

#include "aus/group.hpp"
#include "aus/spectral.hpp"

namespace aus {

// Tabulation refinement stops here; beyond it build_tree reports the mesh
// size the caller would need.
inline constexpr std::size_t kMeshCap = std::size_t(1) << 24;

// F(t) = nu(sweep < t) / nu(G) for nu = |f0|^2 dmu. The sweep marginal of the
// weight is the trig polynomial sum_q h[q] e^{2 pi i q t} (h[-q] = conj h[q]),
// so F has a closed form; the uniform mesh is a derived tabulation.
struct PushforwardCDF {
  double nu_total = 0.0;       // ||f0||_2^2
  std::vector<Cplx> h;         // marginal coefficients, q = 0..Q
  std::size_t mesh_size = 0;
  std::vector<double> mesh;    // F at i/mesh_size, i = 0..mesh_size

  // Unnormalized marginal density rho(t), integrates to nu_total.
  double density(double t) const;
  // Normalized CDF, F(0) = 0, F(1) = 1, non-decreasing.
  double F(double t) const;
  // Leftmost t with F(t) >= y, by bisection on the exact F.
  double quantile(double y) const;
  void tabulate(std::size_t new_size);
};

PushforwardCDF pushforward_cdf(const SpectralCoeffs& f0, const GroupDescriptor& G,
                               std::size_t mesh_size);

// Level k holds 2^k + 1 boundaries; cell j is [b_j, b_{j+1}) and its core is
// the cell shrunk inward by min(2^(-2k-2), width/4) per side.
struct DyadicTree {
  int K_max = 0;
  double nu_total = 0.0;
  std::size_t mesh_size_used = 0;
  std::vector<std::vector<double>> boundaries;                 // [k][0..2^k]
  std::vector<std::vector<std::pair<double, double>>> cores;   // [k][cell]
};

// Boundaries are leftmost quantiles of j * 2^-K_max, computed once at the
// finest level; coarser levels reuse them so nesting is bit-exact. Refines
// the CDF tabulation until every finest cell spans >= 16 mesh intervals.
DyadicTree build_tree(PushforwardCDF& cdf, int K_max);

std::vector<std::pair<double, double>> shrink_cores(const DyadicTree& tree, int k);

// Exact sum of core widths at level k; always >= 1 - 2^-k.
double omega_measure(const DyadicTree& tree, int k);

}  // namespace aus
