#pragma once
// Stage-by-stage construction of the disjoint-spectrum system: choose a
// dyadic level whose ramped window leaks little coefficient mass onto the
// forbidden labels, approximate the windowed weight uniformly by a tapered
// series, then delete the forbidden labels exactly in coefficient space.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aus/dyadic.hpp"
#include "aus/group.hpp"
#include "aus/spectral.hpp"
#include "aus/window.hpp"

namespace aus {

struct ConstructionParams {
  GroupDescriptor G;
  SpectralCoeffs f0;
  std::vector<double> epsilons;   // positive, strictly decreasing
  int M = 1;
  int K_cap = 12;
  int B_cap = 0;                  // 0 picks the per-group default
  int dense_factor = 8;
  std::size_t cdf_mesh = std::size_t(1) << 16;
  std::uint64_t seed = 0x51c0ffeeULL;
};

// Circle tables stay cheap far out, so its cap is generous; torus and SU(2)
// caps keep dense grids and degree sums at desk scale.
int default_b_cap(const GroupDescriptor& G);

struct StageRecord {
  int m = 0;
  int k_m = 0;
  double delta_m = 0.0;
  std::vector<IrrepLabel> lambda;                 // forbidden labels at this stage
  SpectralCoeffs coeffs;                          // the stage function f_m
  std::vector<std::pair<double, double>> omega;   // core bands at level k_m
  double omega_measure = 0.0;
  double sup_err = 0.0;                           // measured sup |f_m - psi_{k_m}|
};

struct SystemBundle {
  int version = 1;
  ConstructionParams params;
  DyadicTree tree;
  std::vector<StageRecord> records;
  bool partial = false;    // a cap ended the run early; records hold the prefix
  std::string error;
};

// Cap exhaustion; carries the best value reached (last criterion sum for the
// level search, best achieved sup for the bandlimit ladder).
struct CapError : std::runtime_error {
  double best;
  CapError(const std::string& msg, double best_value)
      : std::runtime_error(msg), best(best_value) {}
};

// min(eps/3, [sum over lambda of d^(5/2)]^(-1)), clamped to 1; empty lambda
// uses eps/3 alone.
double compute_delta_m(double eps, const std::vector<IrrepLabel>& lambda);

// Smallest level k <= K_cap whose ramped-window coefficients satisfy
// sum over lambda of d * (entrywise l1) < delta; empty lambda gives 1.
int find_cutoff_level(const std::vector<IrrepLabel>& lambda, double delta,
                      const DyadicTree& tree, const SpectralCoeffs& f0, int K_cap);

// Approximation target: pointwise values, optional batch sampler, optional
// closed-form coefficients that bypass quadrature analysis entirely.
struct ApproxTarget {
  std::function<Cplx(const GroupPoint&)> eval;
  std::function<std::vector<Cplx>(const QuadratureGrid&)> eval_batch;
  std::function<SpectralCoeffs(int)> exact_coeffs;
};

struct ApproxResult {
  SpectralCoeffs coeffs;
  int B_used = 0;
  double sup_err = 0.0;   // combined dense-grid and random-point sup
};

// Doubles B until the tapered (or exactly reproduced) series tracks the
// target below target_sup on a dense grid plus 10^4 seeded random points.
ApproxResult approximate_uniformly(const ApproxTarget& target, double target_sup,
                                   const GroupDescriptor& G, int B_cap,
                                   int dense_factor, std::uint64_t seed);

// Uniform power-of-two sampling grid for sup measurement at bandlimit B.
QuadratureGrid dense_grid_for(const GroupDescriptor& G, int B, int factor);

// Taper weight for a label of bandlimit b under ladder bandlimit B (both in
// label units): flat 1 through half the range, linear to 0 past it.
double taper_multiplier(int b, int B_label);

// Runs all M stages; cap errors mark the bundle partial and keep the prefix.
SystemBundle construct_system(const ConstructionParams& params);

}  // namespace aus
