#pragma once
// Sign-alternating windows over the dyadic bands: the hard window realizes
// the +/- indicator sum, the ramped window is its continuous companion that
// rises linearly from the cell edges to a plateau on the core. Both multiply
// the weight f0 pointwise; their coefficient tables have closed forms.

#include <utility>
#include <vector>

#include "aus/dyadic.hpp"
#include "aus/spectral.hpp"

namespace aus {

enum class WindowMode { Hard, Ramped };

// One linear piece of the window profile: value v0 at t0 to v1 at t1.
struct WindowSegment {
  double t0, t1, v0, v1;
};

struct WindowEnvelope {
  int k = 0;
  WindowMode mode = WindowMode::Hard;
  std::vector<std::pair<double, double>> cells;   // [b_j, b_{j+1})
  std::vector<std::pair<double, double>> cores;   // plateau intervals

  // Window value at sweep coordinate t; cell j carries sign (-1)^j (0-based).
  double eval(double t) const;
  std::vector<WindowSegment> segments() const;
};

WindowEnvelope make_window(const DyadicTree& tree, int k, WindowMode mode);

// integral over [0,1] of w(t) exp(-2 pi i nu t) dt, exact per segment.
// nu may be any real, including half-integers.
Cplx profile_transform(const WindowEnvelope& w, double nu);

// delta_k(g) = f0(g) * hard window at t(g).
Cplx eval_delta(const DyadicTree& tree, int k, const SpectralCoeffs& f0,
                const GroupPoint& g);

// psi_k(g) = f0(g) * ramped window at t(g); |psi_k| <= |f0| everywhere.
Cplx eval_psi(const DyadicTree& tree, int k, const SpectralCoeffs& f0,
              const GroupPoint& g);

// Pointwise product of precomputed f0 samples with the window at each node.
std::vector<Cplx> window_samples(const WindowEnvelope& w,
                                 const std::vector<Cplx>& f0vals,
                                 const QuadratureGrid& grid);

// Exact coefficients of f0 * window at the requested labels. The window only
// depends on the first coordinate, so each target couples to f0 labels that
// agree on the remaining axes (or, on SU(2), share parity).
SpectralCoeffs windowed_coeffs(const WindowEnvelope& w, const SpectralCoeffs& f0,
                               const std::vector<IrrepLabel>& labels);

SpectralCoeffs windowed_coeffs_upto(const WindowEnvelope& w,
                                    const SpectralCoeffs& f0, int B);

// ||psi_k - delta_k||_{L2(mu)}^2 with the weight |f0|^2 folded in; the
// difference lives on the ramps, integrated against the exact sweep marginal.
double smoothing_deficit(const DyadicTree& tree, int k, const PushforwardCDF& cdf);

// <delta_k, delta_l>_{L2(mu)} from exact CDF increments; real by symmetry.
double delta_inner(const DyadicTree& tree, const PushforwardCDF& cdf, int k, int l);

}  // namespace aus
