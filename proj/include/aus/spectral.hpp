#pragma once
// Coefficient tables on the unitary dual and the transforms between them and
// sampled functions: quadrature analysis, pointwise and batch synthesis,
// Schatten-1 norms and the resulting sup bound.

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "aus/group.hpp"

namespace aus {

using Cplx = std::complex<double>;

// Samples aligned index-for-index with a QuadratureGrid.
struct GridFunction {
  std::vector<Cplx> values;
};

GridFunction sample_on_grid(const QuadratureGrid& grid,
                            const std::function<Cplx(const GroupPoint&)>& fn);

// Operator-valued coefficient table keyed by irrep label. Absent label means
// the zero matrix. Every stored matrix is degree x degree for its label.
struct SpectralCoeffs {
  GroupDescriptor G;
  std::map<IrrepLabel, Eigen::MatrixXcd> table;

  double max_abs_entry() const;
  // Entries at or below this threshold count as spectrally zero.
  double tau_supp() const;
  std::vector<IrrepLabel> support() const;
  // Drops labels whose entries all sit at or below tau_supp().
  void prune();
  // Largest bandlimit over support(), -1 when the support is empty.
  int max_bandlimit() const;
  // sum_pi d_pi * ||A(pi)||_F^2, the coefficient side of Parseval.
  double l2_norm_sq() const;
};

// Quadrature evaluation of integral f(g) pi(g)^* dmu(g), entrywise.
Eigen::MatrixXcd fourier_coeff(const GridFunction& f, const IrrepLabel& pi,
                               const QuadratureGrid& grid);

// Coefficients at every label of bandlimit <= B (B in the same units as
// enumerate_irreps). Equispaced power-of-two grids use FFT binning.
SpectralCoeffs analyze(const GridFunction& f, const QuadratureGrid& grid, int B);

// sum_pi d_pi * tr(pi(g) A(pi)).
Cplx synthesize(const SpectralCoeffs& A, const GroupPoint& g);

// Batch synthesis on every grid node. Equispaced power-of-two circle and
// torus grids go through zero-padded FFTs; SU(2) grids contract one
// beta slab at a time.
std::vector<Cplx> synthesize_on_grid(const SpectralCoeffs& A,
                                     const QuadratureGrid& grid);

// Pointwise synthesis at arbitrary points, parallel over points; circle
// tables walk the frequency range with a resynced running phase.
std::vector<Cplx> synthesize_at_points(const SpectralCoeffs& A,
                                       const std::vector<GroupPoint>& pts);

// Copy of A with the matrices at the given labels removed outright, so the
// result's support is disjoint from lambda exactly, not just below threshold.
SpectralCoeffs zero_on_set(const SpectralCoeffs& A,
                           const std::vector<IrrepLabel>& lambda);

// Sum of singular values.
double trace_norm(const Eigen::MatrixXcd& M);

// sum_pi d_pi * trace_norm(A(pi)); dominates sup_g |synthesize(A, g)|.
double kunze_sup_bound(const SpectralCoeffs& A);

// Quadrature of f * conj(g) against the grid's normalized weights.
Cplx quad_inner(const GridFunction& f, const GridFunction& g,
                const QuadratureGrid& grid);

}  // namespace aus
