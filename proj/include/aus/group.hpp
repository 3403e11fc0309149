#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace aus {

enum class GroupKind { Circle, Torus, SU2 };

// Concrete infinite compact group with normalized Haar measure.
struct GroupDescriptor {
  GroupKind kind = GroupKind::Circle;
  int dim = 1;  // torus dimension d >= 2; 1 for circle; unused for su2

  // "circle" | "torus:d" | "su2"; rejects anything else (finite groups included).
  static GroupDescriptor parse(const std::string& s);
  std::string to_string() const;

  int coord_count() const;  // 1, d, 3
  bool operator==(const GroupDescriptor& o) const { return kind == o.kind && dim == o.dim; }
};

// Coordinates in fundamental ranges: circle theta in [0,2pi); torus per-axis
// [0,2pi); su2 Euler z-y-z (alpha, beta, gamma) in [0,2pi) x [0,pi] x [0,4pi).
struct GroupPoint {
  std::vector<double> x;
};

GroupPoint normalize_point(const GroupDescriptor& G, std::vector<double> coords);

// Irrep label; comps: circle {n}, torus {n_1..n_d}, su2 {2j}.
// bandlimit() is max |comps| for every kind (2j for su2), which also defines
// the canonical total order (bandlimit, then lexicographic comps).
struct IrrepLabel {
  GroupKind kind = GroupKind::Circle;
  std::vector<int> comps;

  int bandlimit() const;
  int degree() const;  // 1 for circle/torus, 2j+1 for su2
  std::string to_string() const;
  static IrrepLabel parse(const GroupDescriptor& G, const std::string& s);

  bool operator==(const IrrepLabel& o) const { return kind == o.kind && comps == o.comps; }
  bool operator<(const IrrepLabel& o) const;
};

// Nodes and weights realizing the Haar integral, tensor-structured per axis.
// Declared exactness: integrates any product of two matrix coefficients with
// labels admitted by enumerate_irreps(G, B) to quadrature precision.
struct QuadratureGrid {
  GroupDescriptor G;
  int B = 0;
  std::vector<std::vector<double>> axis_nodes;
  std::vector<std::vector<double>> axis_weights;

  std::size_t size() const;
  std::size_t axis_count() const { return axis_nodes.size(); }
  GroupPoint point(std::size_t idx) const;  // row-major, last axis fastest
  double weight(std::size_t idx) const;
};

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on the recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// All labels with bandlimit admitted at B, canonical order.
// Circle: n in [-B, B]; torus: max-norm <= B; su2: 2j in {0..2B}.
std::vector<IrrepLabel> enumerate_irreps(const GroupDescriptor& G, int B);

// Unitary irrep matrix at g. Circle/torus: [e^{i n.theta}]; su2: Wigner-D,
// D^j_{m m'} = e^{-i m alpha} d^j_{m m'}(beta) e^{-i m' gamma}, rows m = -j..j.
Eigen::MatrixXcd irrep_matrix(const GroupDescriptor& G, const IrrepLabel& pi, const GroupPoint& g);

// Circle/torus: uniform, exactly 2B+1 nodes per axis, equal weights.
// SU2: alpha uniform 2B+1 on [0,2pi), gamma uniform 4B+1 on [0,4pi),
// Gauss-Legendre B+1 in cos(beta); weights normalized to total 1.
QuadratureGrid haar_grid(const GroupDescriptor& G, int B);

// Uniform grid with n nodes per axis (circle/torus); su2 keeps the haar layout
// with axis counts scaled. Used where callers want power-of-two axes.
QuadratureGrid uniform_grid(const GroupDescriptor& G, const std::vector<std::size_t>& axis_counts,
                            int declared_B);

// t(g) in [0,1): theta/2pi, theta_1/2pi, alpha/2pi. Pushforward of Haar is
// exactly uniform on [0,1).
double sweep_coordinate(const GroupDescriptor& G, const GroupPoint& g);

// mu of the band t^{-1}[a,b): exactly b - a.
double sweep_interval_mu(const GroupDescriptor& G, double a, double b);

// Group element at sweep value t on the plotting fiber (other coordinates
// fixed: torus zeros, su2 beta=pi/2, gamma=0).
GroupPoint sweep_fiber_point(const GroupDescriptor& G, double t);

// Seeded Haar-style sample of n points; fully specified generator so reruns
// with the same seed reproduce the sequence bit for bit.
std::vector<GroupPoint> random_points(const GroupDescriptor& G, std::size_t n,
                                      std::uint64_t seed);

}  // namespace aus
