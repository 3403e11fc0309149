#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "aus/group.hpp"
#include "doctest.h"

using namespace aus;

namespace {

GroupDescriptor torus2() {
  GroupDescriptor G;
  G.kind = GroupKind::Torus;
  G.dim = 2;
  return G;
}

GroupDescriptor su2() { return GroupDescriptor{GroupKind::SU2, 1}; }

}  // namespace

TEST_CASE("descriptor parsing round-trips and rejects junk") {
  CHECK(GroupDescriptor::parse("circle").kind == GroupKind::Circle);
  CHECK(GroupDescriptor::parse("torus:3").dim == 3);
  CHECK(GroupDescriptor::parse("su2").kind == GroupKind::SU2);
  CHECK(GroupDescriptor::parse("torus:2").to_string() == "torus:2");
  CHECK_THROWS(GroupDescriptor::parse("torus:1"));
  CHECK_THROWS(GroupDescriptor::parse("torus:x"));
  CHECK_THROWS(GroupDescriptor::parse("circle:2"));
  CHECK_THROWS(GroupDescriptor::parse("su2:3"));
  CHECK_THROWS(GroupDescriptor::parse("z2"));
  CHECK_THROWS(GroupDescriptor::parse(""));
}

TEST_CASE("label parsing round-trips and rejects trailing junk") {
  const GroupDescriptor c;
  const IrrepLabel n3 = IrrepLabel::parse(c, "n=-3");
  CHECK(n3.comps == std::vector<int>{-3});
  CHECK(n3.to_string() == "n=-3");
  CHECK_THROWS(IrrepLabel::parse(c, "n=3x"));
  CHECK_THROWS(IrrepLabel::parse(c, "n="));
  CHECK_THROWS(IrrepLabel::parse(c, "j=1"));

  const IrrepLabel t = IrrepLabel::parse(torus2(), "n=(1,-2)");
  CHECK(t.comps == std::vector<int>{1, -2});
  CHECK(t.to_string() == "n=(1,-2)");
  CHECK_THROWS(IrrepLabel::parse(torus2(), "n=(1)"));
  CHECK_THROWS(IrrepLabel::parse(torus2(), "n=(1,2,3)"));

  const IrrepLabel j = IrrepLabel::parse(su2(), "j=3/2");
  CHECK(j.comps == std::vector<int>{3});
  CHECK(j.degree() == 4);
  CHECK(j.to_string() == "j=3/2");
  CHECK(IrrepLabel::parse(su2(), "j=2").comps == std::vector<int>{4});
  CHECK_THROWS(IrrepLabel::parse(su2(), "j=-1"));
  CHECK_THROWS(IrrepLabel::parse(su2(), "j=3/4"));
}

TEST_CASE("irrep enumeration counts and order") {
  CHECK(enumerate_irreps(GroupDescriptor{}, 3).size() == 7);
  CHECK(enumerate_irreps(torus2(), 1).size() == 9);
  const auto js = enumerate_irreps(su2(), 2);
  CHECK(js.size() == 5);  // 2j = 0..4
  CHECK(js.front().degree() == 1);
  CHECK(js.back().degree() == 5);
  for (std::size_t i = 1; i < js.size(); ++i) CHECK(js[i - 1] < js[i]);
  CHECK(enumerate_irreps(GroupDescriptor{}, 0).size() == 1);
}

TEST_CASE("haar weights are a probability measure") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const QuadratureGrid grid = haar_grid(G, 3);
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) total += grid.weight(i);
    CHECK(std::abs(total - 1.0) < 1e-13);
  }
}

TEST_CASE("irrep matrices are unitary at random points") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const auto pts = random_points(G, 5, 0x11);
    for (const IrrepLabel& label : enumerate_irreps(G, 2)) {
      for (const GroupPoint& g : pts) {
        const Eigen::MatrixXcd U = irrep_matrix(G, label, g);
        const int d = label.degree();
        CHECK((U * U.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("nontrivial matrix coefficients integrate to zero on the haar grid") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const QuadratureGrid grid = haar_grid(G, 2);
    for (const IrrepLabel& label : enumerate_irreps(G, 2)) {
      if (label.bandlimit() == 0) continue;
      Eigen::MatrixXcd acc =
          Eigen::MatrixXcd::Zero(label.degree(), label.degree());
      for (std::size_t i = 0; i < grid.size(); ++i)
        acc += grid.weight(i) * irrep_matrix(G, label, grid.point(i));
      CHECK(acc.cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("su2 half-integer characters need the doubled gamma range") {
  // D^{1/2} at (0,0,gamma) has entries e^{-i gamma/2}: period 4 pi.
  GroupPoint g;
  g.x = {0.0, 0.0, 2.0 * std::numbers::pi};
  const IrrepLabel half = IrrepLabel::parse(su2(), "j=1/2");
  const Eigen::MatrixXcd U = irrep_matrix(su2(), half, g);
  CHECK(std::abs(U(1, 1) - std::complex<double>(-1.0, 0.0)) < 1e-13);
}

TEST_CASE("uniform grids carry the declared layout") {
  const QuadratureGrid c = uniform_grid(GroupDescriptor{}, {8}, 2);
  CHECK(c.axis_nodes[0].size() == 8);
  CHECK(std::abs(c.axis_nodes[0][1] - std::numbers::pi / 4.0) < 1e-15);
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) total += c.weight(i);
  CHECK(std::abs(total - 1.0) < 1e-13);

  const QuadratureGrid s = uniform_grid(su2(), {8, 4, 16}, 2);
  CHECK(s.axis_nodes[0].size() == 8);
  CHECK(s.axis_nodes[1].size() == 4);
  CHECK(s.axis_nodes[2].size() == 16);
  total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) total += s.weight(i);
  CHECK(std::abs(total - 1.0) < 1e-13);
  // beta axis nodes are Gauss-Legendre points mapped through acos
  for (double b : s.axis_nodes[1]) {
    CHECK(b > 0.0);
    CHECK(b < std::numbers::pi);
  }
}

TEST_CASE("sweep coordinate, fiber, and band measure are consistent") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    for (const double t : {0.0, 0.125, 0.5, 0.9}) {
      const GroupPoint g = sweep_fiber_point(G, t);
      CHECK(std::abs(sweep_coordinate(G, g) - t) < 1e-14);
    }
    CHECK(sweep_interval_mu(G, 0.2, 0.7) == doctest::Approx(0.5).epsilon(1e-14));
    // Pushforward uniformity: haar-weighted mass of {t < 1/2} is 1/2.
    const QuadratureGrid grid = haar_grid(G, 4);
    double mass = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (sweep_coordinate(G, grid.point(i)) < 0.5) mass += grid.weight(i);
    CHECK(std::abs(mass - 0.5) < 0.06);  // node-count granularity only
  }
}

TEST_CASE("random points are deterministic per seed and inside ranges") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const auto a = random_points(G, 100, 42);
    const auto b = random_points(G, 100, 42);
    const auto c = random_points(G, 100, 43);
    REQUIRE(a.size() == 100);
    bool all_equal = true, any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t ax = 0; ax < a[i].x.size(); ++ax) {
        if (a[i].x[ax] != b[i].x[ax]) all_equal = false;
        if (a[i].x[ax] != c[i].x[ax]) any_diff = true;
      }
    }
    CHECK(all_equal);
    CHECK(any_diff);
    for (const GroupPoint& g : a) {
      const double t = sweep_coordinate(G, g);
      CHECK(t >= 0.0);
      CHECK(t < 1.0);
    }
  }
}
