#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "aus/spectral.hpp"
#include "doctest.h"

using namespace aus;

namespace {

constexpr double kPi = std::numbers::pi;

GroupDescriptor torus2() {
  GroupDescriptor G;
  G.kind = GroupKind::Torus;
  G.dim = 2;
  return G;
}

GroupDescriptor su2() { return GroupDescriptor{GroupKind::SU2, 1}; }

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

}  // namespace

TEST_CASE("square wave has the classical first coefficient") {
  // f = +1 on [0, pi), -1 on [pi, 2 pi); hat f(1) = -2i/pi.
  const GroupDescriptor G;
  const QuadratureGrid grid = uniform_grid(G, {std::size_t(1) << 20}, 1);
  GridFunction f;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    f.values[i] = grid.axis_nodes[0][i] < kPi ? 1.0 : -1.0;
  const IrrepLabel n1 = IrrepLabel::parse(G, "n=1");
  const IrrepLabel n2 = IrrepLabel::parse(G, "n=2");
  const Cplx c1 = fourier_coeff(f, n1, grid)(0, 0);
  const Cplx c2 = fourier_coeff(f, n2, grid)(0, 0);
  CHECK(std::abs(c1 - Cplx(0.0, -2.0 / kPi)) < 1e-4);
  CHECK(std::abs(c2) < 1e-4);
}

TEST_CASE("analyze then synthesize is the identity on bandlimited data") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const int B = G.kind == GroupKind::Circle ? 6 : 2;
    const SpectralCoeffs A = random_coeffs(G, B, 0x5eed + static_cast<int>(G.kind));
    const QuadratureGrid grid = haar_grid(G, B);
    GridFunction f;
    f.values = synthesize_on_grid(A, grid);
    const SpectralCoeffs back = analyze(f, grid, B);
    REQUIRE(back.table.size() == A.table.size());
    for (const auto& [label, mat] : A.table) {
      const auto it = back.table.find(label);
      REQUIRE(it != back.table.end());
      CHECK((it->second - mat).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("parseval ties the quadrature norm to the coefficient norm") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const int B = G.kind == GroupKind::Circle ? 6 : 2;
    const SpectralCoeffs A = random_coeffs(G, B, 0xAB + static_cast<int>(G.kind));
    const QuadratureGrid grid = haar_grid(G, B);
    const std::vector<Cplx> v = synthesize_on_grid(A, grid);
    double quad = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) quad += grid.weight(i) * std::norm(v[i]);
    CHECK(std::abs(quad - A.l2_norm_sq()) < 1e-8 * std::max(1.0, A.l2_norm_sq()));
  }
}

TEST_CASE("grid synthesis fast paths agree with the pointwise definition") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const int B = G.kind == GroupKind::Circle ? 5 : 2;
    const SpectralCoeffs A = random_coeffs(G, B, 0xC0 + static_cast<int>(G.kind));
    std::vector<std::size_t> counts;
    if (G.kind == GroupKind::Circle) counts = {32};
    if (G.kind == GroupKind::Torus) counts = {16, 16};
    if (G.kind == GroupKind::SU2) counts = {16, 8, 16};
    const QuadratureGrid grid = uniform_grid(G, counts, B);
    const std::vector<Cplx> fast = synthesize_on_grid(A, grid);
    for (std::size_t i = 0; i < grid.size(); i += 7)
      CHECK(std::abs(fast[i] - synthesize(A, grid.point(i))) < 1e-10);
  }
}

TEST_CASE("circle synthesis at points handles negative frequencies") {
  const GroupDescriptor G;
  SpectralCoeffs A;
  A.G = G;
  Eigen::MatrixXcd c(1, 1);
  c(0, 0) = Cplx(0.0, 1.0);
  A.table.emplace(IrrepLabel::parse(G, "n=-3"), c);
  c(0, 0) = Cplx(0.5, 0.0);
  A.table.emplace(IrrepLabel::parse(G, "n=2"), c);
  const auto pts = random_points(G, 64, 7);
  const auto vals = synthesize_at_points(A, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double th = pts[i].x[0];
    const Cplx want = Cplx(0.0, 1.0) * std::polar(1.0, -3.0 * th) +
                      Cplx(0.5, 0.0) * std::polar(1.0, 2.0 * th);
    CHECK(std::abs(vals[i] - want) < 1e-12);
  }
}

TEST_CASE("support utilities prune and erase") {
  const GroupDescriptor G;
  SpectralCoeffs A = random_coeffs(G, 3, 9);
  Eigen::MatrixXcd tiny(1, 1);
  tiny(0, 0) = Cplx(1e-18, 0.0);
  A.table[IrrepLabel::parse(G, "n=3")] = tiny;
  A.table[IrrepLabel::parse(G, "n=-3")] = tiny;
  A.prune();
  CHECK(A.table.count(IrrepLabel::parse(G, "n=3")) == 0);
  CHECK(A.table.count(IrrepLabel::parse(G, "n=-3")) == 0);
  CHECK(A.max_bandlimit() == 2);

  const SpectralCoeffs cut = zero_on_set(A, {IrrepLabel::parse(G, "n=0")});
  CHECK(cut.table.count(IrrepLabel::parse(G, "n=0")) == 0);
  CHECK(cut.table.size() + 1 == A.table.size());
}

TEST_CASE("trace norm matches singular values and diagonal absolute sums") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
  D(0, 0) = Cplx(3.0, 4.0);
  D(1, 1) = Cplx(0.0, -2.0);
  D(2, 2) = Cplx(1.0, 0.0);
  CHECK(trace_norm(D) == doctest::Approx(8.0).epsilon(1e-12));
  // Unitary invariance: multiplying by a rotation keeps the trace norm.
  Eigen::MatrixXcd R(3, 3);
  const double c = std::cos(0.6), s = std::sin(0.6);
  R << c, -s, 0, s, c, 0, 0, 0, 1;
  CHECK(trace_norm(R * D) == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("the degree-weighted trace norm bounds the sup norm") {
  for (const GroupDescriptor& G : {GroupDescriptor{}, torus2(), su2()}) {
    const int B = 2;
    const SpectralCoeffs A = random_coeffs(G, B, 0xD1 + static_cast<int>(G.kind));
    const double bound = kunze_sup_bound(A);
    const auto pts = random_points(G, 2000, 0xF00D);
    const auto vals = synthesize_at_points(A, pts);
    for (const Cplx& v : vals) CHECK(std::abs(v) <= bound + 1e-10);
  }
}

TEST_CASE("quadrature inner product sees the orthonormal basis scaling") {
  const GroupDescriptor G = su2();
  const QuadratureGrid grid = haar_grid(G, 2);
  const IrrepLabel j1 = IrrepLabel::parse(G, "j=1");
  GridFunction a, b;
  a.values.resize(grid.size());
  b.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::MatrixXcd U = irrep_matrix(G, j1, grid.point(i));
    a.values[i] = U(0, 1);
    b.values[i] = U(2, 1);
  }
  CHECK(std::abs(quad_inner(a, a, grid) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(quad_inner(a, b, grid)) < 1e-12);
}

TEST_CASE("mismatched grids are rejected") {
  const GroupDescriptor G;
  GridFunction f;
  f.values.resize(5);
  const QuadratureGrid grid = haar_grid(G, 4);
  CHECK_THROWS(analyze(f, grid, 4));
}
