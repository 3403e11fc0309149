#include "aus/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aus/parallel.hpp"
#include "aus/wigner.hpp"

namespace aus {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cell_sign(std::size_t j) { return (j % 2 == 0) ? 1.0 : -1.0; }

// integral over [t0, t1] of (v0 + slope (t - t0)) exp(-2 pi i nu t) dt.
// Small |z dt| goes through series for phi1(x) = (e^x - 1)/x and
// psi(x) = (e^x (x - 1) + 1)/x^2 to dodge cancellation.
Cplx segment_integral(double t0, double t1, double v0, double v1, double nu) {
  const double dt = t1 - t0;
  if (dt <= 0.0) return Cplx(0.0, 0.0);
  if (nu == 0.0) return Cplx(0.5 * (v0 + v1) * dt, 0.0);
  const Cplx z(0.0, -kTwoPi * nu);
  const Cplx x = z * dt;
  const Cplx head = std::polar(1.0, -kTwoPi * nu * t0);
  Cplx phi1, psi;
  if (std::abs(x) < 1e-2) {
    const Cplx x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x5 = x4 * x;
    phi1 = 1.0 + x * (1.0 / 2.0) + x2 * (1.0 / 6.0) + x3 * (1.0 / 24.0) +
           x4 * (1.0 / 120.0) + x5 * (1.0 / 720.0);
    psi = 0.5 + x * (1.0 / 3.0) + x2 * (1.0 / 8.0) + x3 * (1.0 / 30.0) +
          x4 * (1.0 / 144.0) + x5 * (6.0 / 5040.0);
  } else {
    const Cplx ex = std::exp(x);
    phi1 = (ex - 1.0) / x;
    psi = (ex * (x - 1.0) + 1.0) / (x * x);
  }
  return head * dt * (v0 * phi1 + (v1 - v0) * psi);
}

// Gauss-Chebyshev (second kind): sum w_i P(u_i) = integral of
// sqrt(1-u^2) P(u) over [-1,1], exact for deg P <= 2n-1; u_i = cos(beta_i).
void gauss_chebyshev2(int n, std::vector<double>& beta, std::vector<double>& w) {
  beta.resize(n);
  w.resize(n);
  for (int i = 1; i <= n; ++i) {
    const double th = kPi * static_cast<double>(i) / static_cast<double>(n + 1);
    beta[i - 1] = th;
    w[i - 1] = kPi / static_cast<double>(n + 1) * std::sin(th) * std::sin(th);
  }
}

void coeffs_circle_axis(const WindowEnvelope& w, const SpectralCoeffs& f0,
                        const std::vector<IrrepLabel>& labels, SpectralCoeffs& out) {
  for (const IrrepLabel& label : labels) {
    Cplx acc(0.0, 0.0);
    for (const auto& [src, mat] : f0.table) {
      bool rest_match = true;
      for (std::size_t ax = 1; ax < label.comps.size(); ++ax)
        rest_match = rest_match && (label.comps[ax] == src.comps[ax]);
      if (!rest_match) continue;
      acc += mat(0, 0) * profile_transform(w, static_cast<double>(label.comps[0] - src.comps[0]));
    }
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = acc;
    out.table.emplace(label, std::move(m));
  }
}

void coeffs_su2(const WindowEnvelope& w, const SpectralCoeffs& f0,
                const std::vector<IrrepLabel>& labels, SpectralCoeffs& out) {
  for (const IrrepLabel& label : labels) {
    const int two_j = label.comps[0];
    const int d = two_j + 1;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [src, C] : f0.table) {
      const int two_jp = src.comps[0];
      if (((two_j + two_jp) & 1) != 0) continue;
      const int deg = (two_j + two_jp) / 2;
      const int nq = deg / 2 + 2;
      std::vector<double> gl_u, gl_w, gc_beta, gc_w;
      gauss_legendre(nq, gl_u, gl_w);
      gauss_chebyshev2(nq, gc_beta, gc_w);
      std::vector<Eigen::MatrixXd> dj_gl(nq), djp_gl(nq), dj_gc(nq), djp_gc(nq);
      for (int i = 0; i < nq; ++i) {
        const double beta_gl = std::acos(std::clamp(gl_u[i], -1.0, 1.0));
        dj_gl[i] = wigner_little_d(two_j, beta_gl);
        djp_gl[i] = wigner_little_d(two_jp, beta_gl);
        dj_gc[i] = wigner_little_d(two_j, gc_beta[i]);
        djp_gc[i] = wigner_little_d(two_jp, gc_beta[i]);
      }
      for (int ai = 0; ai < d; ++ai) {
        const int ra = 2 * ai - two_j;
        if (std::abs(ra) > two_jp) continue;
        const int src_row = (ra + two_jp) / 2;
        for (int bi = 0; bi < d; ++bi) {
          const int rb = 2 * bi - two_j;
          Cplx acc(0.0, 0.0);
          for (int mi = 0; mi <= two_jp; ++mi) {
            const int rmu = 2 * mi - two_jp;
            const int nu = (rmu - rb) / 2;
            double G = 0.0;
            if ((nu & 1) == 0) {
              for (int i = 0; i < nq; ++i)
                G += gl_w[i] * djp_gl[i](mi, src_row) * dj_gl[i](bi, ai);
            } else {
              for (int i = 0; i < nq; ++i)
                G += gc_w[i] * djp_gc[i](mi, src_row) * dj_gc[i](bi, ai) /
                     std::sin(gc_beta[i]);
            }
            G *= 0.5;
            acc += C(src_row, mi) * profile_transform(w, static_cast<double>(nu)) * G;
          }
          M(ai, bi) += static_cast<double>(two_jp + 1) * acc;
        }
      }
    }
    out.table.emplace(label, std::move(M));
  }
}

}  // namespace

double WindowEnvelope::eval(double t) const {
  if (cells.empty()) return 0.0;
  t = std::clamp(t, 0.0, 1.0);
  // Rightmost cell whose start is <= t.
  std::size_t lo = 0, hi = cells.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (cells[mid].first <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const auto& [a, b] = cells[lo];
  const double sign = cell_sign(lo);
  if (mode == WindowMode::Hard) return sign;
  const auto& [c0, c1] = cores[lo];
  if (t < c0) return (c0 > a) ? sign * (t - a) / (c0 - a) : sign;
  if (t > c1) return (b > c1) ? sign * (b - t) / (b - c1) : sign;
  return sign;
}

std::vector<WindowSegment> WindowEnvelope::segments() const {
  std::vector<WindowSegment> out;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    const auto& [a, b] = cells[j];
    const double sign = cell_sign(j);
    if (mode == WindowMode::Hard) {
      out.push_back({a, b, sign, sign});
      continue;
    }
    const auto& [c0, c1] = cores[j];
    out.push_back({a, c0, 0.0, sign});
    out.push_back({c0, c1, sign, sign});
    out.push_back({c1, b, sign, 0.0});
  }
  return out;
}

WindowEnvelope make_window(const DyadicTree& tree, int k, WindowMode mode) {
  if (k < 0 || k > tree.K_max) throw std::invalid_argument("level outside tree");
  WindowEnvelope w;
  w.k = k;
  w.mode = mode;
  const std::vector<double>& b = tree.boundaries[static_cast<std::size_t>(k)];
  for (std::size_t j = 0; j + 1 < b.size(); ++j) w.cells.emplace_back(b[j], b[j + 1]);
  w.cores = tree.cores[static_cast<std::size_t>(k)];
  return w;
}

Cplx profile_transform(const WindowEnvelope& w, double nu) {
  Cplx acc(0.0, 0.0);
  for (const WindowSegment& s : w.segments()) acc += segment_integral(s.t0, s.t1, s.v0, s.v1, nu);
  return acc;
}

Cplx eval_delta(const DyadicTree& tree, int k, const SpectralCoeffs& f0,
                const GroupPoint& g) {
  const WindowEnvelope w = make_window(tree, k, WindowMode::Hard);
  return synthesize(f0, g) * w.eval(sweep_coordinate(f0.G, g));
}

Cplx eval_psi(const DyadicTree& tree, int k, const SpectralCoeffs& f0,
              const GroupPoint& g) {
  const WindowEnvelope w = make_window(tree, k, WindowMode::Ramped);
  return synthesize(f0, g) * w.eval(sweep_coordinate(f0.G, g));
}

std::vector<Cplx> window_samples(const WindowEnvelope& w, const std::vector<Cplx>& f0vals,
                                 const QuadratureGrid& grid) {
  if (f0vals.size() != grid.size()) throw std::invalid_argument("grid/sample mismatch");
  std::vector<Cplx> out(f0vals.size());
  parallel_chunks(out.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = f0vals[i] * w.eval(sweep_coordinate(grid.G, grid.point(i)));
  });
  return out;
}

SpectralCoeffs windowed_coeffs(const WindowEnvelope& w, const SpectralCoeffs& f0,
                               const std::vector<IrrepLabel>& labels) {
  SpectralCoeffs out;
  out.G = f0.G;
  if (f0.G.kind == GroupKind::SU2) {
    coeffs_su2(w, f0, labels, out);
  } else {
    coeffs_circle_axis(w, f0, labels, out);
  }
  return out;
}

SpectralCoeffs windowed_coeffs_upto(const WindowEnvelope& w, const SpectralCoeffs& f0,
                                    int B) {
  return windowed_coeffs(w, f0, enumerate_irreps(f0.G, B));
}

double smoothing_deficit(const DyadicTree& tree, int k, const PushforwardCDF& cdf) {
  if (k < 0 || k > tree.K_max) throw std::invalid_argument("level outside tree");
  const std::vector<double>& b = tree.boundaries[static_cast<std::size_t>(k)];
  const auto& cores = tree.cores[static_cast<std::size_t>(k)];
  const int nq = std::max<int>(6, static_cast<int>(cdf.h.size()) / 2 + 4);
  std::vector<double> u, gw;
  gauss_legendre(nq, u, gw);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    const double a = b[j], bb = b[j + 1];
    const auto& [c0, c1] = cores[j];
    // Up ramp [a, c0]: difference (1 - (t-a)/s); down ramp mirrors it.
    for (int side = 0; side < 2; ++side) {
      const double lo = (side == 0) ? a : c1;
      const double hi = (side == 0) ? c0 : bb;
      const double s = hi - lo;
      if (s <= 0.0) continue;
      double piece = 0.0;
      for (int i = 0; i < nq; ++i) {
        const double t = lo + 0.5 * s * (u[i] + 1.0);
        const double ramp = (side == 0) ? (t - a) / s : (bb - t) / s;
        const double diff = 1.0 - ramp;
        piece += 0.5 * s * gw[i] * cdf.density(t) * diff * diff;
      }
      total += piece;
    }
  }
  return total;
}

double delta_inner(const DyadicTree& tree, const PushforwardCDF& cdf, int k, int l) {
  if (k < 0 || k > tree.K_max || l < 0 || l > tree.K_max)
    throw std::invalid_argument("level outside tree");
  const int L = std::max(k, l);
  const std::vector<double>& b = tree.boundaries[static_cast<std::size_t>(L)];
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < b.size(); ++j) {
    const double sk = cell_sign(j >> (L - k));
    const double sl = cell_sign(j >> (L - l));
    acc += sk * sl * (cdf.F(b[j + 1]) - cdf.F(b[j]));
  }
  return acc * cdf.nu_total;
}

}  // namespace aus
