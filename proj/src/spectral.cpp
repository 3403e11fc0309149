#include "aus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "aus/fft.hpp"
#include "aus/parallel.hpp"
#include "aus/wigner.hpp"

namespace aus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_aligned(const GridFunction& f, const QuadratureGrid& grid) {
  if (f.values.size() != grid.size()) throw std::invalid_argument("grid/sample mismatch");
}

// N nodes at multiples of period/N, starting at zero.
bool equispaced(const std::vector<double>& nodes, double period) {
  const std::size_t n = nodes.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(nodes[i] - period * static_cast<double>(i) / static_cast<double>(n)) > 1e-12)
      return false;
  }
  return true;
}

bool all_axes_pow2_equispaced(const QuadratureGrid& grid, double period) {
  for (std::size_t ax = 0; ax < grid.axis_count(); ++ax) {
    if (!is_pow2(grid.axis_nodes[ax].size())) return false;
    if (!equispaced(grid.axis_nodes[ax], period)) return false;
  }
  return true;
}

// In-place transform along one axis of a row-major array, last axis fastest.
void axis_transform(std::vector<Cplx>& values, const std::vector<std::size_t>& shape,
                    std::size_t axis, int dir) {
  const std::size_t len = shape[axis];
  std::size_t stride = 1;
  for (std::size_t k = axis + 1; k < shape.size(); ++k) stride *= shape[k];
  const std::size_t block = stride * len;
  const std::size_t total = values.size();
  std::vector<Cplx> line(len);
  for (std::size_t outer = 0; outer < total; outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      for (std::size_t t = 0; t < len; ++t) line[t] = values[outer + inner + t * stride];
      if (is_pow2(len)) {
        fft_pow2(line, dir);
      } else {
        line = dft_naive(line, dir);
      }
      for (std::size_t t = 0; t < len; ++t) values[outer + inner + t * stride] = line[t];
    }
  }
}

// sum over nodes of c * exp(i sgn n theta_k) added into out, equispaced case.
// The running phase is resynced every 32 steps to hold roundoff near 32 eps.
void accumulate_tone(std::vector<Cplx>& out, Cplx c, double freq, double period, int sgn) {
  const std::size_t n = out.size();
  const double ang = sgn * freq * period / static_cast<double>(n);
  parallel_chunks(n, [&](std::size_t, std::size_t begin, std::size_t end) {
    const Cplx step = std::polar(1.0, ang);
    Cplx w = std::polar(1.0, ang * static_cast<double>(begin));
    for (std::size_t i = begin; i < end; ++i) {
      if (((i - begin) & 31u) == 0u) w = std::polar(1.0, ang * static_cast<double>(i));
      out[i] += c * w;
      w *= step;
    }
  });
}

std::vector<Cplx> synth_circle(const SpectralCoeffs& A, const QuadratureGrid& grid) {
  const std::vector<double>& nodes = grid.axis_nodes[0];
  const std::size_t n = nodes.size();
  std::vector<Cplx> out(n, Cplx(0.0, 0.0));
  const int maxb = A.max_bandlimit();
  if (maxb < 0) return out;
  const bool uni = equispaced(nodes, kTwoPi);
  if (uni && is_pow2(n) && 2 * static_cast<std::size_t>(maxb) + 1 <= n) {
    for (const auto& [label, mat] : A.table) {
      const long bin = ((label.comps[0] % static_cast<long>(n)) + static_cast<long>(n)) %
                       static_cast<long>(n);
      out[static_cast<std::size_t>(bin)] += mat(0, 0);
    }
    fft_pow2(out, +1);
    return out;
  }
  if (uni) {
    for (const auto& [label, mat] : A.table)
      accumulate_tone(out, mat(0, 0), static_cast<double>(label.comps[0]), kTwoPi, +1);
    return out;
  }
  parallel_chunks(n, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Cplx v(0.0, 0.0);
      for (const auto& [label, mat] : A.table)
        v += mat(0, 0) * std::polar(1.0, label.comps[0] * nodes[i]);
      out[i] = v;
    }
  });
  return out;
}

std::vector<Cplx> synth_torus(const SpectralCoeffs& A, const QuadratureGrid& grid) {
  const std::size_t total = grid.size();
  std::vector<Cplx> out(total, Cplx(0.0, 0.0));
  const int maxb = A.max_bandlimit();
  if (maxb < 0) return out;
  std::vector<std::size_t> shape(grid.axis_count());
  std::size_t minlen = SIZE_MAX;
  for (std::size_t ax = 0; ax < shape.size(); ++ax) {
    shape[ax] = grid.axis_nodes[ax].size();
    minlen = std::min(minlen, shape[ax]);
  }
  if (all_axes_pow2_equispaced(grid, kTwoPi) && 2 * static_cast<std::size_t>(maxb) + 1 <= minlen) {
    for (const auto& [label, mat] : A.table) {
      std::size_t idx = 0;
      for (std::size_t ax = 0; ax < shape.size(); ++ax) {
        const long n = static_cast<long>(shape[ax]);
        const long bin = ((label.comps[ax] % n) + n) % n;
        idx = idx * shape[ax] + static_cast<std::size_t>(bin);
      }
      out[idx] += mat(0, 0);
    }
    for (std::size_t ax = 0; ax < shape.size(); ++ax) axis_transform(out, shape, ax, +1);
    return out;
  }
  parallel_chunks(total, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const GroupPoint g = grid.point(i);
      Cplx v(0.0, 0.0);
      for (const auto& [label, mat] : A.table) {
        double phase = 0.0;
        for (std::size_t ax = 0; ax < g.x.size(); ++ax) phase += label.comps[ax] * g.x[ax];
        v += mat(0, 0) * std::polar(1.0, phase);
      }
      out[i] = v;
    }
  });
  return out;
}

std::vector<Cplx> synth_su2(const SpectralCoeffs& A, const QuadratureGrid& grid) {
  const std::vector<double>& alphas = grid.axis_nodes[0];
  const std::vector<double>& betas = grid.axis_nodes[1];
  const std::vector<double>& gammas = grid.axis_nodes[2];
  const std::size_t na = alphas.size(), nb = betas.size(), ng = gammas.size();
  std::vector<Cplx> out(na * nb * ng, Cplx(0.0, 0.0));
  const int two_jmax = A.max_bandlimit();
  if (two_jmax < 0) return out;
  // Doubled frequency index r in [-two_jmax, two_jmax]; m = r/2.
  const int R = 2 * two_jmax + 1;
  const int off = two_jmax;
  Eigen::MatrixXcd Ea(na, R), Eg(R, ng);
  for (std::size_t i = 0; i < na; ++i)
    for (int ri = 0; ri < R; ++ri) Ea(i, ri) = std::polar(1.0, -0.5 * (ri - off) * alphas[i]);
  for (int ri = 0; ri < R; ++ri)
    for (std::size_t l = 0; l < ng; ++l) Eg(ri, l) = std::polar(1.0, -0.5 * (ri - off) * gammas[l]);
  parallel_chunks(nb, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(R, R);
      for (const auto& [label, mat] : A.table) {
        const int two_j = label.comps[0];
        const Eigen::MatrixXd d = wigner_little_d(two_j, betas[q]);
        const double deg = two_j + 1;
        for (int ai = 0; ai <= two_j; ++ai) {
          const int r = 2 * ai - two_j;
          for (int bi = 0; bi <= two_j; ++bi) {
            const int rp = 2 * bi - two_j;
            C(r + off, rp + off) += deg * d(ai, bi) * mat(bi, ai);
          }
        }
      }
      const Eigen::MatrixXcd block = Ea * C * Eg;
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t l = 0; l < ng; ++l) out[(i * nb + q) * ng + l] = block(i, l);
    }
  });
  return out;
}

Eigen::MatrixXcd coeff_su2(const GridFunction& f, const IrrepLabel& pi,
                           const QuadratureGrid& grid) {
  const std::vector<double>& alphas = grid.axis_nodes[0];
  const std::vector<double>& betas = grid.axis_nodes[1];
  const std::vector<double>& gammas = grid.axis_nodes[2];
  const std::vector<double>& wa = grid.axis_weights[0];
  const std::vector<double>& wb = grid.axis_weights[1];
  const std::vector<double>& wg = grid.axis_weights[2];
  const std::size_t na = alphas.size(), nb = betas.size(), ng = gammas.size();
  const int two_j = pi.comps[0];
  const int d = two_j + 1;
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd Ea(d, na), Eg(ng, d);
  for (int bi = 0; bi < d; ++bi) {
    const double m = 0.5 * (2 * bi - two_j);
    for (std::size_t i = 0; i < na; ++i) Ea(bi, i) = wa[i] * std::polar(1.0, m * alphas[i]);
  }
  for (int ai = 0; ai < d; ++ai) {
    const double m = 0.5 * (2 * ai - two_j);
    for (std::size_t l = 0; l < ng; ++l) Eg(l, ai) = wg[l] * std::polar(1.0, m * gammas[l]);
  }
  Eigen::MatrixXcd slab(na, ng);
  for (std::size_t q = 0; q < nb; ++q) {
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t l = 0; l < ng; ++l) slab(i, l) = f.values[(i * nb + q) * ng + l];
    // phi(b, a) = sum over alpha, gamma of weighted samples times conj phases
    const Eigen::MatrixXcd phi = Ea * slab * Eg;
    const Eigen::MatrixXd dm = wigner_little_d(two_j, betas[q]);
    for (int ai = 0; ai < d; ++ai)
      for (int bi = 0; bi < d; ++bi) result(ai, bi) += wb[q] * dm(bi, ai) * phi(bi, ai);
  }
  return result;
}

}  // namespace

GridFunction sample_on_grid(const QuadratureGrid& grid,
                            const std::function<Cplx(const GroupPoint&)>& fn) {
  GridFunction f;
  f.values.assign(grid.size(), Cplx(0.0, 0.0));
  parallel_chunks(grid.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) f.values[i] = fn(grid.point(i));
  });
  return f;
}

double SpectralCoeffs::max_abs_entry() const {
  double best = 0.0;
  for (const auto& [label, mat] : table)
    for (Eigen::Index r = 0; r < mat.rows(); ++r)
      for (Eigen::Index c = 0; c < mat.cols(); ++c) best = std::max(best, std::abs(mat(r, c)));
  return best;
}

double SpectralCoeffs::tau_supp() const { return 1e-12 * std::max(1.0, max_abs_entry()); }

std::vector<IrrepLabel> SpectralCoeffs::support() const {
  const double tau = tau_supp();
  std::vector<IrrepLabel> out;
  for (const auto& [label, mat] : table) {
    if (mat.cwiseAbs().maxCoeff() > tau) out.push_back(label);
  }
  return out;
}

void SpectralCoeffs::prune() {
  const double tau = tau_supp();
  for (auto it = table.begin(); it != table.end();) {
    if (it->second.cwiseAbs().maxCoeff() > tau) {
      ++it;
    } else {
      it = table.erase(it);
    }
  }
}

int SpectralCoeffs::max_bandlimit() const {
  int best = -1;
  for (const auto& label : support()) best = std::max(best, label.bandlimit());
  return best;
}

double SpectralCoeffs::l2_norm_sq() const {
  double sum = 0.0;
  for (const auto& [label, mat] : table)
    sum += static_cast<double>(label.degree()) * mat.squaredNorm();
  return sum;
}

Eigen::MatrixXcd fourier_coeff(const GridFunction& f, const IrrepLabel& pi,
                               const QuadratureGrid& grid) {
  check_aligned(f, grid);
  if (pi.kind != grid.G.kind) throw std::invalid_argument("label/grid group mismatch");
  if (grid.G.kind == GroupKind::SU2) return coeff_su2(f, pi, grid);
  const Cplx sum = deterministic_sum(grid.size(), [&](std::size_t i) {
    const GroupPoint g = grid.point(i);
    double phase = 0.0;
    for (std::size_t ax = 0; ax < g.x.size(); ++ax) phase += pi.comps[ax] * g.x[ax];
    return f.values[i] * grid.weight(i) * std::polar(1.0, -phase);
  });
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = sum;
  return m;
}

SpectralCoeffs analyze(const GridFunction& f, const QuadratureGrid& grid, int B) {
  check_aligned(f, grid);
  SpectralCoeffs out;
  out.G = grid.G;
  const std::vector<IrrepLabel> labels = enumerate_irreps(grid.G, B);
  const GroupKind kind = grid.G.kind;
  const bool fft_ok = (kind == GroupKind::Circle || kind == GroupKind::Torus) &&
                      all_axes_pow2_equispaced(grid, kTwoPi);
  std::size_t minlen = SIZE_MAX;
  for (std::size_t ax = 0; ax < grid.axis_count(); ++ax)
    minlen = std::min(minlen, grid.axis_nodes[ax].size());
  if (fft_ok && 2 * static_cast<std::size_t>(std::max(B, 0)) + 1 <= minlen) {
    std::vector<std::size_t> shape(grid.axis_count());
    for (std::size_t ax = 0; ax < shape.size(); ++ax) shape[ax] = grid.axis_nodes[ax].size();
    std::vector<Cplx> bins = f.values;
    for (std::size_t ax = 0; ax < shape.size(); ++ax) axis_transform(bins, shape, ax, -1);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (const IrrepLabel& label : labels) {
      std::size_t idx = 0;
      for (std::size_t ax = 0; ax < shape.size(); ++ax) {
        const long n = static_cast<long>(shape[ax]);
        const long bin = ((label.comps[ax] % n) + n) % n;
        idx = idx * shape[ax] + static_cast<std::size_t>(bin);
      }
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = bins[idx] * scale;
      out.table.emplace(label, std::move(m));
    }
    return out;
  }
  std::vector<Eigen::MatrixXcd> mats(labels.size());
  parallel_chunks(labels.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) mats[i] = fourier_coeff(f, labels[i], grid);
  });
  for (std::size_t i = 0; i < labels.size(); ++i) out.table.emplace(labels[i], std::move(mats[i]));
  return out;
}

Cplx synthesize(const SpectralCoeffs& A, const GroupPoint& g) {
  Cplx sum(0.0, 0.0);
  for (const auto& [label, mat] : A.table) {
    const Eigen::MatrixXcd pi = irrep_matrix(A.G, label, g);
    sum += static_cast<double>(label.degree()) * (pi * mat).trace();
  }
  return sum;
}

std::vector<Cplx> synthesize_on_grid(const SpectralCoeffs& A, const QuadratureGrid& grid) {
  if (A.G.kind != grid.G.kind) throw std::invalid_argument("coeff/grid group mismatch");
  switch (grid.G.kind) {
    case GroupKind::Circle:
      return synth_circle(A, grid);
    case GroupKind::Torus:
      return synth_torus(A, grid);
    case GroupKind::SU2:
      return synth_su2(A, grid);
  }
  throw std::logic_error("unreachable");
}

std::vector<Cplx> synthesize_at_points(const SpectralCoeffs& A,
                                       const std::vector<GroupPoint>& pts) {
  std::vector<Cplx> out(pts.size(), Cplx(0.0, 0.0));
  if (A.G.kind == GroupKind::Circle && !A.table.empty()) {
    // Label order is (bandlimit, lex), so the frequency range needs a scan.
    int lo = A.table.begin()->first.comps[0];
    int hi = lo;
    for (const auto& [label, mat] : A.table) {
      lo = std::min(lo, label.comps[0]);
      hi = std::max(hi, label.comps[0]);
    }
    std::vector<Cplx> c(static_cast<std::size_t>(hi - lo + 1), Cplx(0.0, 0.0));
    for (const auto& [label, mat] : A.table)
      c[static_cast<std::size_t>(label.comps[0] - lo)] = mat(0, 0);
    parallel_chunks(pts.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t p = begin; p < end; ++p) {
        const double th = pts[p].x[0];
        const Cplx step = std::polar(1.0, th);
        Cplx w = std::polar(1.0, lo * th);
        Cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
          if ((k & 31u) == 0u)
            w = std::polar(1.0, (lo + static_cast<double>(k)) * th);
          acc += c[k] * w;
          w *= step;
        }
        out[p] = acc;
      }
    });
    return out;
  }
  parallel_chunks(pts.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) out[p] = synthesize(A, pts[p]);
  });
  return out;
}

SpectralCoeffs zero_on_set(const SpectralCoeffs& A, const std::vector<IrrepLabel>& lambda) {
  SpectralCoeffs out = A;
  for (const IrrepLabel& label : lambda) out.table.erase(label);
  return out;
}

double trace_norm(const Eigen::MatrixXcd& M) {
  if (M.rows() == 1 && M.cols() == 1) return std::abs(M(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues().sum();
}

double kunze_sup_bound(const SpectralCoeffs& A) {
  double sum = 0.0;
  for (const auto& [label, mat] : A.table)
    sum += static_cast<double>(label.degree()) * trace_norm(mat);
  return sum;
}

Cplx quad_inner(const GridFunction& f, const GridFunction& g, const QuadratureGrid& grid) {
  check_aligned(f, grid);
  check_aligned(g, grid);
  return deterministic_sum(grid.size(), [&](std::size_t i) {
    return f.values[i] * std::conj(g.values[i]) * grid.weight(i);
  });
}

}  // namespace aus
