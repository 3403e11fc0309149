#include "aus/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "aus/wigner.hpp"

namespace aus {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_into(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  return r;
}
}  // namespace

GroupDescriptor GroupDescriptor::parse(const std::string& s) {
  if (s == "circle") return {GroupKind::Circle, 1};
  if (s == "su2") return {GroupKind::SU2, 3};
  if (s.rfind("torus:", 0) == 0) {
    const std::string tail = s.substr(6);
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("unrecognized group: " + s);
    }
    if (used != tail.size() || d < 2)
      throw std::invalid_argument("torus dimension must be an integer >= 2: " + s);
    return {GroupKind::Torus, d};
  }
  throw std::invalid_argument("unrecognized group: " + s);
}

std::string GroupDescriptor::to_string() const {
  switch (kind) {
    case GroupKind::Circle: return "circle";
    case GroupKind::Torus: return "torus:" + std::to_string(dim);
    case GroupKind::SU2: return "su2";
  }
  return "?";
}

int GroupDescriptor::coord_count() const {
  switch (kind) {
    case GroupKind::Circle: return 1;
    case GroupKind::Torus: return dim;
    case GroupKind::SU2: return 3;
  }
  return 0;
}

GroupPoint normalize_point(const GroupDescriptor& G, std::vector<double> coords) {
  if (static_cast<int>(coords.size()) != G.coord_count())
    throw std::invalid_argument("point arity mismatch for " + G.to_string());
  if (G.kind == GroupKind::SU2) {
    coords[0] = wrap_into(coords[0], kTwoPi);
    coords[2] = wrap_into(coords[2], 2.0 * kTwoPi);
    if (coords[1] < 0.0 || coords[1] > std::numbers::pi) {
      double b = wrap_into(coords[1], 2.0 * kTwoPi);
      if (b > std::numbers::pi) b = 2.0 * kTwoPi - b;  // reflect into [0, pi]
      coords[1] = std::min(b, std::numbers::pi);
    }
  } else {
    for (double& c : coords) c = wrap_into(c, kTwoPi);
  }
  return GroupPoint{std::move(coords)};
}

int IrrepLabel::bandlimit() const {
  int b = 0;
  for (int c : comps) b = std::max(b, std::abs(c));
  return b;
}

int IrrepLabel::degree() const { return kind == GroupKind::SU2 ? comps[0] + 1 : 1; }

bool IrrepLabel::operator<(const IrrepLabel& o) const {
  const int ba = bandlimit(), bb = o.bandlimit();
  if (ba != bb) return ba < bb;
  return comps < o.comps;
}

std::string IrrepLabel::to_string() const {
  if (kind == GroupKind::SU2) {
    const int tj = comps[0];
    if (tj % 2 == 0) return "j=" + std::to_string(tj / 2);
    return "j=" + std::to_string(tj) + "/2";
  }
  if (comps.size() == 1) return "n=" + std::to_string(comps[0]);
  std::string s = "n=(";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(comps[i]);
  }
  return s + ")";
}

IrrepLabel IrrepLabel::parse(const GroupDescriptor& G, const std::string& s) {
  auto bad = [&]() { return std::invalid_argument("bad irrep label '" + s + "' for " + G.to_string()); };
  auto to_int = [&](const std::string& piece) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(piece, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != piece.size()) throw bad();
    return v;
  };
  IrrepLabel out;
  out.kind = G.kind;
  if (G.kind == GroupKind::SU2) {
    if (s.rfind("j=", 0) != 0) throw bad();
    const std::string tail = s.substr(2);
    const auto slash = tail.find('/');
    if (slash == std::string::npos) {
      out.comps = {2 * to_int(tail)};
    } else {
      if (tail.substr(slash + 1) != "2") throw bad();
      out.comps = {to_int(tail.substr(0, slash))};
    }
    if (out.comps[0] < 0) throw bad();
    return out;
  }
  if (s.rfind("n=", 0) != 0) throw bad();
  std::string tail = s.substr(2);
  if (G.kind == GroupKind::Circle) {
    out.comps = {to_int(tail)};
    return out;
  }
  if (tail.size() < 2 || tail.front() != '(' || tail.back() != ')') throw bad();
  tail = tail.substr(1, tail.size() - 2);
  std::size_t pos = 0;
  while (pos <= tail.size()) {
    const auto comma = tail.find(',', pos);
    const std::string piece =
        tail.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.comps.push_back(to_int(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(out.comps.size()) != G.dim) throw bad();
  return out;
}

std::size_t QuadratureGrid::size() const {
  std::size_t n = 1;
  for (const auto& ax : axis_nodes) n *= ax.size();
  return n;
}

GroupPoint QuadratureGrid::point(std::size_t idx) const {
  GroupPoint p;
  p.x.resize(axis_nodes.size());
  for (std::size_t a = axis_nodes.size(); a-- > 0;) {
    const std::size_t n = axis_nodes[a].size();
    p.x[a] = axis_nodes[a][idx % n];
    idx /= n;
  }
  return p;
}

double QuadratureGrid::weight(std::size_t idx) const {
  double w = 1.0;
  for (std::size_t a = axis_nodes.size(); a-- > 0;) {
    const std::size_t n = axis_nodes[a].size();
    w *= axis_weights[a][idx % n];
    idx /= n;
  }
  return w;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, Newton on the three-term recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::vector<IrrepLabel> enumerate_irreps(const GroupDescriptor& G, int B) {
  if (B < 0) throw std::invalid_argument("negative bandlimit");
  std::vector<IrrepLabel> out;
  switch (G.kind) {
    case GroupKind::Circle:
      for (int n = -B; n <= B; ++n) out.push_back({G.kind, {n}});
      break;
    case GroupKind::Torus: {
      std::vector<int> v(G.dim, -B);
      while (true) {
        out.push_back({G.kind, v});
        int i = G.dim - 1;
        while (i >= 0 && v[i] == B) v[i--] = -B;
        if (i < 0) break;
        ++v[i];
      }
      break;
    }
    case GroupKind::SU2:
      for (int tj = 0; tj <= 2 * B; ++tj) out.push_back({G.kind, {tj}});
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXcd irrep_matrix(const GroupDescriptor& G, const IrrepLabel& pi, const GroupPoint& g) {
  if (pi.kind != G.kind) throw std::invalid_argument("irrep label does not belong to " + G.to_string());
  if (static_cast<int>(g.x.size()) != G.coord_count())
    throw std::invalid_argument("point arity mismatch for " + G.to_string());
  if (G.kind != GroupKind::SU2) {
    double phase = 0.0;
    for (std::size_t i = 0; i < pi.comps.size(); ++i) phase += pi.comps[i] * g.x[i];
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = std::polar(1.0, phase);
    return m;
  }
  const int tj = pi.comps[0];
  const Eigen::MatrixXd d = wigner_little_d(tj, g.x[1]);
  const int dimn = tj + 1;
  Eigen::MatrixXcd m(dimn, dimn);
  for (int r = 0; r < dimn; ++r) {
    const double mr = (2.0 * r - tj) / 2.0;  // row m
    const std::complex<double> pa = std::polar(1.0, -mr * g.x[0]);
    for (int c = 0; c < dimn; ++c) {
      const double mc = (2.0 * c - tj) / 2.0;  // column m'
      m(r, c) = pa * d(r, c) * std::polar(1.0, -mc * g.x[2]);
    }
  }
  return m;
}

QuadratureGrid haar_grid(const GroupDescriptor& G, int B) {
  if (B < 0) throw std::invalid_argument("negative bandlimit");
  QuadratureGrid grid;
  grid.G = G;
  grid.B = B;
  auto uniform_axis = [](std::size_t n, double period) {
    std::pair<std::vector<double>, std::vector<double>> ax;
    ax.first.resize(n);
    ax.second.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      ax.first[i] = period * static_cast<double>(i) / static_cast<double>(n);
    return ax;
  };
  if (G.kind == GroupKind::SU2) {
    auto alpha = uniform_axis(static_cast<std::size_t>(2 * B + 1), kTwoPi);
    auto gamma = uniform_axis(static_cast<std::size_t>(4 * B + 1), 2.0 * kTwoPi);
    std::vector<double> x, w;
    gauss_legendre(B + 1, x, w);
    std::vector<double> betas(x.size()), bw(w.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      betas[i] = std::acos(x[i]);
      bw[i] = 0.5 * w[i];  // sin(beta) d beta / 2 pulled back to dx/2
    }
    grid.axis_nodes = {alpha.first, betas, gamma.first};
    grid.axis_weights = {alpha.second, bw, gamma.second};
    return grid;
  }
  const int axes = G.coord_count();
  for (int a = 0; a < axes; ++a) {
    auto ax = uniform_axis(static_cast<std::size_t>(2 * B + 1), kTwoPi);
    grid.axis_nodes.push_back(std::move(ax.first));
    grid.axis_weights.push_back(std::move(ax.second));
  }
  return grid;
}

QuadratureGrid uniform_grid(const GroupDescriptor& G, const std::vector<std::size_t>& axis_counts,
                            int declared_B) {
  if (axis_counts.size() != static_cast<std::size_t>(G.coord_count()))
    throw std::invalid_argument("axis count mismatch for " + G.to_string());
  QuadratureGrid grid;
  grid.G = G;
  grid.B = declared_B;
  auto uniform_axis = [](std::size_t n, double period) {
    std::pair<std::vector<double>, std::vector<double>> ax;
    ax.first.resize(n);
    ax.second.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      ax.first[i] = period * static_cast<double>(i) / static_cast<double>(n);
    return ax;
  };
  if (G.kind == GroupKind::SU2) {
    auto alpha = uniform_axis(axis_counts[0], kTwoPi);
    auto gamma = uniform_axis(axis_counts[2], 2.0 * kTwoPi);
    std::vector<double> x, w;
    gauss_legendre(static_cast<int>(axis_counts[1]), x, w);
    std::vector<double> betas(x.size()), bw(w.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      betas[i] = std::acos(x[i]);
      bw[i] = 0.5 * w[i];
    }
    grid.axis_nodes = {alpha.first, betas, gamma.first};
    grid.axis_weights = {alpha.second, bw, gamma.second};
    return grid;
  }
  for (std::size_t a = 0; a < axis_counts.size(); ++a) {
    auto ax = uniform_axis(axis_counts[a], kTwoPi);
    grid.axis_nodes.push_back(std::move(ax.first));
    grid.axis_weights.push_back(std::move(ax.second));
  }
  return grid;
}

double sweep_coordinate(const GroupDescriptor& G, const GroupPoint& g) {
  (void)G;
  double t = g.x[0] / kTwoPi;
  if (t >= 1.0) t -= 1.0;
  if (t < 0.0) t += 1.0;
  return t;
}

double sweep_interval_mu(const GroupDescriptor& G, double a, double b) {
  (void)G;
  if (a < 0.0 || b > 1.0 || a > b) throw std::invalid_argument("band out of range");
  return b - a;
}

GroupPoint sweep_fiber_point(const GroupDescriptor& G, double t) {
  std::vector<double> c(G.coord_count(), 0.0);
  c[0] = kTwoPi * t;
  if (G.kind == GroupKind::SU2) c[1] = std::numbers::pi / 2.0;
  return normalize_point(G, std::move(c));
}

std::vector<GroupPoint> random_points(const GroupDescriptor& G, std::size_t n,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  std::vector<GroupPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GroupPoint g;
    if (G.kind == GroupKind::SU2) {
      const double alpha = kTwoPi * unit();
      const double beta = std::acos(2.0 * unit() - 1.0);
      const double gamma = 2.0 * kTwoPi * unit();
      g.x = {alpha, beta, gamma};
    } else {
      g.x.resize(static_cast<std::size_t>(G.coord_count()));
      for (double& v : g.x) v = kTwoPi * unit();
    }
    pts.push_back(std::move(g));
  }
  return pts;
}

}  // namespace aus
