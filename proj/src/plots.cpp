#include "aus/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace aus {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool in_cores(const std::vector<std::pair<double, double>>& cores, double t) {
  for (const auto& [a, b] : cores)
    if (t >= a && t <= b) return true;
  return false;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct Curve {
  std::vector<double> t, fm, f0;
  std::vector<bool> in_omega;
};

Curve sample_curve(const SystemBundle& bundle, const StageRecord& rec) {
  Curve c;
  const GroupDescriptor& G = bundle.params.G;
  std::vector<GroupPoint> pts;
  pts.reserve(kPlotSamples);
  for (std::size_t i = 0; i < kPlotSamples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(kPlotSamples);
    c.t.push_back(t);
    pts.push_back(sweep_fiber_point(G, t));
  }
  const std::vector<Cplx> fmv = synthesize_at_points(rec.coeffs, pts);
  const std::vector<Cplx> f0v = synthesize_at_points(bundle.params.f0, pts);
  for (std::size_t i = 0; i < kPlotSamples; ++i) {
    c.fm.push_back(std::abs(fmv[i]));
    c.f0.push_back(std::abs(f0v[i]));
    c.in_omega.push_back(in_cores(rec.omega, c.t[i]));
  }
  return c;
}

std::string curve_csv(const Curve& c) {
  std::string body = "t,abs_fm,abs_f0,in_omega\n";
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    body += num(c.t[i]);
    body += ',';
    body += num(c.fm[i]);
    body += ',';
    body += num(c.f0[i]);
    body += ',';
    body += c.in_omega[i] ? '1' : '0';
    body += '\n';
  }
  return body;
}

std::string spectrum_csv(const StageRecord& rec) {
  std::string body = "label,frobenius\n";
  for (const auto& [label, mat] : rec.coeffs.table) {
    body += label.to_string();
    body += ',';
    body += num(mat.norm());
    body += '\n';
  }
  return body;
}

// Single-stage band plot: the admissible band |f0| +- eps shaded, the cores
// marked along the baseline, |f_m| drawn on top.
std::string band_svg(const Curve& c, const StageRecord& rec, double eps) {
  constexpr double W = 960.0, H = 480.0, L = 60.0, R = 20.0, T = 20.0, B = 40.0;
  double ymax = 0.0;
  for (std::size_t i = 0; i < c.t.size(); ++i)
    ymax = std::max({ymax, c.fm[i], c.f0[i] + eps});
  ymax *= 1.05;
  if (ymax <= 0.0) ymax = 1.0;
  const auto px = [&](double t) { return L + t * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y / ymax) * (H - T - B); };
  const auto pt = [&](double t, double y) {
    return num(px(t)) + "," + num(py(y)) + " ";
  };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"480\" "
      "viewBox=\"0 0 960 480\">\n"
      "<rect width=\"960\" height=\"480\" fill=\"#ffffff\"/>\n";
  // Band polygon: upper edge forward, lower edge backward.
  svg += "<polygon fill=\"#d7e3f4\" stroke=\"none\" points=\"";
  for (std::size_t i = 0; i < c.t.size(); ++i) svg += pt(c.t[i], c.f0[i] + eps);
  for (std::size_t i = c.t.size(); i-- > 0;)
    svg += pt(c.t[i], std::max(c.f0[i] - eps, 0.0));
  svg += "\"/>\n";
  // Core strips on the baseline.
  for (const auto& [a, b] : rec.omega) {
    svg += "<rect x=\"" + num(px(a)) + "\" y=\"" + num(H - B) + "\" width=\"" +
           num(px(b) - px(a)) + "\" height=\"8\" fill=\"#3a7d44\"/>\n";
  }
  // |f0| reference and |f_m|.
  svg += "<polyline fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < c.t.size(); ++i) svg += pt(c.t[i], c.f0[i]);
  svg += "\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < c.t.size(); ++i) svg += pt(c.t[i], c.fm[i]);
  svg += "\"/>\n";
  // Axes and labels.
  svg += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) +
         "\" y2=\"" + num(H - B) + "\" stroke=\"#000000\"/>\n";
  svg += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" +
         num(H - B) + "\" stroke=\"#000000\"/>\n";
  svg += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 10.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">sweep "
         "coordinate t</text>\n";
  svg += "<text x=\"" + num(L) + "\" y=\"" + num(T - 5.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\">stage " + std::to_string(rec.m) +
         ": |f_m| inside |f0| &#177; " + num(eps) + " (cores marked)</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::vector<std::string> emit_plots(const SystemBundle& bundle, const std::string& out_dir) {
  std::vector<std::string> written;
  if (bundle.records.empty()) return written;
  std::filesystem::create_directories(out_dir);
  for (const StageRecord& rec : bundle.records) {
    const double eps = bundle.params.epsilons[static_cast<std::size_t>(rec.m - 1)];
    const Curve c = sample_curve(bundle, rec);
    const std::string stem = out_dir + "/stage_" + std::to_string(rec.m);
    write_text(stem + "_curve.csv", curve_csv(c));
    written.push_back(stem + "_curve.csv");
    write_text(stem + "_band.svg", band_svg(c, rec, eps));
    written.push_back(stem + "_band.svg");
    write_text(stem + "_spectrum.csv", spectrum_csv(rec));
    written.push_back(stem + "_spectrum.csv");
  }
  return written;
}

}  // namespace aus
