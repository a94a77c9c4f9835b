#include "dirac_spectra/svg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

namespace dirac_spectra::svg {

namespace {

using region::Complex;
using region::RegionCase;
using region::SpectralRegion;

constexpr double kPanelW = 340.0;
constexpr double kPanelH = 300.0;
constexpr double kMargin = 36.0;

std::string fmt(double v) {
  char buf[48];
  if (std::abs(v) < 1e-12) v = 0.0;  // avoid "-0"
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Mapper {
  double x_range, y_range;
  double sx(double re) const {
    return kMargin + (re + x_range) / (2.0 * x_range) * (kPanelW - 2.0 * kMargin);
  }
  double sy(double im) const {
    return kPanelH - kMargin -
           (im + y_range) / (2.0 * y_range) * (kPanelH - 2.0 * kMargin);
  }
};

// Upper boundary of the connected cases: mu(s) for s >= 0 and the mirrored
// branch -conj(mu(-s)) for s < 0, a continuous curve through the landmark.
Complex upper_boundary_point(const SpectralRegion& r, double s) {
  const double t = r.threshold();
  const double l2 = r.lambda0 * r.lambda0;
  const double sa = std::abs(s);
  const Complex mu = std::sqrt(Complex(l2) + Complex(sa, t) * Complex(sa, t));
  return s >= 0.0 ? mu : -std::conj(mu);
}

// Right branch of the two-component case, crossing the real axis at x_R.
Complex right_branch_point(const SpectralRegion& r, double s) {
  const double t = r.threshold();
  const double l2 = r.lambda0 * r.lambda0;
  return std::sqrt(Complex(l2) + Complex(s, t) * Complex(s, t));
}

std::string path_from(const std::vector<Complex>& pts, const Mapper& map,
                      bool close) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d += (i == 0 ? "M" : "L");
    d += fmt(map.sx(pts[i].real())) + "," + fmt(map.sy(pts[i].imag()));
  }
  if (close) d += "Z";
  return d;
}

void append_axes(std::string& out, const Mapper& map) {
  out += "<line class=\"axis\" x1=\"" + fmt(map.sx(-map.x_range)) + "\" y1=\"" +
         fmt(map.sy(0)) + "\" x2=\"" + fmt(map.sx(map.x_range)) + "\" y2=\"" +
         fmt(map.sy(0)) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out += "<line class=\"axis\" x1=\"" + fmt(map.sx(0)) + "\" y1=\"" +
         fmt(map.sy(-map.y_range)) + "\" x2=\"" + fmt(map.sx(0)) + "\" y2=\"" +
         fmt(map.sy(map.y_range)) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out += "<text x=\"" + fmt(map.sx(map.x_range) - 28) + "\" y=\"" +
         fmt(map.sy(0) - 6) + "\" font-size=\"11\">Re &#956;</text>\n";
  out += "<text x=\"" + fmt(map.sx(0) + 5) + "\" y=\"" +
         fmt(map.sy(map.y_range) + 12) + "\" font-size=\"11\">Im &#956;</text>\n";
}

void append_dotted_threshold(std::string& out, const Mapper& map, double t) {
  for (double sign : {1.0, -1.0}) {
    out += "<line class=\"asymptote\" x1=\"" + fmt(map.sx(-map.x_range)) +
           "\" y1=\"" + fmt(map.sy(sign * t)) + "\" x2=\"" +
           fmt(map.sx(map.x_range)) + "\" y2=\"" + fmt(map.sy(sign * t)) +
           "\" stroke=\"black\" stroke-width=\"0.7\" stroke-dasharray=\"2,3\"/>\n";
  }
}

void append_landmark(std::string& out, const Mapper& map, const SpectralRegion& r) {
  const RegionCase rc = r.classify();
  double px = 0.0, py = 0.0;
  std::string label;
  switch (rc.tag) {
    case RegionCase::Tag::L:
      px = 0.0;
      py = rc.landmark;
      label = "x_L = " + fmt(rc.landmark);
      break;
    case RegionCase::Tag::M:
      px = 0.0;
      py = rc.landmark;
      label = "x_M = " + fmt(rc.landmark);
      break;
    default:
      px = rc.landmark;
      py = 0.0;
      label = "x_R = " + fmt(rc.landmark);
      break;
  }
  out += "<circle class=\"landmark\" cx=\"" + fmt(map.sx(px)) + "\" cy=\"" +
         fmt(map.sy(py)) + "\" r=\"2.5\" fill=\"black\"/>\n";
  out += "<text class=\"landmark-label\" x=\"" + fmt(map.sx(px) + 6) +
         "\" y=\"" + fmt(map.sy(py) - 6) + "\" font-size=\"10\">" +
         xml_escape(label) + "</text>\n";
}

void append_panel(std::string& out, const SpectralRegion& r, double s_max,
                  int samples, int index) {
  const double t = r.threshold();
  const RegionCase rc = r.classify();

  std::vector<Complex> upper, right;
  double max_re = 1.0, max_im = 1.0;
  for (int i = 0; i < samples; ++i) {
    const double s = -s_max + 2.0 * s_max * i / (samples - 1);
    if (rc.tag == RegionCase::Tag::R) {
      right.push_back(right_branch_point(r, s));
      max_re = std::max(max_re, std::abs(right.back().real()));
      max_im = std::max(max_im, std::abs(right.back().imag()));
    } else {
      upper.push_back(upper_boundary_point(r, s));
      max_re = std::max(max_re, std::abs(upper.back().real()));
      max_im = std::max(max_im, std::abs(upper.back().imag()));
    }
  }
  Mapper map{1.04 * max_re, std::max(1.9 * max_im, 0.8 * max_re)};

  out += "<g class=\"panel\" id=\"panel-" + std::to_string(index) +
         "\" transform=\"translate(" + fmt(index * kPanelW) + ",0)\">\n";
  append_axes(out, map);

  if (t == 0.0) {
    // Degenerate rays on the real axis.
    for (double dir : {1.0, -1.0}) {
      out += "<path class=\"boundary\" d=\"M" + fmt(map.sx(dir * r.lambda0)) +
             "," + fmt(map.sy(0)) + "L" + fmt(map.sx(dir * map.x_range)) + "," +
             fmt(map.sy(0)) + "\" stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>\n";
    }
  } else if (rc.tag == RegionCase::Tag::R) {
    append_dotted_threshold(out, map, t);
    for (double mirror : {1.0, -1.0}) {
      std::vector<Complex> branch;
      for (const Complex& z : right) branch.push_back(mirror * z);
      std::vector<Complex> fill = branch;
      const double edge = mirror * map.x_range;
      fill.emplace_back(edge, branch.back().imag());
      fill.emplace_back(edge, branch.front().imag());
      out += "<path class=\"region\" d=\"" + path_from(fill, map, true) +
             "\" fill=\"#808080\" fill-opacity=\"0.3\" stroke=\"none\"/>\n";
      out += "<path class=\"boundary\" d=\"" + path_from(branch, map, false) +
             "\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    }
  } else {
    if (rc.tag == RegionCase::Tag::M) append_dotted_threshold(out, map, t);
    std::vector<Complex> lower;
    for (auto it = upper.rbegin(); it != upper.rend(); ++it)
      lower.push_back(std::conj(*it));
    std::vector<Complex> fill = upper;
    fill.insert(fill.end(), lower.begin(), lower.end());
    out += "<path class=\"region\" d=\"" + path_from(fill, map, true) +
           "\" fill=\"#808080\" fill-opacity=\"0.3\" stroke=\"none\"/>\n";
    out += "<path class=\"boundary\" d=\"" + path_from(upper, map, false) +
           "\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    out += "<path class=\"boundary\" d=\"" + path_from(lower, map, false) +
           "\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"/>\n";
  }
  append_landmark(out, map, r);
  out += "</g>\n";
}

std::string svg_open(int panel_count, const ConfigEcho& config) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(panel_count * kPanelW) + "\" height=\"" + fmt(kPanelH) +
         "\" viewBox=\"0 0 " + fmt(panel_count * kPanelW) + " " + fmt(kPanelH) +
         "\">\n";
  out += "<desc>";
  for (const auto& [key, value] : config)
    out += xml_escape(key) + "=" + xml_escape(value) + "\n";
  out += "</desc>\n";
  return out;
}

}  // namespace

std::string render_region_panels(const std::vector<SpectralRegion>& regions,
                                 double s_max, int samples,
                                 const ConfigEcho& config) {
  std::string out = svg_open(static_cast<int>(regions.size()), config);
  for (std::size_t i = 0; i < regions.size(); ++i)
    append_panel(out, regions[i], s_max, samples, static_cast<int>(i));
  out += "</svg>\n";
  return out;
}

std::string render_laplacian_compare(const SpectralRegion& r, double s_max,
                                     int samples, const ConfigEcho& config) {
  std::vector<double> grid(samples);
  for (int i = 0; i < samples; ++i)
    grid[i] = -s_max + 2.0 * s_max * i / (samples - 1);
  const std::vector<Complex> dsq = region::d_squared_boundary(r, grid);
  const std::vector<Complex> lap = region::laplacian_boundary(r.k, r.p, grid);

  double max_re = 1.0, max_im = 1.0;
  for (const auto& z : dsq) {
    max_re = std::max(max_re, std::abs(z.real()));
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  for (const auto& z : lap) {
    max_re = std::max(max_re, std::abs(z.real()));
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  Mapper map{1.05 * max_re, std::max(1.4 * max_im, 1e-6)};

  std::string out = svg_open(1, config);
  out += "<g class=\"panel\" id=\"panel-0\">\n";
  append_axes(out, map);
  out += "<path class=\"boundary dsq\" d=\"" + path_from(dsq, map, false) +
         "\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\"/>\n";
  out += "<path class=\"boundary laplacian\" d=\"" + path_from(lap, map, false) +
         "\" stroke=\"#B22222\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\" fill=\"none\"/>\n";
  const double shift = region::laplacian_vertex_shift(r.k, r.p);
  out += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin - 14) +
         "\" font-size=\"11\">vertex shift = " + fmt(shift) + " (= k^2/4 at lambda0=0, c=1)</text>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace dirac_spectra::svg
