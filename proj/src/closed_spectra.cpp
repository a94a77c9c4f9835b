#include "dirac_spectra/closed_spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirac_spectra::spectra {

SpinStructure parse_structure(const std::string& name) {
  if (name == "trivial") return SpinStructure::trivial;
  if (name == "nontrivial") return SpinStructure::nontrivial;
  throw std::invalid_argument("unknown spin structure '" + name + "'");
}

const char* structure_name(SpinStructure s) {
  return s == SpinStructure::trivial ? "trivial" : "nontrivial";
}

ClosedSpectrum point_spectrum() {
  ClosedSpectrum out;
  out.descriptor = {{"type", "point"}};
  out.eigenvalues = {0.0};
  out.lambda0 = 0.0;
  return out;
}

ClosedSpectrum circle_spectrum(double L, SpinStructure structure, int cutoff) {
  if (!(L > 0.0)) throw std::invalid_argument("circle_spectrum: L > 0 required");
  if (cutoff < 1) throw std::invalid_argument("circle_spectrum: cutoff >= 1");
  const double unit = 2.0 * std::numbers::pi / L;
  ClosedSpectrum out;
  out.descriptor = {{"type", "circle"}, {"L", L}, {"structure", structure_name(structure)}};
  // Symmetric truncation of the mode window in both structures.
  if (structure == SpinStructure::trivial) {
    for (int m = -cutoff; m <= cutoff; ++m) out.eigenvalues.push_back(unit * m);
  } else {
    for (int m = 0; m < cutoff; ++m) {
      out.eigenvalues.push_back(unit * (m + 0.5));
      out.eigenvalues.push_back(-unit * (m + 0.5));
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.lambda0 = std::abs(out.eigenvalues.front());
  for (double e : out.eigenvalues) out.lambda0 = std::min(out.lambda0, std::abs(e));
  return out;
}

ClosedSpectrum torus_spectrum(std::span<const double> lengths,
                              std::span<const SpinStructure> structures,
                              int cutoff) {
  if (lengths.empty() || lengths.size() != structures.size())
    throw std::invalid_argument("torus_spectrum: need matching lengths/structures");
  for (double L : lengths)
    if (!(L > 0.0)) throw std::invalid_argument("torus_spectrum: lengths > 0");
  const std::size_t d = lengths.size();
  std::vector<int> idx(d, -cutoff);
  ClosedSpectrum out;
  nlohmann::json jl = nlohmann::json::array(), js = nlohmann::json::array();
  for (std::size_t i = 0; i < d; ++i) {
    jl.push_back(lengths[i]);
    js.push_back(structure_name(structures[i]));
  }
  out.descriptor = {{"type", "torus"}, {"lengths", jl}, {"structures", js}};
  while (true) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double delta = structures[i] == SpinStructure::trivial ? 0.0 : 0.5;
      const double component = (idx[i] + delta) / lengths[i];
      norm2 += component * component;
    }
    const double freq = 2.0 * std::numbers::pi * std::sqrt(norm2);
    out.eigenvalues.push_back(freq);
    if (freq != 0.0) out.eigenvalues.push_back(-freq);
    std::size_t pos = 0;
    while (pos < d && ++idx[pos] > cutoff) idx[pos++] = -cutoff;
    if (pos == d) break;
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.lambda0 = std::abs(out.eigenvalues.front());
  for (double e : out.eigenvalues) out.lambda0 = std::min(out.lambda0, std::abs(e));
  return out;
}

ClosedSpectrum from_descriptor(const nlohmann::json& descriptor) {
  const std::string type = descriptor.at("type").get<std::string>();
  if (type == "point") return point_spectrum();
  if (type == "circle") {
    const double L = descriptor.at("L").get<double>();
    const SpinStructure s = parse_structure(descriptor.at("structure").get<std::string>());
    const int cutoff = descriptor.value("cutoff", 64);
    return circle_spectrum(L, s, cutoff);
  }
  if (type == "torus") {
    std::vector<double> lengths = descriptor.at("lengths").get<std::vector<double>>();
    std::vector<SpinStructure> structures;
    for (const auto& item : descriptor.at("structures"))
      structures.push_back(parse_structure(item.get<std::string>()));
    const int cutoff = descriptor.value("cutoff", 16);
    return torus_spectrum(lengths, structures, cutoff);
  }
  throw std::invalid_argument("unknown factor type '" + type + "'");
}

std::vector<double> circle_discretization_abs_eigenvalues(double L,
                                                          SpinStructure structure,
                                                          int points, int count) {
  if (points < 8) throw std::invalid_argument("discretization: points >= 8");
  if (count < 1 || count > points)
    throw std::invalid_argument("discretization: bad count");
  const double h = L / points;
  const double scale = 1.0 / (h * h);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(points, points);
  for (int i = 0; i < points; ++i) {
    m(i, i) = 2.0 * scale;
    m(i, (i + 1) % points) = -scale;
    m((i + 1) % points, i) = -scale;
  }
  if (structure == SpinStructure::nontrivial) {
    // Antiperiodic wrap flips the corner sign.
    m(0, points - 1) = scale;
    m(points - 1, 0) = scale;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("discretization: eigensolver failed");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i)));
  return out;
}

RealRays product_l2_spectrum(double lambda0) {
  if (!(lambda0 >= 0.0))
    throw std::invalid_argument("product_l2_spectrum: lambda0 >= 0 required");
  return RealRays{lambda0};
}

region::SpectralRegion make_region(const ClosedSpectrum& factor, double c,
                                   int k, region::Lp p) {
  return region::make_region(c, k, factor.lambda0, p);
}

}  // namespace dirac_spectra::spectra
