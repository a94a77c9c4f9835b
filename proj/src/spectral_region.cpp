#include "dirac_spectra/spectral_region.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dirac_spectra::region {

Lp Lp::from_value(double p) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("Lp: exponent must be a finite number >= 1 (use Lp::infinity())");
  return Lp(1.0 / p, false);
}

Lp Lp::infinity() { return Lp(0.0, true); }

Lp Lp::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity")
    return infinity();
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("Lp: cannot parse '" + text + "'");
  return from_value(v);
}

Lp Lp::dual() const {
  if (infinite_) return from_value(1.0);
  if (inv_ == 1.0) return infinity();
  return Lp(1.0 - inv_, false);
}

std::string Lp::str() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << 1.0 / inv_;
  return os.str();
}

const char* tag_name(RegionCase::Tag tag) {
  switch (tag) {
    case RegionCase::Tag::L: return "L";
    case RegionCase::Tag::M: return "M";
    default: return "R";
  }
}

double SpectralRegion::threshold() const {
  return c * k * std::abs(p.inv() - 0.5);
}

double SpectralRegion::imag_kappa(Complex mu) const {
  const Complex u = mu * mu - lambda0 * lambda0;
  // |Im sqrt(u)|^2 = (|u| - Re u)/2.
  return std::sqrt(std::max(0.0, 0.5 * (std::abs(u) - u.real())));
}

bool SpectralRegion::contains(Complex mu, double tol) const {
  const double thr = std::max(threshold() + tol, 0.0);
  const Complex u = mu * mu - lambda0 * lambda0;
  return std::abs(u) - u.real() <= 2.0 * thr * thr;
}

bool SpectralRegion::d_squared_contains(Complex w, double tol) const {
  // Deliberately the parabola-geometry route, independent of contains():
  // inside iff Re(w - lambda0^2) >= (Im w / (2 thr))^2 - thr^2.
  const double thr = std::max(threshold() + tol, 0.0);
  const Complex u = w - lambda0 * lambda0;
  if (thr == 0.0) {
    // degenerate ray [lambda0^2, inf)
    const double slack = std::max(tol, 0.0) * (1.0 + std::abs(u));
    return std::abs(u.imag()) <= slack && u.real() >= -slack;
  }
  const double half = u.imag() / (2.0 * thr);
  return u.real() >= half * half - thr * thr;
}

RegionCase SpectralRegion::classify() const {
  const double t = threshold();
  RegionCase out;
  if (lambda0 == 0.0) {
    out.tag = RegionCase::Tag::L;
    out.landmark = t;
  } else if (lambda0 > t) {
    out.tag = RegionCase::Tag::R;
    out.landmark = std::sqrt(lambda0 * lambda0 - t * t);
  } else {
    out.tag = RegionCase::Tag::M;
    out.landmark = std::sqrt(std::max(0.0, t * t - lambda0 * lambda0));
  }
  return out;
}

SpectralRegion make_region(double c, int k, double lambda0, Lp p) {
  if (!(c >= 0.0)) throw std::invalid_argument("make_region: c >= 0 required");
  if (k < 1) throw std::invalid_argument("make_region: k >= 1 required");
  if (!(lambda0 >= 0.0))
    throw std::invalid_argument("make_region: lambda0 >= 0 required");
  return SpectralRegion{c, k, lambda0, p};
}

std::vector<Complex> boundary(const SpectralRegion& region, double s_min,
                              double s_max, int samples) {
  if (samples < 2) throw std::invalid_argument("boundary: samples >= 2 required");
  if (!(s_min < s_max)) throw std::invalid_argument("boundary: s_min < s_max required");
  const double t = region.threshold();
  const double l2 = region.lambda0 * region.lambda0;
  std::vector<Complex> out;
  out.reserve(4 * static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double s = s_min + (s_max - s_min) * i / (samples - 1);
    const Complex kappa(s, t);
    const Complex mu = std::sqrt(l2 + kappa * kappa);
    out.push_back(mu);
    out.push_back(-mu);
    out.push_back(std::conj(mu));
    out.push_back(-std::conj(mu));
  }
  return out;
}

std::vector<Complex> d_squared_boundary(const SpectralRegion& region,
                                        std::span<const double> s_grid) {
  const double t = region.threshold();
  const double vertex = region.lambda0 * region.lambda0 - t * t;
  std::vector<Complex> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) out.emplace_back(vertex + s * s, 2.0 * s * t);
  return out;
}

std::vector<Complex> laplacian_boundary(int k, Lp p,
                                        std::span<const double> s_grid) {
  const double ip = p.inv();
  const double vertex = k * k * ip * (1.0 - ip);
  const double slope = k * (0.5 - ip);
  std::vector<Complex> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) out.emplace_back(vertex + s * s, 2.0 * s * slope);
  return out;
}

double laplacian_vertex_shift(int k, Lp p) {
  const double ip = p.inv();
  const double lap_vertex = k * k * ip * (1.0 - ip);
  const double dsq_vertex = -(k * (ip - 0.5)) * (k * (ip - 0.5));
  return lap_vertex - dsq_vertex;
}

SymmetryReport symmetry_transforms(const SpectralRegion& region, Complex mu,
                                   double tol) {
  SymmetryReport rep;
  rep.member = region.contains(mu, tol);
  rep.negation_ok = rep.member == region.contains(-mu, tol);
  rep.conjugation_ok = rep.member == region.contains(std::conj(mu), tol);
  SpectralRegion dual = region;
  dual.p = region.p.dual();
  rep.dual_exponent_ok = rep.member == dual.contains(mu, tol);
  const bool either = rep.member || region.contains(-mu, tol);
  rep.squared_ok = either == region.d_squared_contains(mu * mu, tol);
  return rep;
}

nlohmann::json p_to_json(Lp p) {
  if (p.is_infinity()) return "inf";
  return 1.0 / p.inv();
}

nlohmann::json region_to_json(const SpectralRegion& region,
                              std::span<const Complex> boundary_points) {
  const RegionCase rc = region.classify();
  nlohmann::json j;
  j["c"] = region.c;
  j["k"] = region.k;
  j["lambda0"] = region.lambda0;
  j["p"] = p_to_json(region.p);
  j["case"] = tag_name(rc.tag);
  j["landmark"] = rc.landmark;
  j["invertible"] = rc.invertible();
  nlohmann::json pts = nlohmann::json::array();
  for (const Complex& z : boundary_points)
    pts.push_back({z.real(), z.imag()});
  j["boundary"] = std::move(pts);
  return j;
}

}  // namespace dirac_spectra::region
