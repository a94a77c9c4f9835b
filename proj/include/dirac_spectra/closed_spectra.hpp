#pragma once

#include <span>
#include <string>
#include <vector>

#include "dirac_spectra/spectral_region.hpp"
#include "json.hpp"

namespace dirac_spectra::spectra {

enum class SpinStructure { trivial, nontrivial };
SpinStructure parse_structure(const std::string& name);
const char* structure_name(SpinStructure s);

// Closed-form first-order spectrum of a simple closed factor, truncated to a
// finite symmetric window of modes.
struct ClosedSpectrum {
  nlohmann::json descriptor;
  std::vector<double> eigenvalues;  // ascending, symmetric about 0
  double lambda0 = 0.0;             // min |eigenvalue|
};

ClosedSpectrum point_spectrum();

// Circle of length L: eigenvalues (2 pi / L)(m + delta), |m| <= cutoff,
// delta = 0 for the trivial structure and 1/2 for the nontrivial one.
ClosedSpectrum circle_spectrum(double L, SpinStructure structure, int cutoff = 64);

// Rectangular flat torus: +/- 2 pi |((m_1+d_1)/L_1, ..., (m_d+d_d)/L_d)|
// over |m_i| <= cutoff.
ClosedSpectrum torus_spectrum(std::span<const double> lengths,
                              std::span<const SpinStructure> structures,
                              int cutoff = 16);

// {"type":"point"} | {"type":"circle","L":..,"structure":"trivial|nontrivial"}
// | {"type":"torus","lengths":[..],"structures":[..]}
ClosedSpectrum from_descriptor(const nlohmann::json& descriptor);

// Discretization oracle: the `count` smallest |eigenvalue| values of the
// circle operator, obtained from the second-difference discretization of its
// square on `points` grid points (periodic / antiperiodic wrap) followed by a
// square root. Eigenvalue error is O(h^2).
std::vector<double> circle_discretization_abs_eigenvalues(double L,
                                                          SpinStructure structure,
                                                          int points, int count);

// L^2 spectrum of the product operator: the pair of rays
// (-inf, -lambda0] u [lambda0, inf) (the whole line for lambda0 = 0).
struct RealRays {
  double lambda0 = 0.0;
  bool whole_line() const { return lambda0 == 0.0; }
  bool contains(double x, double tol = 0.0) const {
    return std::abs(x) >= lambda0 - tol;
  }
};
RealRays product_l2_spectrum(double lambda0);

region::SpectralRegion make_region(const ClosedSpectrum& factor, double c,
                                   int k, region::Lp p);

}  // namespace dirac_spectra::spectra
