#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dirac_spectra/spectral_region.hpp"

namespace dirac_spectra::svg {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// One shaded panel per region: axes, region fill, boundary curves, dotted
// threshold asymptotes and the landmark annotation (x_L / x_M / x_R).
// p = 2 degenerates to stroked ray segments.
std::string render_region_panels(const std::vector<region::SpectralRegion>& regions,
                                 double s_max, int samples,
                                 const ConfigEcho& config);

// Squared-operator parabola against the function-Laplacian parabola at unit
// curvature, with the real vertex shift annotated.
std::string render_laplacian_compare(const region::SpectralRegion& region,
                                     double s_max, int samples,
                                     const ConfigEcho& config);

}  // namespace dirac_spectra::svg
