#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace dirac_spectra::region {

using Complex = std::complex<double>;

// Lebesgue exponent p in [1, inf]. Infinity is a distinct symbolic value;
// all arithmetic goes through 1/p, which is 0 there.
class Lp {
 public:
  static Lp from_value(double p);
  static Lp infinity();
  static Lp parse(const std::string& text);  // "inf" or a number >= 1

  double inv() const { return inv_; }
  bool is_infinity() const { return infinite_; }
  Lp dual() const;  // 1/p + 1/p* = 1
  std::string str() const;

 private:
  Lp(double inv, bool infinite) : inv_(inv), infinite_(infinite) {}
  double inv_ = 0.5;
  bool infinite_ = false;
};

// Shape classification of the region, following the three qualitative cases:
//   L: lambda0 = 0, a horizontal strip; landmark = half-width on the
//      imaginary axis.
//   M: 0 < lambda0 <= threshold, connected region pinching on the imaginary
//      axis; landmark = pinch height (0 in the degenerate lambda0 =
//      threshold case).
//   R: lambda0 > threshold, two components around the real axis; landmark =
//      real vertex. The shifted operator is invertible at 0 exactly here.
struct RegionCase {
  enum class Tag { L, M, R };
  Tag tag = Tag::L;
  double landmark = 0.0;
  bool invertible() const { return tag == Tag::R; }
};
const char* tag_name(RegionCase::Tag tag);

// { mu : mu^2 = lambda0^2 + kappa^2, |Im kappa| <= c*k*|1/p - 1/2| },
// a closed set, symmetric under mu -> -mu and mu -> conj(mu).
struct SpectralRegion {
  double c = 1.0;       // curvature scale, >= 0
  int k = 1;            // sphere dimension; hyperbolic factor is k+1
  double lambda0 = 0.0; // lowest |eigenvalue| of the closed-factor operator
  Lp p = Lp::from_value(2.0);

  double threshold() const;  // c*k*|1/p - 1/2|

  // |Im sqrt(mu^2 - lambda0^2)|; branch-independent since the two roots are
  // negatives of each other.
  double imag_kappa(Complex mu) const;

  // Membership with a threshold slack `tol` (may be negative to shrink the
  // region; the effective threshold is clamped at 0).
  bool contains(Complex mu, double tol = 1e-9) const;

  // Membership of w in the squared-operator region (the closed parabolic
  // region with vertex lambda0^2 - threshold()^2), tested through the
  // parabola inequality |w - lambda0^2| <= Re(w - lambda0^2) + 2 t^2 rather
  // than through contains().
  bool d_squared_contains(Complex w, double tol = 1e-9) const;

  RegionCase classify() const;
};

SpectralRegion make_region(double c, int k, double lambda0, Lp p);

// Boundary samples: for each s on the uniform grid, both square roots of
// lambda0^2 + (s + i*threshold)^2 and their conjugates, in that order.
// Requires samples >= 2 and s_min < s_max.
std::vector<Complex> boundary(const SpectralRegion& region, double s_min,
                              double s_max, int samples);

// Boundary curve of the squared-operator region:
//   s -> lambda0^2 - t^2 + s^2 + 2*i*s*t,  t = threshold.
std::vector<Complex> d_squared_boundary(const SpectralRegion& region,
                                        std::span<const double> s_grid);

// Boundary parabola of the function Laplacian at unit curvature:
//   s -> k^2 (1/p)(1 - 1/p) + s^2 + 2*i*s*k*(1/2 - 1/p).
std::vector<Complex> laplacian_boundary(int k, Lp p,
                                        std::span<const double> s_grid);

// Real shift between the Laplacian parabola vertex and the squared-operator
// vertex at lambda0 = 0, c = 1; equals k^2/4 for every p.
double laplacian_vertex_shift(int k, Lp p);

struct SymmetryReport {
  bool member = false;           // contains(mu)
  bool negation_ok = false;      // contains(mu) == contains(-mu)
  bool conjugation_ok = false;   // contains(mu) == contains(conj mu)
  bool dual_exponent_ok = false; // same membership for the dual exponent
  bool squared_ok = false;       // membership of mu^2 in the squared region
  bool all_ok() const {
    return negation_ok && conjugation_ok && dual_exponent_ok && squared_ok;
  }
};
SymmetryReport symmetry_transforms(const SpectralRegion& region, Complex mu,
                                   double tol = 1e-9);

nlohmann::json p_to_json(Lp p);
nlohmann::json region_to_json(const SpectralRegion& region,
                              std::span<const Complex> boundary_points);

}  // namespace dirac_spectra::region
