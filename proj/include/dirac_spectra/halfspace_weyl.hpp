#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "dirac_spectra/clifford.hpp"
#include "dirac_spectra/spectral_region.hpp"

namespace dirac_spectra::weyl {

using Complex = std::complex<double>;

// Quintic and septic smoothstep ramps on [0,1] with their derivatives.
double smoothstep5(double u);
double smoothstep5_d1(double u);
double smoothstep5_d2(double u);
double smoothstep7(double u);
double smoothstep7_d1(double u);
double smoothstep7_d2(double u);

// Cutoff profile c_n: supported on (-4n, -n), identically 1 on [-3n, -2n],
// quintic ramps of width n on both sides. C^2 with max|c'| = 15/(8n) <= 2/n
// and max|c''| = (10/sqrt(3))/n^2 <= 8/n^2.
struct CutoffProfile {
  double n = 1.0;
  double value(double z) const;
  double d1(double z) const;
  double d2(double z) const;
};

// One-dimensional bump factor q: 1 on [-1/2, 1/2], septic ramps to 0 at
// +/- 1, support [-1,1]. C^3. The product bump is b(x) = prod_i q(x_i).
double bump_q(double x);
double bump_q_d1(double x);
double bump_q_d2(double x);

// Test-spinor family on the upper half space {y > 0} with metric
// y^{-2}(dx^2 + dy^2):  Phi_n = b(x) c_n(log y) y^alpha psi0  with
// mu = s + sign*i*k*(1/p - 1/2) and alpha = k/2 - sign*i*mu = k/p - sign*i*s,
// so that p*Re(alpha) = k and the eigen-cancellation term vanishes.
struct WeylConfig {
  int k = 1;
  region::Lp p = region::Lp::from_value(2.0);
  double s = 0.0;
  int sign = 1;
  int n = 1;
  Complex mu;
  Complex alpha;
  CutoffProfile cutoff;
};
WeylConfig make_config(int k, region::Lp p, double s, int sign, int n);

// The three separable terms of (D - mu)Phi_n:
//   gradient term      y^{alpha+1} c_n(log y) sum_i (d_i b) e_i . psi0
//   cutoff term        sign*i * b c_n'(log y) y^alpha psi0
//   cancellation term  (sign*i*alpha - sign*i*k/2 - mu) b c_n y^alpha psi0,
// identically zero under the alpha above. The Clifford factors come from the
// representation of R^{k+1} with e_y in direction 1.
struct ResidualDecomposition {
  WeylConfig config;
  clifford::CliffordRep rep;
  clifford::Spinor psi0;                 // e_y . psi0 = sign*i*psi0
  std::vector<clifford::Spinor> e_psi0;  // e_i . psi0, i = 1..k
  Complex third_coefficient;

  // Exact pointwise evaluations (x has length k, y > 0).
  Eigen::VectorXcd field_at(std::span<const double> x, double y) const;
  Eigen::VectorXcd residual_at(std::span<const double> x, double y) const;
  // (D^2 - mu^2) Phi_n: terms in the bump laplacian, the bump gradient, and
  // c_n'' + (2 alpha - k) c_n' (+ the vanishing c_n coefficient).
  Eigen::VectorXcd squared_residual_at(std::span<const double> x, double y) const;
};
ResidualDecomposition dirac_residual(const WeylConfig& config);

// Weighted Lp norm of a separable spinor field F = g(x) h(z) e^{beta z} psi
// over the half space, with the volume weight e^{-k z} after z = log y:
//   ||F||_p^p = int |g|^p dx * int |h|^p e^{(p*beta - k) z} dz.
// For p = infinity the two factors are suprema. |psi| = 1 assumed.
struct SeparableField {
  std::function<double(std::span<const double>)> xmag;  // |g(x)| on [-1,1]^k
  std::function<double(double)> zmag;                    // |h(z)| on supp c_n
  double z_exponent = 0.0;                               // beta
};
double lp_norm(const WeylConfig& config, const SeparableField& field);

struct WeylRatioResult {
  double ratio = 0.0;   // ||(D - mu) Phi_n||_p / ||Phi_n||_p, exact quadrature
  double bound = 0.0;   // analytic bound assembled from the frozen profiles
  double bound_c1 = 0.0;  // gradient-term constant (decays like e^{-n})
  double bound_c2 = 0.0;  // cutoff-term constant (decays like 1/n)
};
WeylRatioResult weyl_ratio(const WeylConfig& config);

// Same contract for the squared operator; residual terms in d_i^2 b, d_i b,
// c_n'' and (2 alpha - k) c_n'. The c_n coefficient
// alpha(alpha-1) - (k-1)alpha + k^2/4 + mu^2 vanishes identically.
WeylRatioResult weyl_ratio_squared(const WeylConfig& config);
Complex squared_cn_coefficient(const WeylConfig& config);

// int_0^1 (1-r^2)^(-k-1+k p/2) r^k dr with endpoint-refinement divergence
// detection; finite exactly when the exponent exceeds -1, i.e. p > 2.
struct BallIntegral {
  bool divergent = false;
  double value = 0.0;        // converged value, or last partial if divergent
  double exponent = 0.0;     // -k-1+k*p/2
  double last_change = 0.0;  // relative change of the final refinement
  int growth_streak = 0;     // trailing refinements growing by > 5%
};
BallIntegral ball_harmonic_integral(int k, double p, int refinement = 12);

struct CutoffCertificate {
  double max_d1 = 0.0;
  double max_d2 = 0.0;
  double d1_bound = 0.0;  // 2/n
  double d2_bound = 0.0;  // 8/n^2
  bool ok() const { return max_d1 <= d1_bound && max_d2 <= d2_bound; }
};
CutoffCertificate certify_cutoff(int n, int grid_points = 10000);

}  // namespace dirac_spectra::weyl
