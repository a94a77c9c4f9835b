#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace dirac_spectra::modes {

using Complex = std::complex<double>;
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;

// Curvature-scaled hyperbolic functions: sinh_c(r) = sinh(c r)/c and
// coth_c(r) = c coth(c r) for c != 0, degenerating to r and 1/r at c = 0.
// Require r > 0.
double sinh_c(double r, double c);
double coth_c(double r, double c);

// h(t) = (log t - log(1+t) - log(1-t)) k/2 on (0,1), with
// h'(t) = k (1+t^2) / (2 (t - t^3)).
double h_func(double t, int k);
double h_func_prime(double t, int k);

// The 4x4 first-order radial system
//   Phi'(r) = ( A - (k/2) coth_c(r) I + (rho / sinh_c(r)) B ) Phi(r)
// with A block-antidiagonal in (lambda, mu), B the anti-identity, AB+BA = 0,
// and spec(A) = {+kappa, -kappa} each twice, kappa = sqrt(lambda^2 - mu^2).
struct ModeSystem {
  Complex lambda;
  Complex mu;
  double rho = 0.0;
  double c = 1.0;
  int k = 1;
  Mat4 A;
  Mat4 B;
  Complex kappa;               // Re kappa >= 0
  bool degenerate = false;     // kappa == 0: A is defective
  bool nonstandard_mode = false;  // rho not in k/2 + N0
};

ModeSystem build_system(Complex lambda, Complex mu, double rho, double c, int k);

// Unit eigenvectors of A. block is 0 (coordinates 1,2) or 1 (coordinates 3,4).
Vec4 decaying_eigenvector(const ModeSystem& sys, int block = 0);  // eigenvalue -kappa
Vec4 growing_eigenvector(const ModeSystem& sys, int block = 0);   // eigenvalue +kappa

struct Trajectory {
  std::vector<double> grid;           // strictly increasing r values
  std::vector<Vec4> states;           // Phi(r)
  std::vector<double> log_magnitude;  // log |Phi(r)|, computed overflow-safely
  double c = 1.0;                     // carried for fitting and export
};

// Direct adaptive integration of the radial system on [r0, r1], reporting the
// solution on a uniform grid with `steps` intervals. Requires 0 < r0 < r1.
Trajectory integrate(const ModeSystem& sys, double r0, double r1,
                     const Vec4& phi0, int steps, double rel_tol = 1e-10);

// Transformed integration from the singular point t = 0 of the substitution
// t = exp(-c r):  Phi_hat(t) = exp(-h(t)) t^{A/c} Phi(-log(t)/c)  satisfies
//   d Phi_hat / dt = -(2 rho/(1-t^2)) t^{2A/c} B Phi_hat,
// using that conjugating B by t^{A/c} doubles the power. Initial data at
// t = 0 must lie in the decaying eigenspace of A (eigenvalue -kappa) unless
// rho = 0. States are recovered at r = -log(t)/c for a grid reaching down to
// r_max. Requires c != 0 and non-degenerate kappa.
struct HatTrajectory {
  std::vector<double> t_grid;         // increasing, in (0, t_end]
  std::vector<Vec4> hat_states;       // Phi_hat(t)
  std::vector<double> hat_magnitude;  // |Phi_hat(t)|
  double hat_magnitude_start = 0.0;   // |Phi_hat(0)|
  Trajectory back;                    // back-transformed Phi(r), increasing r
};
HatTrajectory integrate_hat(const ModeSystem& sys, double t_end,
                            const Vec4& phi_hat0, int steps,
                            double r_max = 64.0, double rel_tol = 1e-10);

// The decaying solution on [r0, r1] for any c >= 0: routed through the
// transformed integration when exp(-c r0) is inside its domain, otherwise
// obtained by backward integration from r1 + margin, where the decaying
// direction dominates.
Trajectory decaying_trajectory(const ModeSystem& sys, double r0, double r1,
                               int steps, double rel_tol = 1e-10);

// Growing solution by forward integration from the +kappa eigenvector.
Trajectory growing_trajectory(const ModeSystem& sys, double r0, double r1,
                              int steps, double rel_tol = 1e-10);

// Least-squares decay fit over the window [ra, rb] of the trajectory grid.
// For c != 0 fits log|Phi| = slope*r + const; for c = 0 fits
// log|Phi| = beta*log(r) + gamma*r + const.
struct DecayFit {
  bool euclidean = false;
  double slope = 0.0;   // c != 0
  double beta = 0.0;    // c == 0
  double gamma = 0.0;   // c == 0
  double max_residual = 0.0;
};
DecayFit decay_exponent(const Trajectory& traj, double ra, double rb);

// CSV rows "r,re_phi1,im_phi1,...,re_phi4,im_phi4,log_abs_phi".
std::string trajectory_csv(const Trajectory& traj);

}  // namespace dirac_spectra::modes
