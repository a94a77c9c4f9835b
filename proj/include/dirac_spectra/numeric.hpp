#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dirac_spectra::num {

using Complex = std::complex<double>;

// Fixed-order pairwise summation. Deterministic for a given input order,
// with error growth O(log n) instead of O(n).
double pairwise_sum(std::span<const double> values);

// Gauss-Legendre rule on [-1,1], generated at runtime by Newton iteration
// on the Legendre polynomial. Exact for polynomials of degree 2n-1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int n);

// Fixed composite Gauss-Legendre integration: `panels` equal panels of an
// n-point rule over [a,b].
double integrate_gauss_panels(const std::function<double(double)>& f, double a,
                              double b, int panels, int n = 16);

// Adaptive Gauss quadrature with an embedded low/high order pair per
// interval and depth-first bisection. Deterministic evaluation order.
struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol = 1e-10,
                                    double abs_tol = 1e-300,
                                    int max_depth = 52);

// Least-squares fit y = slope*x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least-squares fit y = beta*log(x) + gamma*x + intercept.
struct LogLinFit {
  double beta = 0.0;
  double gamma = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};
LogLinFit fit_log_linear(std::span<const double> x, std::span<const double> y);

// Worker-thread fan-out over [0,count) with deterministic slot-based output.
// Thread count is capped by the DIRAC_SPECTRA_THREADS environment variable
// (default 1). Results must be written to preallocated slots by the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

inline double sqr(double x) { return x * x; }

}  // namespace dirac_spectra::num
