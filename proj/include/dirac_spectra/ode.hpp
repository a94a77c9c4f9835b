#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dirac_spectra::num {

// Adaptive Dormand-Prince 5(4) with FSAL and PI-free step control.
// Integrates y' = f(t, y) from tout.front() through the strictly monotone
// grid `tout` (increasing or decreasing) and returns the state at each grid
// point. Vec must support Eigen-style arithmetic and .norm().
template <typename Vec, typename F>
std::vector<Vec> integrate_dopri5(F&& f, const Vec& y0,
                                  std::span<const double> tout,
                                  double rel_tol = 1e-10,
                                  double abs_tol = 1e-14) {
  if (tout.size() < 2) throw std::invalid_argument("integrate_dopri5: grid too short");
  const double dir = tout.back() > tout.front() ? 1.0 : -1.0;
  for (std::size_t i = 1; i < tout.size(); ++i)
    if ((tout[i] - tout[i - 1]) * dir <= 0.0)
      throw std::invalid_argument("integrate_dopri5: grid not strictly monotone");

  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  std::vector<Vec> out;
  out.reserve(tout.size());
  out.push_back(y0);

  double t = tout.front();
  Vec y = y0;
  Vec k1 = f(t, y);
  const double span = std::abs(tout.back() - tout.front());
  double h = dir * std::min(0.1 * span, 1e-2 * span + 1e-6);

  for (std::size_t target = 1; target < tout.size(); ++target) {
    const double tend = tout[target];
    while ((tend - t) * dir > 0.0) {
      if (std::abs(h) > std::abs(tend - t)) h = tend - t;
      const Vec k2 = f(t + a21 * h, (y + h * (a21 * k1)).eval());
      const Vec k3 = f(t + 0.3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
      const Vec k4 = f(t + 0.8 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
      const Vec k5 = f(t + 8.0 / 9.0 * h,
                       (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
      const Vec k6 = f(t + h,
                       (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
      const Vec y5 = (y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6)).eval();
      const Vec k7 = f(t + h, y5);
      const Vec err_vec =
          (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).eval();
      const double scale = abs_tol + rel_tol * std::max(y.norm(), y5.norm());
      const double err = err_vec.norm() / scale;
      if (err <= 1.0) {
        t += h;
        y = y5;
        k1 = k7;  // FSAL
      }
      const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
      h *= factor;
      if (std::abs(h) < 1e-14 * (std::abs(t) + 1.0))
        throw std::runtime_error("integrate_dopri5: step size underflow");
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace dirac_spectra::num
