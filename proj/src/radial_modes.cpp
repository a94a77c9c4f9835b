#include "dirac_spectra/radial_modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "dirac_spectra/numeric.hpp"
#include "dirac_spectra/ode.hpp"

namespace dirac_spectra::modes {

double sinh_c(double r, double c) {
  if (!(r > 0.0)) throw std::invalid_argument("sinh_c: r > 0 required");
  if (c == 0.0) return r;
  const double x = c * r;
  if (std::abs(x) < 1e-5) return r * (1.0 + x * x / 6.0 * (1.0 + x * x / 20.0));
  return std::sinh(x) / c;
}

double coth_c(double r, double c) {
  if (!(r > 0.0)) throw std::invalid_argument("coth_c: r > 0 required");
  if (c == 0.0) return 1.0 / r;
  const double x = c * r;
  if (std::abs(x) < 1e-5) return 1.0 / r + c * x / 3.0 * (1.0 - x * x / 15.0);
  return c / std::tanh(x);
}

double h_func(double t, int k) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("h_func: t in (0,1) required");
  return 0.5 * k * (std::log(t) - std::log1p(t) - std::log1p(-t));
}

double h_func_prime(double t, int k) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("h_func_prime: t in (0,1) required");
  return k * (1.0 + t * t) / (2.0 * (t - t * t * t));
}

ModeSystem build_system(Complex lambda, Complex mu, double rho, double c, int k) {
  if (k < 1) throw std::invalid_argument("build_system: k >= 1 required");
  if (!(c >= 0.0)) throw std::invalid_argument("build_system: c >= 0 required");
  ModeSystem sys;
  sys.lambda = lambda;
  sys.mu = mu;
  sys.rho = rho;
  sys.c = c;
  sys.k = k;
  sys.A.setZero();
  sys.A(0, 1) = lambda + mu;
  sys.A(1, 0) = lambda - mu;
  sys.A(2, 3) = -lambda + mu;
  sys.A(3, 2) = -lambda - mu;
  sys.B.setZero();
  sys.B(0, 3) = sys.B(1, 2) = sys.B(2, 1) = sys.B(3, 0) = 1.0;
  Complex kappa = std::sqrt(lambda * lambda - mu * mu);
  if (kappa.real() < 0.0 || (kappa.real() == 0.0 && kappa.imag() < 0.0))
    kappa = -kappa;
  sys.kappa = kappa;
  sys.degenerate = (kappa == 0.0);
  // Spherical eigenvalues sit at rho in k/2 + N0.
  const double offset = rho - 0.5 * k;
  sys.nonstandard_mode =
      !(offset > -1e-12 && std::abs(offset - std::round(offset)) < 1e-12);
  if (sys.nonstandard_mode)
    std::cerr << "build_system: rho=" << rho << " is not in k/2 + N0 for k=" << k
              << "\n";
  return sys;
}

Vec4 decaying_eigenvector(const ModeSystem& sys, int block) {
  if (sys.degenerate)
    throw std::invalid_argument("decaying_eigenvector: kappa = 0 is defective");
  Vec4 v = Vec4::Zero();
  if (block == 0) {
    v(0) = sys.lambda + sys.mu;
    v(1) = -sys.kappa;
  } else {
    v(2) = sys.mu - sys.lambda;
    v(3) = -sys.kappa;
  }
  return v / v.norm();
}

Vec4 growing_eigenvector(const ModeSystem& sys, int block) {
  if (sys.degenerate)
    throw std::invalid_argument("growing_eigenvector: kappa = 0 is defective");
  Vec4 v = Vec4::Zero();
  if (block == 0) {
    v(0) = sys.lambda + sys.mu;
    v(1) = sys.kappa;
  } else {
    v(2) = sys.mu - sys.lambda;
    v(3) = sys.kappa;
  }
  return v / v.norm();
}

namespace {

Mat4 coefficient_matrix(const ModeSystem& sys, double r) {
  Mat4 m = sys.A;
  const double damping = -0.5 * sys.k * coth_c(r, sys.c);
  m += damping * Mat4::Identity();
  m += (sys.rho / sinh_c(r, sys.c)) * sys.B;
  return m;
}

std::vector<double> uniform_grid(double a, double b, int steps) {
  std::vector<double> g(steps + 1);
  for (int i = 0; i <= steps; ++i) g[i] = a + (b - a) * i / steps;
  g.back() = b;
  return g;
}

// Scalar reduction of the transformed system. Each invariant pair
// {v, Bv} with A v = -kappa v evolves by
//   a' = -g(t) t^{-w} b,   b' = -g(t) t^{w} a,
// g = 2 rho/(1-t^2), w = 2 kappa / c. The solution with a(0)=1, b(0)=0 has
// the convergent expansion a = sum A_j t^{2j}, b = t^{w+1} sum B_j t^{2j}
// with
//   B_m = -2 rho (A_0+...+A_m)/(w+1+2m),  A_{m+1} = -2 rho (B_0+...+B_m)/(2m+2).
struct HatPairSeries {
  std::vector<Complex> acoef, bcoef;
  Complex w;

  HatPairSeries(double rho, Complex w_in) : w(w_in) {
    acoef.push_back(1.0);
    Complex asum = 1.0, bsum = 0.0;
    for (int m = 0; m < 200; ++m) {
      const Complex bm = -2.0 * rho * asum / (w + Complex(1.0 + 2.0 * m));
      bcoef.push_back(bm);
      bsum += bm;
      const Complex am1 = -2.0 * rho * bsum / (2.0 * m + 2.0);
      acoef.push_back(am1);
      asum += am1;
      if (std::abs(am1) + std::abs(bm) < 1e-280) break;
    }
  }

  void eval(double t, Complex& a, Complex& b) const {
    const double t2 = t * t;
    Complex sa = 0.0, sb = 0.0;
    double pw = 1.0;
    for (std::size_t j = 0; j < acoef.size(); ++j) {
      sa += acoef[j] * pw;
      if (j < bcoef.size()) sb += bcoef[j] * pw;
      pw *= t2;
      if (pw < 1e-40) break;
    }
    a = sa;
    b = std::exp((w + 1.0) * std::log(Complex(t))) * sb;
  }
};

// (a, b) of the unit decaying pair at the requested ascending t values.
void hat_pair_solution(const ModeSystem& sys, std::span<const double> ts,
                       double rel_tol, std::vector<Complex>& a_out,
                       std::vector<Complex>& b_out) {
  a_out.assign(ts.size(), 1.0);
  b_out.assign(ts.size(), 0.0);
  if (sys.rho == 0.0) return;  // right-hand side vanishes; pair is constant

  const Complex w = 2.0 * sys.kappa / sys.c;
  const HatPairSeries series(sys.rho, w);
  constexpr double t_switch = 0.05;

  std::size_t i = 0;
  for (; i < ts.size() && ts[i] <= t_switch; ++i)
    series.eval(ts[i], a_out[i], b_out[i]);
  if (i == ts.size()) return;

  Complex a0, b0;
  series.eval(t_switch, a0, b0);
  Eigen::Vector2cd y0(a0, b0);
  std::vector<double> grid;
  grid.push_back(t_switch);
  for (std::size_t j = i; j < ts.size(); ++j) grid.push_back(ts[j]);
  auto rhs = [&](double t, const Eigen::Vector2cd& y) {
    const double g = 2.0 * sys.rho / (1.0 - t * t);
    const Complex tw = std::exp(w * std::log(Complex(t)));
    return Eigen::Vector2cd(-g / tw * y(1), -g * tw * y(0));
  };
  auto states = num::integrate_dopri5<Eigen::Vector2cd>(rhs, y0, grid, rel_tol, 1e-16);
  for (std::size_t j = i; j < ts.size(); ++j) {
    a_out[j] = states[j - i + 1](0);
    b_out[j] = states[j - i + 1](1);
  }
}

struct BlockCoefficients {
  Complex alpha[2];  // weights of the decaying eigenvectors
  Complex beta[2];   // weights of B * (decaying eigenvectors)
};

BlockCoefficients decompose_hat_start(const ModeSystem& sys, const Vec4& phi0) {
  Mat4 basis;
  basis.col(0) = decaying_eigenvector(sys, 0);
  basis.col(1) = sys.B * decaying_eigenvector(sys, 0);
  basis.col(2) = decaying_eigenvector(sys, 1);
  basis.col(3) = sys.B * decaying_eigenvector(sys, 1);
  Vec4 x = basis.colPivHouseholderQr().solve(phi0);
  BlockCoefficients out;
  out.alpha[0] = x(0);
  out.beta[0] = x(1);
  out.alpha[1] = x(2);
  out.beta[1] = x(3);
  return out;
}

// Overflow-safe assembly of Phi(r) = e^{h} (x Vd + y Vg) with x = e^{-kappa r},
// y = e^{+kappa r}.
void assemble_state(double h, Complex kappa, double r, const Vec4& vd,
                    const Vec4& vg, Vec4& state, double& log_mag) {
  const double nd = vd.norm();
  const double ng = vg.norm();
  const double ld = nd > 0.0 ? -kappa.real() * r + std::log(nd) : -1e300;
  const double lg = ng > 0.0 ? kappa.real() * r + std::log(ng) : -1e300;
  const double m = std::max(ld, lg);
  if (m <= -1e299) {
    state.setZero();
    log_mag = -1e300;
    return;
  }
  const Complex xs = std::exp(-kappa * r - m);
  const Complex ys = std::exp(kappa * r - m);
  const Vec4 scaled = xs * vd + ys * vg;
  log_mag = h + m + std::log(scaled.norm());
  const double outer = h + m;
  state = outer > -700.0 ? Vec4(std::exp(outer) * scaled) : Vec4(Vec4::Zero());
}

}  // namespace

Trajectory integrate(const ModeSystem& sys, double r0, double r1,
                     const Vec4& phi0, int steps, double rel_tol) {
  if (!(r0 > 0.0) || !(r1 > r0))
    throw std::invalid_argument("integrate: require 0 < r0 < r1");
  if (steps < 1) throw std::invalid_argument("integrate: steps >= 1");
  Trajectory traj;
  traj.c = sys.c;
  traj.grid = uniform_grid(r0, r1, steps);
  auto rhs = [&](double r, const Vec4& y) -> Vec4 {
    return coefficient_matrix(sys, r) * y;
  };
  traj.states = num::integrate_dopri5<Vec4>(rhs, phi0, traj.grid, rel_tol, 1e-300);
  traj.log_magnitude.reserve(traj.states.size());
  for (const Vec4& s : traj.states) traj.log_magnitude.push_back(std::log(s.norm()));
  return traj;
}

HatTrajectory integrate_hat(const ModeSystem& sys, double t_end,
                            const Vec4& phi_hat0, int steps, double r_max,
                            double rel_tol) {
  if (sys.c == 0.0)
    throw std::invalid_argument("integrate_hat: c != 0 required (use the euclidean route)");
  if (sys.degenerate)
    throw std::invalid_argument("integrate_hat: kappa = 0 is defective");
  if (!(t_end > 0.0 && t_end < 1.0))
    throw std::invalid_argument("integrate_hat: t_end in (0,1) required");
  if (steps < 1) throw std::invalid_argument("integrate_hat: steps >= 1");

  BlockCoefficients coef = decompose_hat_start(sys, phi_hat0);
  const double growing_part = std::hypot(std::abs(coef.beta[0]), std::abs(coef.beta[1]));
  if (sys.rho != 0.0 && growing_part > 1e-9 * phi_hat0.norm())
    throw std::invalid_argument(
        "integrate_hat: initial value at t = 0 must lie in the decaying eigenspace");

  HatTrajectory out;
  const double t_lo = std::min(std::exp(-sys.c * r_max), t_end * 1e-3);
  out.t_grid.resize(steps + 1);
  for (int i = 0; i <= steps; ++i)
    out.t_grid[i] = t_lo * std::pow(t_end / t_lo, static_cast<double>(i) / steps);
  out.t_grid.back() = t_end;

  std::vector<Complex> a, b;
  hat_pair_solution(sys, out.t_grid, rel_tol, a, b);

  const Vec4 v0 = decaying_eigenvector(sys, 0);
  const Vec4 v1 = decaying_eigenvector(sys, 1);
  const Vec4 bv0 = sys.B * v0;
  const Vec4 bv1 = sys.B * v1;

  out.hat_states.resize(out.t_grid.size());
  out.hat_magnitude.resize(out.t_grid.size());
  out.hat_magnitude_start =
      sys.rho == 0.0 ? phi_hat0.norm()
                     : (coef.alpha[0] * v0 + coef.alpha[1] * v1 +
                        coef.beta[0] * bv0 + coef.beta[1] * bv1)
                           .norm();

  Trajectory back;
  back.c = sys.c;
  back.grid.resize(out.t_grid.size());
  back.states.resize(out.t_grid.size());
  back.log_magnitude.resize(out.t_grid.size());

  for (std::size_t j = 0; j < out.t_grid.size(); ++j) {
    const double t = out.t_grid[j];
    Complex aj[2] = {coef.alpha[0] * a[j], coef.alpha[1] * a[j]};
    Complex bj[2] = {coef.alpha[0] * b[j], coef.alpha[1] * b[j]};
    if (sys.rho == 0.0) {
      bj[0] += coef.beta[0];
      bj[1] += coef.beta[1];
    }
    // rho = 0 makes the transformed solution constant; keep it bit-exact.
    const Vec4 hat = sys.rho == 0.0
                         ? phi_hat0
                         : Vec4(aj[0] * v0 + aj[1] * v1 + bj[0] * bv0 + bj[1] * bv1);
    out.hat_states[j] = hat;
    out.hat_magnitude[j] = hat.norm();

    const double r = -std::log(t) / sys.c;
    const Vec4 vd = aj[0] * v0 + aj[1] * v1;
    const Vec4 vg = bj[0] * bv0 + bj[1] * bv1;
    const std::size_t rj = out.t_grid.size() - 1 - j;  // r decreases with t
    back.grid[rj] = r;
    assemble_state(h_func(t, sys.k), sys.kappa, r, vd, vg, back.states[rj],
                   back.log_magnitude[rj]);
  }
  out.back = std::move(back);
  return out;
}

Trajectory decaying_trajectory(const ModeSystem& sys, double r0, double r1,
                               int steps, double rel_tol) {
  if (!(r0 > 0.0) || !(r1 > r0))
    throw std::invalid_argument("decaying_trajectory: require 0 < r0 < r1");
  if (sys.degenerate)
    throw std::invalid_argument("decaying_trajectory: kappa = 0 is defective");

  if (sys.c > 0.0 && std::exp(-sys.c * r0) <= 0.4) {
    // Transformed route through the singular point.
    const std::vector<double> rgrid = uniform_grid(r0, r1, steps);
    std::vector<double> ts(rgrid.size());
    for (std::size_t i = 0; i < rgrid.size(); ++i)
      ts[i] = std::exp(-sys.c * rgrid[rgrid.size() - 1 - i]);
    std::vector<Complex> a, b;
    hat_pair_solution(sys, ts, rel_tol, a, b);
    const Vec4 v0 = decaying_eigenvector(sys, 0);
    const Vec4 bv0 = sys.B * v0;
    Trajectory traj;
    traj.c = sys.c;
    traj.grid = rgrid;
    traj.states.resize(rgrid.size());
    traj.log_magnitude.resize(rgrid.size());
    for (std::size_t i = 0; i < rgrid.size(); ++i) {
      const std::size_t tj = rgrid.size() - 1 - i;
      const Vec4 vd = a[tj] * v0;
      const Vec4 vg = b[tj] * bv0;
      assemble_state(h_func(ts[tj], sys.k), sys.kappa, rgrid[i], vd, vg,
                     traj.states[i], traj.log_magnitude[i]);
    }
    return traj;
  }

  // Backward integration: the decaying direction dominates going down in r.
  const double re_k = std::max(sys.kappa.real(), 0.3);
  const double margin = std::clamp(8.0 / re_k, 6.0, 30.0);
  const double top = r1 + margin;
  std::vector<double> grid;
  grid.push_back(top);
  const std::vector<double> window = uniform_grid(r0, r1, steps);
  for (std::size_t i = window.size(); i-- > 0;) grid.push_back(window[i]);
  auto rhs = [&](double r, const Vec4& y) -> Vec4 {
    return coefficient_matrix(sys, r) * y;
  };
  auto states = num::integrate_dopri5<Vec4>(rhs, decaying_eigenvector(sys, 0),
                                            grid, rel_tol, 1e-300);
  Trajectory traj;
  traj.c = sys.c;
  traj.grid = window;
  traj.states.resize(window.size());
  traj.log_magnitude.resize(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    traj.states[i] = states[states.size() - 1 - i];
    traj.log_magnitude[i] = std::log(traj.states[i].norm());
  }
  return traj;
}

Trajectory growing_trajectory(const ModeSystem& sys, double r0, double r1,
                              int steps, double rel_tol) {
  if (sys.degenerate)
    throw std::invalid_argument("growing_trajectory: kappa = 0 is defective");
  return integrate(sys, r0, r1, growing_eigenvector(sys, 0), steps, rel_tol);
}

DecayFit decay_exponent(const Trajectory& traj, double ra, double rb) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < traj.grid.size(); ++i) {
    if (traj.grid[i] >= ra - 1e-12 && traj.grid[i] <= rb + 1e-12) {
      xs.push_back(traj.grid[i]);
      ys.push_back(traj.log_magnitude[i]);
    }
  }
  if (xs.size() < 3)
    throw std::invalid_argument("decay_exponent: window outside trajectory grid");
  DecayFit fit;
  if (traj.c == 0.0) {
    fit.euclidean = true;
    const num::LogLinFit f = num::fit_log_linear(xs, ys);
    fit.beta = f.beta;
    fit.gamma = f.gamma;
    fit.max_residual = f.max_residual;
  } else {
    const num::LineFit f = num::fit_line(xs, ys);
    fit.slope = f.slope;
    fit.max_residual = f.max_residual;
  }
  return fit;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out =
      "r,re_phi1,im_phi1,re_phi2,im_phi2,re_phi3,im_phi3,re_phi4,im_phi4,log_abs_phi\n";
  char buf[512];
  for (std::size_t i = 0; i < traj.grid.size(); ++i) {
    const Vec4& s = traj.states[i];
    std::snprintf(buf, sizeof(buf),
                  "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  traj.grid[i], s(0).real(), s(0).imag(), s(1).real(), s(1).imag(),
                  s(2).real(), s(2).imag(), s(3).real(), s(3).imag(),
                  traj.log_magnitude[i]);
    out += buf;
  }
  return out;
}

}  // namespace dirac_spectra::modes
