#include "dirac_spectra/halfspace_weyl.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "dirac_spectra/numeric.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace dirac_spectra;
using weyl::Complex;
using weyl::ResidualDecomposition;
using weyl::WeylConfig;

namespace {

using Vec = Eigen::VectorXcd;

// Finite-difference application of the half-space operator
//   D F = sum_i y e_i . d_i F + y e_y . d_y F - (k/2) e_y . F
// to an arbitrary coordinate-expressed field, as an oracle for the symbolic
// residual decompositions.
template <typename Field>
Vec fd_dirac(const ResidualDecomposition& rd, const Field& field,
             std::span<const double> x, double y, double h) {
  const int k = rd.config.k;
  const auto& gam = rd.rep.gammas;  // gam[0] is the e_y direction
  Vec out = Vec::Zero(rd.psi0.size());
  std::vector<double> xp(x.begin(), x.end());
  for (int i = 0; i < k; ++i) {
    xp[i] = x[i] + h;
    const Vec fwd = field(xp, y);
    xp[i] = x[i] - h;
    const Vec bwd = field(xp, y);
    xp[i] = x[i];
    out += y * (gam[i + 1] * ((fwd - bwd) / (2.0 * h)));
  }
  const double hy = h * y;
  const Vec dy = (field(x, y + hy) - field(x, y - hy)) / (2.0 * hy);
  out += y * (gam[0] * dy);
  out -= 0.5 * rd.config.k * (gam[0] * field(x, y));
  return out;
}

Vec fd_shifted_dirac(const ResidualDecomposition& rd, std::span<const double> x,
                     double y, double h) {
  auto field = [&](std::span<const double> xx, double yy) {
    return rd.field_at(xx, yy);
  };
  return fd_dirac(rd, field, x, y, h) - rd.config.mu * rd.field_at(x, y);
}

double simpson_weight(int i, int n) {
  if (i == 0 || i == n) return 1.0;
  return (i % 2 == 1) ? 4.0 : 2.0;
}

}  // namespace

TEST_SUITE("halfspace_weyl") {

TEST_CASE("cutoff profile certificate") {
  for (int n = 1; n <= 32; ++n) {
    CAPTURE(n);
    const auto cert = weyl::certify_cutoff(n);
    CHECK(cert.ok());
    CHECK(cert.max_d1 <= 2.0 / n);
    CHECK(cert.max_d2 <= 8.0 / (n * n));
    // and the bounds are close to the quintic ramp values 15/(8n), 10/sqrt(3)/n^2
    CHECK(cert.max_d1 == doctest::Approx(1.875 / n).epsilon(1e-4));
    CHECK(cert.max_d2 == doctest::Approx(5.7735 / (n * n)).epsilon(1e-3));
  }
}

TEST_CASE("cutoff support and plateau") {
  const weyl::CutoffProfile cn{4.0};
  CHECK(cn.value(-17.0) == 0.0);
  CHECK(cn.value(-3.9) == 0.0);
  CHECK(cn.value(-12.0) == 1.0);
  CHECK(cn.value(-9.5) == 1.0);
  CHECK(cn.value(-14.0) > 0.0);
  CHECK(cn.d1(-10.0) == 0.0);
}

TEST_CASE("configuration identities") {
  for (int k : {1, 2, 3, 6}) {
    for (double pval : {1.0, 1.5, 2.0, 3.0}) {
      for (int sign : {1, -1}) {
        for (double s : {0.0, 1.0, -0.7}) {
          CAPTURE(k);
          CAPTURE(pval);
          CAPTURE(sign);
          CAPTURE(s);
          const WeylConfig cfg =
              weyl::make_config(k, region::Lp::from_value(pval), s, sign, 2);
          CHECK(std::abs(pval * cfg.alpha.real() - k) <= 1e-14 * k);
          CHECK(cfg.mu.imag() == doctest::Approx(sign * k * (1.0 / pval - 0.5)));
          const auto rd = weyl::dirac_residual(cfg);
          CHECK(std::abs(rd.third_coefficient) < 1e-12 * std::max(1.0, std::abs(cfg.mu)));
        }
      }
    }
  }
  // the boundary parameter of the sup-norm family is purely oscillatory
  const WeylConfig cfg = weyl::make_config(3, region::Lp::infinity(), 1.0, 1, 2);
  CHECK(cfg.alpha.real() == 0.0);
  CHECK(std::abs(weyl::squared_cn_coefficient(cfg)) < 1e-12);
}

TEST_CASE("residual vanishes on the plateau") {
  const WeylConfig cfg = weyl::make_config(2, region::Lp::from_value(1.0), 0.5, 1, 2);
  const auto rd = weyl::dirac_residual(cfg);
  const double x[2] = {0.1, -0.3};            // inside the bump plateau
  const double y = std::exp(-5.0);            // z = -5 in [-3n,-2n] = [-6,-4]
  CHECK(rd.residual_at(x, y).norm() < 1e-14);
  CHECK(rd.field_at(x, y).norm() > 0.0);
}

TEST_CASE("finite differences confirm the residual decomposition") {
  const WeylConfig cfg = weyl::make_config(2, region::Lp::from_value(1.5), 0.7, -1, 1);
  const auto rd = weyl::dirac_residual(cfg);
  std::uniform_real_distribution<double> xdist(-0.9, 0.9);
  std::uniform_real_distribution<double> zdist(-3.9, -1.1);
  for (int trial = 0; trial < 10; ++trial) {
    const double x[2] = {xdist(test_util::rng()), xdist(test_util::rng())};
    const double y = std::exp(zdist(test_util::rng()));
    const Vec symbolic = rd.residual_at(x, y);
    const Vec fd1 = fd_shifted_dirac(rd, x, y, 1e-4);
    const Vec fd2 = fd_shifted_dirac(rd, x, y, 2e-4);
    const double scale = std::max(1e-12, rd.field_at(x, y).norm());
    const double e1 = (fd1 - symbolic).norm() / scale;
    const double e2 = (fd2 - symbolic).norm() / scale;
    CAPTURE(trial);
    CHECK(e1 < 1e-6);
    if (e1 > 1e-11)  // second-order convergence once above rounding noise
      CHECK(e2 / e1 > 2.5);
  }
}

TEST_CASE("applying the operator twice confirms the squared residual") {
  // (D^2 - mu^2) Phi_n built from the exact first-order image D Phi_n
  // (= residual + mu Phi_n, itself validated against raw derivatives above)
  // with one finite-difference application on top.
  const WeylConfig cfg = weyl::make_config(2, region::Lp::from_value(1.0), 0.5, 1, 1);
  const auto rd = weyl::dirac_residual(cfg);
  auto first_order_image = [&](std::span<const double> xx, double yy) {
    return Vec(rd.residual_at(xx, yy) + cfg.mu * rd.field_at(xx, yy));
  };
  std::uniform_real_distribution<double> xdist(-0.8, 0.8);
  std::uniform_real_distribution<double> zdist(-3.8, -1.2);
  for (int trial = 0; trial < 10; ++trial) {
    const double x[2] = {xdist(test_util::rng()), xdist(test_util::rng())};
    const double y = std::exp(zdist(test_util::rng()));
    // Richardson-extrapolated central differences (fourth order)
    const Vec fd_h = fd_dirac(rd, first_order_image, x, y, 1e-3);
    const Vec fd_h2 = fd_dirac(rd, first_order_image, x, y, 5e-4);
    const Vec fd = ((4.0 * fd_h2 - fd_h) / 3.0).eval() -
                   cfg.mu * cfg.mu * rd.field_at(x, y);
    const Vec symbolic = rd.squared_residual_at(x, y);
    const double scale = std::max(1e-12, rd.field_at(x, y).norm());
    CAPTURE(trial);
    CHECK((fd - symbolic).norm() / scale < 1e-6);
  }
  // plateau: all derivatives vanish
  const double xs[2] = {0.05, -0.2};
  CHECK(rd.squared_residual_at(xs, std::exp(-2.5)).norm() < 1e-13);
}

TEST_CASE("squared ratio quadrature against a brute-force oracle") {
  const WeylConfig cfg = weyl::make_config(1, region::Lp::from_value(1.0), 1.0, 1, 2);
  const auto rd = weyl::dirac_residual(cfg);
  const int nx = 800, nz = 2400;
  const double zlo = -8.0, zhi = -2.0;
  double num_sum = 0.0, den_sum = 0.0;
  for (int i = 0; i <= nx; ++i) {
    const double x = -1.0 + 2.0 * i / nx;
    const double wx = simpson_weight(i, nx);
    double num_z = 0.0, den_z = 0.0;
    for (int j = 0; j <= nz; ++j) {
      const double z = zlo + (zhi - zlo) * j / nz;
      const double wz = simpson_weight(j, nz);
      const double volume = std::exp(-cfg.k * z);
      const double xx[1] = {x};
      num_z += wz * rd.squared_residual_at(xx, std::exp(z)).norm() * volume;
      den_z += wz * rd.field_at(xx, std::exp(z)).norm() * volume;
    }
    num_sum += wx * num_z;
    den_sum += wx * den_z;
  }
  const auto result = weyl::weyl_ratio_squared(cfg);
  CHECK(result.ratio == doctest::Approx(num_sum / den_sum).epsilon(1e-5));
}

TEST_CASE("gradient spinor norm equals the euclidean gradient norm") {
  // |sum_i d_i b e_i psi0| = |grad b| pointwise: the e_i psi0 are orthonormal
  for (int k : {1, 2, 3}) {
    const WeylConfig cfg = weyl::make_config(k, region::Lp::from_value(1.0), 0.0, 1, 1);
    const auto rd = weyl::dirac_residual(cfg);
    std::uniform_real_distribution<double> xdist(-0.99, 0.99);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(k);
      for (double& xi : x) xi = xdist(test_util::rng());
      Vec combo = Vec::Zero(rd.psi0.size());
      double grad2 = 0.0;
      for (int i = 0; i < k; ++i) {
        double leave_one = 1.0;
        for (int j = 0; j < k; ++j)
          if (j != i) leave_one *= weyl::bump_q(x[j]);
        const double di = weyl::bump_q_d1(x[i]) * leave_one;
        combo += di * rd.e_psi0[i];
        grad2 += di * di;
      }
      CHECK(std::abs(combo.norm() - std::sqrt(grad2)) < 1e-12);
    }
  }
}

TEST_CASE("separable norms") {
  const WeylConfig cfg = weyl::make_config(2, region::Lp::from_value(1.5), 0.0, 1, 4);
  const double n = cfg.cutoff.n;
  const double p = 1.5;

  // z factor of ||Phi_n||_p^p lies between the plateau and the support length
  weyl::SeparableField phi{
      [](std::span<const double> x) {
        double b = 1.0;
        for (double xi : x) b *= weyl::bump_q(xi);
        return b;
      },
      [&](double z) { return cfg.cutoff.value(z); }, cfg.alpha.real()};
  const double norm = weyl::lp_norm(cfg, phi);
  CHECK(norm > 0.0);
  const auto zint = num::integrate_adaptive(
      [&](double z) { return std::pow(cfg.cutoff.value(z), p); }, -4.0 * n, -n, 1e-10);
  CHECK(zint.value >= n);
  CHECK(zint.value <= 3.0 * n);
  // the norm factors into the two one-dimensional integrals (z weight is 1)
  const double qint = num::integrate_adaptive(
      [&](double x) { return std::pow(weyl::bump_q(x), p); }, -1.0, 1.0, 1e-12).value;
  CHECK(std::pow(norm, p) ==
        doctest::Approx(qint * qint * zint.value).epsilon(1e-8));

  // cutoff-derivative decay: ||c_n'||_p^p / ||c_n||_p^p <= C n^{-p}
  double previous = 0.0;
  for (int nn : {2, 4, 8}) {
    const weyl::CutoffProfile prof{static_cast<double>(nn)};
    const double num_int = num::integrate_adaptive(
        [&](double z) { return std::pow(std::abs(prof.d1(z)), p); }, -4.0 * nn, -nn, 1e-10).value;
    const double den_int = num::integrate_adaptive(
        [&](double z) { return std::pow(prof.value(z), p); }, -4.0 * nn, -nn, 1e-10).value;
    const double scaled = (num_int / den_int) * std::pow(nn, p);
    CHECK(scaled < std::pow(2.0, p + 1));  // C from the certified bounds
    if (previous != 0.0) CHECK(scaled == doctest::Approx(previous).epsilon(1e-6));
    previous = scaled;
  }

  // gradient-term z integral carries the e^{zp} suppression
  const double grad_z = num::integrate_adaptive(
      [&](double z) { return std::pow(cfg.cutoff.value(z) * std::exp(z), p); },
      -4.0 * n, -n, 1e-10).value;
  const double base_z = num::integrate_adaptive(
      [&](double z) { return std::pow(cfg.cutoff.value(z), p); }, -4.0 * n, -n, 1e-10).value;
  CHECK(grad_z <= std::exp(-n * p) * base_z);
}

TEST_CASE("ratio quadrature against a brute-force oracle") {
  // k = 1, n = 2, p = 1: dense Simpson integration of the exact pointwise
  // residual and field norms
  const WeylConfig cfg = weyl::make_config(1, region::Lp::from_value(1.0), 0.0, 1, 2);
  const auto rd = weyl::dirac_residual(cfg);
  const int nx = 800, nz = 2400;
  const double zlo = -8.0, zhi = -2.0;
  double num_sum = 0.0, den_sum = 0.0;
  for (int i = 0; i <= nx; ++i) {
    const double x = -1.0 + 2.0 * i / nx;
    const double wx = simpson_weight(i, nx);
    double num_z = 0.0, den_z = 0.0;
    for (int j = 0; j <= nz; ++j) {
      const double z = zlo + (zhi - zlo) * j / nz;
      const double wz = simpson_weight(j, nz);
      const double volume = std::exp(-cfg.k * z);
      const double xx[1] = {x};
      num_z += wz * rd.residual_at(xx, std::exp(z)).norm() * volume;
      den_z += wz * rd.field_at(xx, std::exp(z)).norm() * volume;
    }
    num_sum += wx * num_z;
    den_sum += wx * den_z;
  }
  const double oracle_ratio = num_sum / den_sum;
  const auto result = weyl::weyl_ratio(cfg);
  CHECK(result.ratio == doctest::Approx(oracle_ratio).epsilon(1e-5));
}

TEST_CASE("first-order ratios decrease and respect the bound") {
  double first = 0.0, last = 0.0;
  double previous = 1e9;
  for (int n : {2, 4, 8, 16}) {
    const WeylConfig cfg = weyl::make_config(3, region::Lp::from_value(1.0), 0.0, 1, n);
    const auto res = weyl::weyl_ratio(cfg);
    CAPTURE(n);
    CHECK(res.ratio < previous);
    CHECK(res.ratio <= res.bound);
    previous = res.ratio;
    if (n == 2) first = res.ratio;
    if (n == 16) last = res.ratio;
  }
  CHECK(last <= first / 4.0);
}

TEST_CASE("hilbertian exponent ratios also decrease") {
  double previous = 1e9;
  for (int n : {2, 4, 8}) {
    const WeylConfig cfg = weyl::make_config(2, region::Lp::from_value(2.0), 0.5, 1, n);
    const auto res = weyl::weyl_ratio(cfg);
    CAPTURE(n);
    CHECK(res.ratio < previous);
    CHECK(res.ratio <= res.bound);
    previous = res.ratio;
  }
}

TEST_CASE("sup-norm ratio tracks the cutoff slope") {
  for (int n : {8, 16}) {
    const WeylConfig cfg = weyl::make_config(3, region::Lp::infinity(), 0.0, 1, n);
    const auto res = weyl::weyl_ratio(cfg);
    CAPTURE(n);
    // dominated by max|c_n'| = 1.875/n, within the certified 2/n
    CHECK(res.ratio <= 2.0 / n + 1e-9);
    CHECK(res.ratio == doctest::Approx(1.875 / n).epsilon(0.02));
    CHECK(res.ratio <= res.bound);
  }
}

TEST_CASE("squared-operator ratios decrease and respect the bound") {
  double previous = 1e9;
  for (int n : {2, 4, 8}) {
    const WeylConfig cfg = weyl::make_config(3, region::Lp::from_value(1.0), 1.0, 1, n);
    const auto res = weyl::weyl_ratio_squared(cfg);
    CAPTURE(n);
    CHECK(res.ratio < previous);
    CHECK(res.ratio <= res.bound);
    previous = res.ratio;
  }
  // eigen-cancellation of the zeroth-order coefficient
  for (double pval : {1.0, 2.0, 4.0}) {
    for (double s : {0.0, 1.0}) {
      const WeylConfig cfg = weyl::make_config(3, region::Lp::from_value(pval), s, -1, 2);
      CHECK(std::abs(weyl::squared_cn_coefficient(cfg)) <
            1e-12 * std::max(1.0, std::norm(cfg.mu)));
    }
  }
}

TEST_CASE("ball integral classification") {
  // exponent 0: plain polynomial integral with value 1/3
  const auto finite = weyl::ball_harmonic_integral(2, 3.0);
  CHECK_FALSE(finite.divergent);
  CHECK(std::abs(finite.value - 1.0 / 3.0) < 1e-9);

  const auto log_div = weyl::ball_harmonic_integral(2, 2.0);
  CHECK(log_div.divergent);
  CHECK(log_div.growth_streak >= 3);

  // barely integrable: cross-check against the beta-function value
  // (1/2) Gamma((k+1)/2) Gamma(a+1) / Gamma((k+1)/2 + a + 1) for a = -0.8, k = 2
  const auto barely = weyl::ball_harmonic_integral(2, 2.2, 22);
  CHECK_FALSE(barely.divergent);
  const double a = barely.exponent;
  const double beta_value =
      0.5 * std::exp(std::lgamma(1.5) + std::lgamma(a + 1.0) - std::lgamma(1.5 + a + 1.0));
  CHECK(barely.value == doctest::Approx(beta_value).epsilon(1e-4));

  // the threshold is exactly p = 2 across dimensions
  for (int k = 1; k <= 6; ++k) {
    for (double p : {1.0, 1.5, 2.0, 2.2, 3.0, 4.0}) {
      CAPTURE(k);
      CAPTURE(p);
      CHECK(weyl::ball_harmonic_integral(k, p).divergent == (p <= 2.0));
    }
  }
}

}  // TEST_SUITE
