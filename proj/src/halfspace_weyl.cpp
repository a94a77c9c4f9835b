#include "dirac_spectra/halfspace_weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dirac_spectra/numeric.hpp"

namespace dirac_spectra::weyl {

using namespace std::complex_literals;

double smoothstep5(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}
double smoothstep5_d1(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}
double smoothstep5_d2(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 60.0 * u * (2.0 * u - 1.0) * (u - 1.0);
}

double smoothstep7(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double u4 = u * u * u * u;
  return u4 * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u)));
}
double smoothstep7_d1(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double u3 = u * u * u;
  return u3 * (140.0 + u * (-420.0 + u * (420.0 - 140.0 * u)));
}
double smoothstep7_d2(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double u2 = u * u;
  return u2 * (420.0 + u * (-1680.0 + u * (2100.0 - 840.0 * u)));
}

double CutoffProfile::value(double z) const {
  if (z <= -4.0 * n || z >= -n) return 0.0;
  if (z < -3.0 * n) return smoothstep5((z + 4.0 * n) / n);
  if (z <= -2.0 * n) return 1.0;
  return smoothstep5((-n - z) / n);
}
double CutoffProfile::d1(double z) const {
  if (z <= -4.0 * n || z >= -n) return 0.0;
  if (z < -3.0 * n) return smoothstep5_d1((z + 4.0 * n) / n) / n;
  if (z <= -2.0 * n) return 0.0;
  return -smoothstep5_d1((-n - z) / n) / n;
}
double CutoffProfile::d2(double z) const {
  if (z <= -4.0 * n || z >= -n) return 0.0;
  if (z < -3.0 * n) return smoothstep5_d2((z + 4.0 * n) / n) / (n * n);
  if (z <= -2.0 * n) return 0.0;
  return smoothstep5_d2((-n - z) / n) / (n * n);
}

double bump_q(double x) {
  const double a = std::abs(x);
  if (a >= 1.0) return 0.0;
  if (a <= 0.5) return 1.0;
  return smoothstep7(2.0 * (1.0 - a));
}
double bump_q_d1(double x) {
  const double a = std::abs(x);
  if (a >= 1.0 || a <= 0.5) return 0.0;
  const double inner = -2.0 * (x > 0 ? 1.0 : -1.0);
  return smoothstep7_d1(2.0 * (1.0 - a)) * inner;
}
double bump_q_d2(double x) {
  const double a = std::abs(x);
  if (a >= 1.0 || a <= 0.5) return 0.0;
  return 4.0 * smoothstep7_d2(2.0 * (1.0 - a));
}

WeylConfig make_config(int k, region::Lp p, double s, int sign, int n) {
  if (k < 1 || k > 6) throw std::invalid_argument("make_config: k in [1,6]");
  if (sign != 1 && sign != -1) throw std::invalid_argument("make_config: sign = +/-1");
  if (n < 1) throw std::invalid_argument("make_config: n >= 1");
  WeylConfig cfg;
  cfg.k = k;
  cfg.p = p;
  cfg.s = s;
  cfg.sign = sign;
  cfg.n = n;
  cfg.mu = Complex(s, sign * k * (p.inv() - 0.5));
  cfg.alpha = Complex(k * p.inv(), -sign * s);
  cfg.cutoff = CutoffProfile{static_cast<double>(n)};
  if (!p.is_infinity()) {
    const double pval = 1.0 / p.inv();
    if (std::abs(pval * cfg.alpha.real() - k) > 1e-14 * k)
      throw std::logic_error("make_config: p*Re(alpha) != k");
  }
  return cfg;
}

ResidualDecomposition dirac_residual(const WeylConfig& config) {
  ResidualDecomposition out;
  out.config = config;
  out.rep = clifford::build_rep(config.k + 1);
  out.psi0 = clifford::eigenspinor(out.rep, 1, config.sign);
  out.e_psi0.reserve(config.k);
  for (int i = 0; i < config.k; ++i)
    out.e_psi0.push_back(out.rep.gammas[i + 1] * out.psi0);
  const Complex si(0.0, static_cast<double>(config.sign));
  out.third_coefficient = si * config.alpha - si * (0.5 * config.k) - config.mu;
  return out;
}

Eigen::VectorXcd ResidualDecomposition::field_at(std::span<const double> x,
                                                 double y) const {
  if (static_cast<int>(x.size()) != config.k)
    throw std::invalid_argument("field_at: x must have length k");
  double b = 1.0;
  for (double xi : x) b *= bump_q(xi);
  const double z = std::log(y);
  const Complex ya = std::exp(config.alpha * z);
  return (b * config.cutoff.value(z) * ya) * psi0;
}

Eigen::VectorXcd ResidualDecomposition::residual_at(std::span<const double> x,
                                                    double y) const {
  if (static_cast<int>(x.size()) != config.k)
    throw std::invalid_argument("residual_at: x must have length k");
  const int k = config.k;
  std::vector<double> q(k), qd(k);
  for (int i = 0; i < k; ++i) {
    q[i] = bump_q(x[i]);
    qd[i] = bump_q_d1(x[i]);
  }
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= q[i];
  const double z = std::log(y);
  const Complex ya = std::exp(config.alpha * z);
  const Complex ya1 = std::exp((config.alpha + 1.0) * z);
  const double cn = config.cutoff.value(z);
  const double cnp = config.cutoff.d1(z);

  Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(psi0.size());
  for (int i = 0; i < k; ++i) {
    double leave_one = 1.0;
    for (int j = 0; j < k; ++j)
      if (j != i) leave_one *= q[j];
    grad += (qd[i] * leave_one) * e_psi0[i];
  }
  const Complex si(0.0, static_cast<double>(config.sign));
  Eigen::VectorXcd out = (ya1 * cn) * grad;
  out += (si * b * cnp * ya) * psi0;
  out += (third_coefficient * b * cn * ya) * psi0;
  return out;
}

Eigen::VectorXcd ResidualDecomposition::squared_residual_at(
    std::span<const double> x, double y) const {
  if (static_cast<int>(x.size()) != config.k)
    throw std::invalid_argument("squared_residual_at: x must have length k");
  const int k = config.k;
  std::vector<double> q(k), qd(k), qdd(k);
  for (int i = 0; i < k; ++i) {
    q[i] = bump_q(x[i]);
    qd[i] = bump_q_d1(x[i]);
    qdd[i] = bump_q_d2(x[i]);
  }
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= q[i];
  const double z = std::log(y);
  const Complex ya = std::exp(config.alpha * z);
  const Complex ya1 = std::exp((config.alpha + 1.0) * z);
  const Complex ya2 = std::exp((config.alpha + 2.0) * z);
  const double cn = config.cutoff.value(z);
  const double cnp = config.cutoff.d1(z);
  const double cnpp = config.cutoff.d2(z);

  Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(psi0.size());
  double lap = 0.0;
  for (int i = 0; i < k; ++i) {
    double leave_one = 1.0;
    for (int j = 0; j < k; ++j)
      if (j != i) leave_one *= q[j];
    grad += (qd[i] * leave_one) * e_psi0[i];
    lap += qdd[i] * leave_one;
  }
  const Complex si(0.0, static_cast<double>(config.sign));
  const Complex zero_order = squared_cn_coefficient(config);
  Eigen::VectorXcd out = (-ya2 * cn * lap) * psi0;
  out -= (si * ya1 * cn) * grad;
  out -= (ya * b * (cnpp + (2.0 * config.alpha - static_cast<double>(k)) * cnp + zero_order * cn)) * psi0;
  return out;
}

Complex squared_cn_coefficient(const WeylConfig& config) {
  const Complex a = config.alpha;
  const double k = config.k;
  return a * (a - 1.0) - (k - 1.0) * a + 0.25 * k * k + config.mu * config.mu;
}

namespace {

// Tensor tables of the product bump over [-1,1]^k: composite Gauss nodes per
// axis aligned with the plateau breakpoints, plus a uniform grid for suprema.
struct XTables {
  std::vector<double> w;    // product quadrature weight
  std::vector<double> B;    // b(x)
  std::vector<double> G2;   // |grad b|^2
  std::vector<double> LAP;  // laplacian of b
  std::vector<double> sup_B, sup_G2, sup_LAP;
};

int nodes_per_piece(int k) {
  if (k <= 2) return 16;
  if (k == 3) return 12;
  if (k == 4) return 6;
  return 4;
}

int sup_nodes_per_axis(int k) {
  if (k <= 3) return 41;
  if (k == 4) return 15;
  return 9;
}

struct AxisPoint {
  double x, w, q, qd, qdd;
};

void tensor_fill(int k, const std::vector<AxisPoint>& axis, bool with_weights,
                 std::vector<double>& w, std::vector<double>& B,
                 std::vector<double>& G2, std::vector<double>& LAP) {
  const std::size_t na = axis.size();
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= na;
  if (with_weights) w.reserve(total);
  B.reserve(total);
  G2.reserve(total);
  LAP.reserve(total);
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    double weight = 1.0, b = 1.0;
    for (int i = 0; i < k; ++i) {
      const AxisPoint& pt = axis[idx[i]];
      weight *= pt.w;
      b *= pt.q;
    }
    double g2 = 0.0, lap = 0.0;
    for (int i = 0; i < k; ++i) {
      double leave_one = 1.0;
      for (int j = 0; j < k; ++j)
        if (j != i) leave_one *= axis[idx[j]].q;
      const double di = axis[idx[i]].qd * leave_one;
      g2 += di * di;
      lap += axis[idx[i]].qdd * leave_one;
    }
    if (with_weights) w.push_back(weight);
    B.push_back(b);
    G2.push_back(g2);
    LAP.push_back(lap);
    int pos = 0;
    while (pos < k && ++idx[pos] == na) idx[pos++] = 0;
    if (pos == k) break;
  }
}

const XTables& x_tables(int k) {
  static std::mutex mu;
  static std::map<int, XTables> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  XTables t;
  const int npp = nodes_per_piece(k);
  const num::GaussRule& rule = num::gauss_rule(npp);
  const double breaks[4] = {-1.0, -0.5, 0.5, 1.0};
  std::vector<AxisPoint> axis;
  for (int piece = 0; piece < 3; ++piece) {
    const double lo = breaks[piece], hi = breaks[piece + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < npp; ++i) {
      AxisPoint pt;
      pt.x = mid + half * rule.nodes[i];
      pt.w = half * rule.weights[i];
      pt.q = bump_q(pt.x);
      pt.qd = bump_q_d1(pt.x);
      pt.qdd = bump_q_d2(pt.x);
      axis.push_back(pt);
    }
  }
  tensor_fill(k, axis, true, t.w, t.B, t.G2, t.LAP);

  std::vector<AxisPoint> dense;
  const int ns = sup_nodes_per_axis(k);
  for (int i = 0; i < ns; ++i) {
    AxisPoint pt;
    pt.x = -1.0 + 2.0 * i / (ns - 1);
    pt.w = 0.0;
    pt.q = bump_q(pt.x);
    pt.qd = bump_q_d1(pt.x);
    pt.qdd = bump_q_d2(pt.x);
    dense.push_back(pt);
  }
  std::vector<double> unused;
  tensor_fill(k, dense, false, unused, t.sup_B, t.sup_G2, t.sup_LAP);

  return cache.emplace(k, std::move(t)).first->second;
}

// z-quadrature nodes over the cutoff support (-4n, -n): the two ramps and the
// plateau, each split into subpanels of width <= 1 with a 16-point rule.
struct ZPoint {
  double z, w, cn, cnp, cnpp;
};

std::vector<ZPoint> z_nodes(const CutoffProfile& cutoff) {
  const double n = cutoff.n;
  const int sub = std::max(4, static_cast<int>(std::ceil(n)));
  const num::GaussRule& rule = num::gauss_rule(16);
  std::vector<ZPoint> out;
  out.reserve(3 * sub * 16);
  const double pieces[4] = {-4.0 * n, -3.0 * n, -2.0 * n, -n};
  for (int piece = 0; piece < 3; ++piece) {
    for (int s = 0; s < sub; ++s) {
      const double lo = pieces[piece] + (pieces[piece + 1] - pieces[piece]) * s / sub;
      const double hi = pieces[piece] + (pieces[piece + 1] - pieces[piece]) * (s + 1) / sub;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int i = 0; i < 16; ++i) {
        ZPoint pt;
        pt.z = mid + half * rule.nodes[i];
        pt.w = half * rule.weights[i];
        pt.cn = cutoff.value(pt.z);
        pt.cnp = cutoff.d1(pt.z);
        pt.cnpp = cutoff.d2(pt.z);
        out.push_back(pt);
      }
    }
  }
  return out;
}

std::vector<double> z_dense(const CutoffProfile& cutoff, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = -4.0 * cutoff.n + 3.0 * cutoff.n * i / (count - 1);
  return out;
}

inline double half_power(double mag2, double p) {
  if (p == 1.0) return std::sqrt(mag2);
  if (p == 2.0) return mag2;
  return std::pow(mag2, 0.5 * p);
}

double powered_x_integral(const XTables& t, const std::vector<double>& mag2,
                          double p) {
  // integral of mag^p with mag2 the squared magnitudes on the tensor nodes
  std::vector<double> contrib(t.w.size());
  for (std::size_t i = 0; i < t.w.size(); ++i)
    contrib[i] = t.w[i] * half_power(mag2[i], p);
  return num::pairwise_sum(contrib);
}

struct ProfileConstants {
  double c_ratio;   // bound for n * ||c_n'||_p / ||c_n||_p
  double c2_ratio;  // bound for n^2 * ||c_n''||_p / ||c_n||_p
};

// Estimate chain from the certified cutoff bounds: |c_n'| <= 2/n and
// |c_n''| <= 8/n^2 on ramps of total length 2n, against the plateau
// contribution ||c_n||_p^p >= n. The extra 2^{1/p} is the support/plateau
// length ratio (1 at p = infinity, where inv_p = 0).
ProfileConstants cutoff_bound_constants(double inv_p) {
  const double measure = std::pow(2.0, inv_p);
  return {2.0 * measure, 8.0 * measure};
}

struct RatioParams {
  bool squared = false;
  Complex alpha;
  int k = 1;
};

// Squared pointwise residual magnitude at one (x,z) node, with the common
// e^{2 Re(alpha) z} factor (which cancels against the volume weight) removed.
inline double residual_mag2(const ZPoint& zp, double e2z, double B, double G2,
                            double LAP, bool squared, double re_g, double abs2_g) {
  if (!squared) {
    const double grad_part = e2z * zp.cn * zp.cn * G2;
    const double cut_part = zp.cnp * zp.cnp * B * B;
    return grad_part + cut_part;
  }
  const double lap_term = e2z * e2z * zp.cn * zp.cn * LAP * LAP;
  const double cross = 2.0 * e2z * zp.cn * re_g * B * LAP;
  const double cut_term = abs2_g * B * B;
  const double grad_term = e2z * zp.cn * zp.cn * G2;
  return std::max(0.0, lap_term + cross + cut_term + grad_term);
}

double ratio_numerator_p(const WeylConfig& cfg, const RatioParams& rp, double p) {
  const XTables& t = x_tables(cfg.k);
  const std::vector<ZPoint> zs = z_nodes(cfg.cutoff);
  const Complex gcoef = 2.0 * rp.alpha - static_cast<double>(cfg.k);
  std::vector<double> per_z(zs.size());
  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    const ZPoint& zp = zs[zi];
    const double e2z = std::exp(2.0 * zp.z);
    const Complex g = zp.cnpp + gcoef * zp.cnp;
    const double re_g = g.real();
    const double abs2_g = std::norm(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < t.w.size(); ++i) {
      const double m2 = residual_mag2(zp, e2z, t.B[i], t.G2[i], t.LAP[i],
                                      rp.squared, re_g, abs2_g);
      acc += t.w[i] * half_power(m2, p);
    }
    per_z[zi] = zp.w * acc;
  }
  return num::pairwise_sum(per_z);
}

double ratio_sup(const WeylConfig& cfg, const RatioParams& rp, int z_count) {
  const XTables& t = x_tables(cfg.k);
  const Complex gcoef = 2.0 * rp.alpha - static_cast<double>(cfg.k);
  const std::vector<double> zgrid = z_dense(cfg.cutoff, z_count);
  double best = 0.0;
  for (double z : zgrid) {
    ZPoint zp{z, 0.0, cfg.cutoff.value(z), cfg.cutoff.d1(z), cfg.cutoff.d2(z)};
    const double e2z = std::exp(2.0 * z);
    const Complex g = zp.cnpp + gcoef * zp.cnp;
    for (std::size_t i = 0; i < t.sup_B.size(); ++i) {
      const double m2 = residual_mag2(zp, e2z, t.sup_B[i], t.sup_G2[i],
                                      t.sup_LAP[i], rp.squared, g.real(),
                                      std::norm(g));
      best = std::max(best, m2);
    }
  }
  return std::sqrt(best);
}

WeylRatioResult ratio_impl(const WeylConfig& cfg, bool squared) {
  WeylRatioResult out;
  const XTables& t = x_tables(cfg.k);
  const double n = cfg.cutoff.n;
  const RatioParams rp{squared, cfg.alpha, cfg.k};

  if (cfg.p.is_infinity()) {
    out.ratio = ratio_sup(cfg, rp, 1201);  // denominator sup is exactly 1
    const ProfileConstants pc = cutoff_bound_constants(0.0);
    double max_grad = 0.0, max_lap = 0.0;
    for (std::size_t i = 0; i < t.sup_G2.size(); ++i) {
      max_grad = std::max(max_grad, std::sqrt(t.sup_G2[i]));
      max_lap = std::max(max_lap, std::abs(t.sup_LAP[i]));
    }
    out.bound_c1 = max_grad;
    if (!squared) {
      out.bound_c2 = pc.c_ratio;
      out.bound = out.bound_c1 * std::exp(-n) + out.bound_c2 / n;
    } else {
      const double gc = std::abs(2.0 * cfg.alpha - static_cast<double>(cfg.k));
      out.bound_c2 = gc * pc.c_ratio;
      out.bound = max_lap * std::exp(-2.0 * n) + max_grad * std::exp(-n) +
                  pc.c2_ratio / (n * n) + gc * pc.c_ratio / n;
    }
    return out;
  }

  const double p = 1.0 / cfg.p.inv();
  const double num_p = ratio_numerator_p(cfg, rp, p);

  std::vector<double> b2(t.B.size());
  for (std::size_t i = 0; i < t.B.size(); ++i) b2[i] = t.B[i] * t.B[i];
  const double xb = powered_x_integral(t, b2, p);
  const std::vector<ZPoint> zs = z_nodes(cfg.cutoff);
  std::vector<double> zc(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i)
    zc[i] = zs[i].w * std::pow(zs[i].cn, p);
  const double zb = num::pairwise_sum(zc);
  const double den_p = xb * zb;
  out.ratio = std::pow(num_p / den_p, 1.0 / p);

  const ProfileConstants pc = cutoff_bound_constants(cfg.p.inv());
  std::vector<double> lap2(t.LAP.size());
  for (std::size_t i = 0; i < t.LAP.size(); ++i) lap2[i] = t.LAP[i] * t.LAP[i];
  const double grad_ratio = std::pow(powered_x_integral(t, t.G2, p) / xb, 1.0 / p);
  out.bound_c1 = grad_ratio;
  if (!squared) {
    out.bound_c2 = pc.c_ratio;
    out.bound = grad_ratio * std::exp(-n) + pc.c_ratio / n;
  } else {
    const double lap_ratio = std::pow(powered_x_integral(t, lap2, p) / xb, 1.0 / p);
    const double gc = std::abs(2.0 * cfg.alpha - static_cast<double>(cfg.k));
    out.bound_c2 = gc * pc.c_ratio;
    out.bound = lap_ratio * std::exp(-2.0 * n) + grad_ratio * std::exp(-n) +
                pc.c2_ratio / (n * n) + gc * pc.c_ratio / n;
  }
  return out;
}

}  // namespace

double lp_norm(const WeylConfig& config, const SeparableField& field) {
  const int k = config.k;

  if (config.p.is_infinity()) {
    // dense-grid suprema in both factors
    double sx = 0.0;
    const int ns = sup_nodes_per_axis(k);
    std::vector<double> point(k);
    std::vector<int> idx(k, 0);
    while (true) {
      for (int i = 0; i < k; ++i) point[i] = -1.0 + 2.0 * idx[i] / (ns - 1);
      sx = std::max(sx, std::abs(field.xmag(point)));
      int pos = 0;
      while (pos < k && ++idx[pos] == ns) idx[pos++] = 0;
      if (pos == k) break;
    }
    double sz = 0.0;
    for (double z : z_dense(config.cutoff, 4001))
      sz = std::max(sz, std::abs(field.zmag(z)) * std::exp(field.z_exponent * z));
    return sx * sz;
  }

  const double p = 1.0 / config.p.inv();
  // x factor on the same composite tensor nodes as the tables
  const int npp = nodes_per_piece(k);
  const num::GaussRule& gr = num::gauss_rule(npp);
  const double breaks[4] = {-1.0, -0.5, 0.5, 1.0};
  std::vector<double> axis_x, axis_w;
  for (int piece = 0; piece < 3; ++piece) {
    const double mid = 0.5 * (breaks[piece] + breaks[piece + 1]);
    const double half = 0.5 * (breaks[piece + 1] - breaks[piece]);
    for (int i = 0; i < npp; ++i) {
      axis_x.push_back(mid + half * gr.nodes[i]);
      axis_w.push_back(half * gr.weights[i]);
    }
  }
  std::vector<double> contrib;
  contrib.reserve(axis_x.size() * axis_x.size());
  std::vector<int> idx(k, 0);
  std::vector<double> point(k);
  while (true) {
    double w = 1.0;
    for (int i = 0; i < k; ++i) {
      point[i] = axis_x[idx[i]];
      w *= axis_w[idx[i]];
    }
    contrib.push_back(w * std::pow(std::abs(field.xmag(point)), p));
    int pos = 0;
    while (pos < k && ++idx[pos] == static_cast<int>(axis_x.size())) idx[pos++] = 0;
    if (pos == k) break;
  }
  const double xint = num::pairwise_sum(contrib);

  const double n = config.cutoff.n;
  const double zexp = p * field.z_exponent - k;
  const double zint =
      num::integrate_adaptive(
          [&](double z) {
            return std::pow(std::abs(field.zmag(z)), p) * std::exp(zexp * z);
          },
          -4.0 * n, -n, 1e-9)
          .value;
  if (!std::isfinite(xint) || !std::isfinite(zint))
    throw std::runtime_error("lp_norm: non-integrable configuration");
  return std::pow(xint * zint, 1.0 / p);
}

WeylRatioResult weyl_ratio(const WeylConfig& config) {
  return ratio_impl(config, false);
}

WeylRatioResult weyl_ratio_squared(const WeylConfig& config) {
  return ratio_impl(config, true);
}

BallIntegral ball_harmonic_integral(int k, double p, int refinement) {
  if (k < 1) throw std::invalid_argument("ball_harmonic_integral: k >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("ball_harmonic_integral: p >= 1");
  if (refinement < 4) refinement = 4;
  BallIntegral out;
  out.exponent = -k - 1.0 + 0.5 * k * p;
  const double a = out.exponent;

  auto integrand = [&](double r) {
    return std::pow((1.0 - r) * (1.0 + r), a) * std::pow(r, k);
  };
  double partial = num::integrate_gauss_panels(integrand, 0.0, 0.9, 6, 24);

  // geometric endpoint panels in v = log(1-r)
  auto vband = [&](double v_lo, double v_hi) {
    return num::integrate_gauss_panels(
        [&](double v) {
          const double omr = std::exp(v);
          const double r = 1.0 - omr;
          return std::pow(omr, a + 1.0) * std::pow(1.0 + r, a) * std::pow(r, k);
        },
        v_lo, v_hi, 3, 20);
  };

  // Geometric endpoint bands; the band ratio estimates the tail behaviour
  // (ratio 10^{-(a+1)}): below 1 the tail is geometric and extrapolates,
  // otherwise the partial sums grow without stabilizing.
  std::vector<double> bands, changes, extrapolated;
  double v_hi = std::log(0.1);
  for (int j = 1; j <= refinement; ++j) {
    const double v_lo = std::log(0.1) - j * std::log(10.0);
    const double band = vband(v_lo, v_hi);
    const double prev = partial;
    partial += band;
    bands.push_back(band);
    changes.push_back(std::abs(partial - prev) / std::max(std::abs(partial), 1e-300));
    if (bands.size() >= 2 && bands[bands.size() - 2] > 0.0) {
      const double ratio = band / bands[bands.size() - 2];
      if (ratio < 0.999)
        extrapolated.push_back(partial + band * ratio / (1.0 - ratio));
      else
        extrapolated.push_back(partial);
    }
    v_hi = v_lo;
  }
  for (auto it = changes.rbegin(); it != changes.rend() && *it > 0.05; ++it)
    ++out.growth_streak;

  const double tail_ratio = bands.back() / bands[bands.size() - 2];
  if (tail_ratio >= 0.999) {
    out.divergent = true;
    out.value = partial;
    out.last_change = changes.back();
    return out;
  }
  const double v_last = extrapolated.back();
  const double v_prev = extrapolated[extrapolated.size() - 2];
  out.value = v_last;
  out.last_change = std::abs(v_last - v_prev) / std::max(std::abs(v_last), 1e-300);
  out.divergent = !(out.last_change <= 0.01);
  return out;
}

CutoffCertificate certify_cutoff(int n, int grid_points) {
  CutoffProfile profile{static_cast<double>(n)};
  CutoffCertificate cert;
  cert.d1_bound = 2.0 / n;
  cert.d2_bound = 8.0 / (n * n);
  for (int i = 0; i <= grid_points; ++i) {
    const double z = -4.0 * n + 3.0 * n * static_cast<double>(i) / grid_points;
    cert.max_d1 = std::max(cert.max_d1, std::abs(profile.d1(z)));
    cert.max_d2 = std::max(cert.max_d2, std::abs(profile.d2(z)));
  }
  return cert;
}

}  // namespace dirac_spectra::weyl
