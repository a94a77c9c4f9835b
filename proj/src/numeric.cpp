#include "dirac_spectra/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace dirac_spectra::num {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

namespace {

GaussRule make_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // One Horner-free recomputation of P_n' at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
  return it->second;
}

double integrate_gauss_panels(const std::function<double(double)>& f, double a,
                              double b, int panels, int n) {
  const GaussRule& rule = gauss_rule(n);
  std::vector<double> contributions;
  contributions.reserve(static_cast<std::size_t>(panels) * n);
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * w;
    const double mid = lo + 0.5 * w;
    const double half = 0.5 * w;
    for (int i = 0; i < n; ++i)
      contributions.push_back(half * rule.weights[i] * f(mid + half * rule.nodes[i]));
  }
  return pairwise_sum(contributions);
}

namespace {

struct PanelEval {
  double coarse;
  double fine;
};

PanelEval eval_panel(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& low = gauss_rule(7);
  const GaussRule& high = gauss_rule(15);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  PanelEval out{0.0, 0.0};
  for (int i = 0; i < 7; ++i)
    out.coarse += half * low.weights[i] * f(mid + half * low.nodes[i]);
  for (int i = 0; i < 15; ++i)
    out.fine += half * high.weights[i] * f(mid + half * high.nodes[i]);
  return out;
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, int max_depth, QuadratureResult& acc) {
  PanelEval e = eval_panel(f, a, b);
  const double err = std::abs(e.fine - e.coarse);
  if (depth >= max_depth || err <= tol || b - a < 1e-15 * (std::abs(a) + 1.0)) {
    acc.value += e.fine;
    acc.error_estimate += err;
    acc.intervals += 1;
    return;
  }
  const double mid = 0.5 * (a + b);
  adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, acc);
  adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, acc);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol, int max_depth) {
  if (!(a < b)) {
    if (a == b) return {};
    throw std::invalid_argument("integrate_adaptive: require a <= b");
  }
  // First pass for a magnitude scale, second pass against the mixed tolerance.
  PanelEval whole = eval_panel(f, a, b);
  const double scale = std::max(std::abs(whole.fine), abs_tol);
  QuadratureResult acc;
  adapt(f, a, b, std::max(rel_tol * scale, abs_tol), 0, max_depth, acc);
  // The scale estimate can be badly off for peaked integrands; one rescaled
  // repeat when the converged value dwarfs the initial estimate.
  if (std::abs(acc.value) > 50.0 * scale) {
    QuadratureResult redo;
    adapt(f, a, b, std::max(rel_tol * std::abs(acc.value), abs_tol), 0,
          max_depth, redo);
    return redo;
  }
  return acc;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need matching samples, >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit fit;
  const double det = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual = std::max(
        fit.max_residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
  return fit;
}

LogLinFit fit_log_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("fit_log_linear: need matching samples, >= 3");
  Eigen::MatrixXd design(x.size(), 3);
  Eigen::VectorXd rhs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) throw std::invalid_argument("fit_log_linear: x > 0 required");
    design(i, 0) = std::log(x[i]);
    design(i, 1) = x[i];
    design(i, 2) = 1.0;
    rhs(i) = y[i];
  }
  Eigen::Vector3d sol = design.colPivHouseholderQr().solve(rhs).eval();
  LogLinFit fit;
  fit.beta = sol(0);
  fit.gamma = sol(1);
  fit.intercept = sol(2);
  Eigen::VectorXd res = rhs - design * sol;
  fit.max_residual = res.cwiseAbs().maxCoeff();
  return fit;
}

namespace {

int thread_cap() {
  if (const char* env = std::getenv("DIRAC_SPECTRA_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  return 1;
}

}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int threads = std::min<std::size_t>(thread_cap(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dirac_spectra::num
