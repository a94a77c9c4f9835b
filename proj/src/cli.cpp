#include "dirac_spectra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dirac_spectra/closed_spectra.hpp"
#include "dirac_spectra/halfspace_weyl.hpp"
#include "dirac_spectra/numeric.hpp"
#include "dirac_spectra/radial_modes.hpp"
#include "dirac_spectra/spectral_region.hpp"
#include "dirac_spectra/svg.hpp"
#include "json.hpp"

namespace dirac_spectra::cli {

namespace {

using Complex = std::complex<double>;
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt(Complex z) { return fmt(z.real()) + "," + fmt(z.imag()); }

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
  return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
}

std::string echo_header(const std::string& subcommand, const ConfigEcho& config) {
  std::string out = "# dirac-spectra " + subcommand + "\n";
  for (const auto& [key, value] : config) out += "# " + key + "=" + value + "\n";
  return out;
}

nlohmann::json echo_json(const ConfigEcho& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : config) j[key] = value;
  return j;
}

// Shared factor/lambda0 resolution for region-like subcommands.
struct FactorArgs {
  double lambda0 = 0.0;
  std::string factor_json;

  double resolve(ConfigEcho& echo) const {
    if (!factor_json.empty()) {
      const auto spectrum =
          spectra::from_descriptor(nlohmann::json::parse(factor_json));
      echo.emplace_back("factor", spectrum.descriptor.dump());
      echo.emplace_back("lambda0", fmt(spectrum.lambda0));
      return spectrum.lambda0;
    }
    echo.emplace_back("lambda0", fmt(lambda0));
    return lambda0;
  }
};

struct PanelSpec {
  double c;
  int k;
  double lambda0;
  region::Lp p;
};

PanelSpec parse_panel(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4)
    throw CLI::ValidationError("--panel expects \"c,k,lambda0,p\"");
  return PanelSpec{std::stod(parts[0]), std::stoi(parts[1]), std::stod(parts[2]),
                   region::Lp::parse(parts[3])};
}

int cmd_region(double c, int k, const FactorArgs& factor, const std::string& p_text,
               double s_max, int samples, const std::vector<std::string>& panels,
               const std::string& format, const std::string& out_path) {
  ConfigEcho echo;
  echo.emplace_back("c", fmt(c));
  echo.emplace_back("k", std::to_string(k));
  const double lambda0 = factor.resolve(echo);
  echo.emplace_back("p", p_text);
  echo.emplace_back("s_max", fmt(s_max));
  echo.emplace_back("samples", std::to_string(samples));
  echo.emplace_back("format", format);

  const region::Lp p = region::Lp::parse(p_text);
  const region::SpectralRegion base = region::make_region(c, k, lambda0, p);

  if (format == "json") {
    if (!panels.empty())
      throw CLI::ValidationError("--panel is only available with --format svg");
    const auto pts = region::boundary(base, -s_max, s_max, samples);
    nlohmann::json j = region::region_to_json(base, pts);
    j["config"] = echo_json(echo);
    write_output(out_path, j.dump(2) + "\n");
    return 0;
  }
  if (format == "svg") {
    std::vector<region::SpectralRegion> regions;
    if (panels.empty()) {
      regions.push_back(base);
    } else {
      for (const std::string& text : panels) {
        const PanelSpec spec = parse_panel(text);
        regions.push_back(region::make_region(spec.c, spec.k, spec.lambda0, spec.p));
        echo.emplace_back("panel", text);
      }
    }
    write_output(out_path, svg::render_region_panels(regions, s_max, samples, echo));
    return 0;
  }
  throw CLI::ValidationError("--format must be json or svg");
}

int cmd_membership(double c, int k, const FactorArgs& factor,
                   const std::string& p_text, const std::string& mu_text,
                   double tol) {
  ConfigEcho echo;
  echo.emplace_back("c", fmt(c));
  echo.emplace_back("k", std::to_string(k));
  const double lambda0 = factor.resolve(echo);
  echo.emplace_back("p", p_text);
  echo.emplace_back("mu", mu_text);
  echo.emplace_back("tol", fmt(tol));

  const region::SpectralRegion reg =
      region::make_region(c, k, lambda0, region::Lp::parse(p_text));
  const Complex mu = parse_complex(mu_text);
  const double imk = reg.imag_kappa(mu);
  const double thr = reg.threshold();
  const bool inside = reg.contains(mu, tol);
  const bool on_boundary = inside && std::abs(imk - thr) <= tol;

  std::string out = echo_header("membership", echo);
  out += std::string(inside ? (on_boundary ? "boundary" : "inside") : "outside");
  out += " im_kappa=" + fmt(imk) + " threshold=" + fmt(thr) + "\n";
  std::cout << out;
  return inside ? 0 : 1;
}

int cmd_radial(double c, int k, double rho, bool rho_set, const std::string& lambda_text,
               const std::string& mu_text, const std::string& branch, double r0,
               double r1, int steps, double fit_lo, double fit_hi,
               const std::string& out_path) {
  if (!rho_set) rho = 0.5 * k;
  if (fit_lo <= 0.0) fit_lo = std::max(r0, 0.5 * r1);
  if (fit_hi <= 0.0) fit_hi = r1;

  const Complex lambda = parse_complex(lambda_text);
  const Complex mu = parse_complex(mu_text);
  const modes::ModeSystem sys = modes::build_system(lambda, mu, rho, c, k);

  modes::Trajectory traj;
  if (branch == "decaying") {
    traj = modes::decaying_trajectory(sys, r0, r1, steps);
  } else if (branch == "growing") {
    traj = modes::growing_trajectory(sys, r0, r1, steps);
  } else {
    throw CLI::ValidationError("--branch must be decaying or growing");
  }

  const modes::DecayFit fit = modes::decay_exponent(traj, fit_lo, fit_hi);
  const double re_kappa = sys.kappa.real();
  const double predicted = branch == "decaying" ? -0.5 * c * k - re_kappa
                                                : -0.5 * c * k + re_kappa;

  ConfigEcho echo;
  echo.emplace_back("c", fmt(c));
  echo.emplace_back("k", std::to_string(k));
  echo.emplace_back("rho", fmt(rho));
  echo.emplace_back("lambda", fmt(lambda));
  echo.emplace_back("mu", fmt(mu));
  echo.emplace_back("branch", branch);
  echo.emplace_back("r0", fmt(r0));
  echo.emplace_back("r1", fmt(r1));
  echo.emplace_back("steps", std::to_string(steps));
  echo.emplace_back("fit_window", fmt(fit_lo) + ".." + fmt(fit_hi));
  echo.emplace_back("kappa", fmt(sys.kappa));
  if (sys.nonstandard_mode) echo.emplace_back("warning", "rho not in k/2 + N0");

  std::string out = echo_header("radial", echo);
  if (c == 0.0) {
    const double pred_beta = -0.5 * k;
    const double pred_gamma = branch == "decaying" ? -re_kappa : re_kappa;
    out += "# fit_beta=" + fmt(fit.beta) + " fit_gamma=" + fmt(fit.gamma) + "\n";
    out += "# predicted_beta=" + fmt(pred_beta) +
           " predicted_gamma=" + fmt(pred_gamma) + "\n";
    out += "# relative_error_beta=" +
           fmt(std::abs(fit.beta - pred_beta) / std::max(std::abs(pred_beta), 1e-300)) +
           " relative_error_gamma=" +
           fmt(std::abs(fit.gamma - pred_gamma) / std::max(std::abs(pred_gamma), 1e-300)) +
           "\n";
  } else {
    out += "# fitted_exponent=" + fmt(fit.slope) + "\n";
    out += "# predicted_exponent=" + fmt(predicted) + "\n";
    const double err = std::abs(fit.slope - predicted);
    out += (std::abs(predicted) > 1e-12
                ? "# relative_error=" + fmt(err / std::abs(predicted))
                : "# absolute_error=" + fmt(err)) +
           "\n";
  }
  out += modes::trajectory_csv(traj);
  write_output(out_path, out);
  return 0;
}

int cmd_weyl(int k, const std::string& p_text, double s, int sign,
             const std::string& n_list, bool squared, const std::string& out_path) {
  const region::Lp p = region::Lp::parse(p_text);
  std::vector<int> ns;
  {
    std::stringstream ss(n_list);
    std::string item;
    while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
  }
  if (ns.empty()) throw CLI::ValidationError("--n-list must not be empty");

  ConfigEcho echo;
  echo.emplace_back("k", std::to_string(k));
  echo.emplace_back("p", p_text);
  echo.emplace_back("s", fmt(s));
  echo.emplace_back("sign", std::to_string(sign));
  echo.emplace_back("n_list", n_list);
  echo.emplace_back("operator", squared ? "squared" : "first_order");
  {
    const weyl::WeylConfig probe = weyl::make_config(k, p, s, sign, ns.front());
    echo.emplace_back("mu", fmt(probe.mu));
    echo.emplace_back("alpha", fmt(probe.alpha));
  }

  std::vector<weyl::WeylRatioResult> results(ns.size());
  num::parallel_for(ns.size(), [&](std::size_t i) {
    const weyl::WeylConfig cfg = weyl::make_config(k, p, s, sign, ns[i]);
    results[i] = squared ? weyl::weyl_ratio_squared(cfg) : weyl::weyl_ratio(cfg);
  });

  std::string out = echo_header("weyl", echo);
  out += "n,p,s,sign,ratio,analytic_bound\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    out += std::to_string(ns[i]) + "," + p_text + "," + fmt(s) + "," +
           std::to_string(sign) + "," + fmt(results[i].ratio) + "," +
           fmt(results[i].bound) + "\n";
  }
  write_output(out_path, out);
  return 0;
}

int cmd_ball(int k, double p, int refinement, const std::string& out_path) {
  const weyl::BallIntegral result = weyl::ball_harmonic_integral(k, p, refinement);
  ConfigEcho echo;
  echo.emplace_back("k", std::to_string(k));
  echo.emplace_back("p", fmt(p));
  echo.emplace_back("refinement", std::to_string(refinement));
  nlohmann::json j;
  j["config"] = echo_json(echo);
  j["k"] = k;
  j["p"] = p;
  j["exponent"] = result.exponent;
  j["classification"] = result.divergent ? "divergent" : "finite";
  j["last_relative_change"] = result.last_change;
  if (!result.divergent) j["value"] = result.value;
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_compare_laplacian(double c, int k, double lambda0, const std::string& p_text,
                          double s_max, int samples, const std::string& format,
                          const std::string& out_path) {
  const region::Lp p = region::Lp::parse(p_text);
  const region::SpectralRegion reg = region::make_region(c, k, lambda0, p);
  ConfigEcho echo;
  echo.emplace_back("c", fmt(c));
  echo.emplace_back("k", std::to_string(k));
  echo.emplace_back("lambda0", fmt(lambda0));
  echo.emplace_back("p", p_text);
  echo.emplace_back("s_max", fmt(s_max));
  echo.emplace_back("samples", std::to_string(samples));
  echo.emplace_back("vertex_shift", fmt(region::laplacian_vertex_shift(k, p)));

  if (format == "svg") {
    write_output(out_path, svg::render_laplacian_compare(reg, s_max, samples, echo));
    return 0;
  }
  if (format == "csv") {
    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i)
      grid[i] = -s_max + 2.0 * s_max * i / (samples - 1);
    const auto dsq = region::d_squared_boundary(reg, grid);
    const auto lap = region::laplacian_boundary(k, p, grid);
    std::string out = echo_header("compare-laplacian", echo);
    out += "s,re_dsq,im_dsq,re_laplacian,im_laplacian\n";
    for (int i = 0; i < samples; ++i) {
      out += fmt(grid[i]) + "," + fmt(dsq[i].real()) + "," + fmt(dsq[i].imag()) +
             "," + fmt(lap[i].real()) + "," + fmt(lap[i].imag()) + "\n";
    }
    write_output(out_path, out);
    return 0;
  }
  throw CLI::ValidationError("--format must be svg or csv");
}

}  // namespace

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args));
}

int run(std::vector<std::string> args) {
  CLI::App app{"Lp spectral regions, radial decay modes and test-spinor "
               "ratios for shifted first-order operators on hyperbolic products"};
  app.name("dirac-spectra");
  app.require_subcommand(1);

  // region
  auto* region_cmd = app.add_subcommand("region", "Region boundary, classification and rendering");
  double r_c = 1.0, r_lambda0 = 0.0, r_smax = 3.0;
  int r_k = 2, r_samples = 201;
  std::string r_p = "2", r_factor, r_format = "json", r_out = "-";
  std::vector<std::string> r_panels;
  region_cmd->add_option("--c", r_c, "curvature scale (>= 0)");
  region_cmd->add_option("--k", r_k, "sphere dimension");
  region_cmd->add_option("--lambda0", r_lambda0, "lowest |eigenvalue| of the closed factor");
  region_cmd->add_option("--factor", r_factor, "closed factor JSON descriptor");
  region_cmd->add_option("--p", r_p, "Lebesgue exponent (number or 'inf')");
  region_cmd->add_option("--s-max", r_smax, "boundary parameter range [-s,s]");
  region_cmd->add_option("--samples", r_samples, "boundary samples");
  region_cmd->add_option("--panel", r_panels, "additional SVG panel 'c,k,lambda0,p'");
  region_cmd->add_option("--format", r_format, "json | svg");
  region_cmd->add_option("--out", r_out, "output path or '-'");

  // membership
  auto* member_cmd = app.add_subcommand("membership", "Point membership test (exit 0 inside, 1 outside)");
  double m_c = 1.0, m_lambda0 = 0.0, m_tol = 1e-9;
  int m_k = 2;
  std::string m_p = "2", m_factor, m_mu = "0,0";
  member_cmd->add_option("--c", m_c, "curvature scale");
  member_cmd->add_option("--k", m_k, "sphere dimension");
  member_cmd->add_option("--lambda0", m_lambda0, "lowest |eigenvalue|");
  member_cmd->add_option("--factor", m_factor, "closed factor JSON descriptor");
  member_cmd->add_option("--p", m_p, "Lebesgue exponent");
  member_cmd->add_option("--mu", m_mu, "complex point 're,im'");
  member_cmd->add_option("--tol", m_tol, "membership tolerance");

  // radial
  auto* radial_cmd = app.add_subcommand("radial", "Radial mode trajectory and decay fit");
  double d_c = 1.0, d_rho = -1.0, d_r0 = 1.0, d_r1 = 16.0, d_fit_lo = -1.0, d_fit_hi = -1.0;
  int d_k = 2, d_steps = 256;
  std::string d_lambda = "1", d_mu = "0,0", d_branch = "decaying", d_out = "-";
  radial_cmd->add_option("--c", d_c, "curvature scale");
  radial_cmd->add_option("--k", d_k, "sphere dimension");
  auto* rho_opt = radial_cmd->add_option("--rho", d_rho, "spherical mode (default k/2)");
  radial_cmd->add_option("--lambda", d_lambda, "factor eigenvalue 're[,im]'");
  radial_cmd->add_option("--mu", d_mu, "spectral parameter 're[,im]'");
  radial_cmd->add_option("--branch", d_branch, "decaying | growing");
  radial_cmd->add_option("--r0", d_r0, "window start (> 0)");
  radial_cmd->add_option("--r1", d_r1, "window end");
  radial_cmd->add_option("--steps", d_steps, "grid intervals");
  radial_cmd->add_option("--fit-lo", d_fit_lo, "fit window start (default 0.5*r1)");
  radial_cmd->add_option("--fit-hi", d_fit_hi, "fit window end (default r1)");
  radial_cmd->add_option("--out", d_out, "output path or '-'");

  // weyl
  auto* weyl_cmd = app.add_subcommand("weyl", "Test-spinor ratio sweep over the cutoff scale");
  double w_s = 0.0;
  int w_k = 3, w_sign = 1;
  bool w_squared = false;
  std::string w_p = "1", w_nlist = "2,4,8,16,32", w_out = "-";
  weyl_cmd->add_option("--k", w_k, "spatial dimension of the half-space boundary");
  weyl_cmd->add_option("--p", w_p, "Lebesgue exponent (number or 'inf')");
  weyl_cmd->add_option("--s", w_s, "real part of the boundary parameter");
  weyl_cmd->add_option("--sign", w_sign, "imaginary branch (+1 or -1)");
  weyl_cmd->add_option("--n-list", w_nlist, "comma-separated cutoff scales");
  weyl_cmd->add_flag("--squared", w_squared, "squared-operator residual ratios");
  weyl_cmd->add_option("--out", w_out, "output path or '-'");

  // ball
  auto* ball_cmd = app.add_subcommand("ball", "Conformal ball-model kernel integral classification");
  double b_p = 3.0;
  int b_k = 2, b_ref = 12;
  std::string b_out = "-";
  ball_cmd->add_option("--k", b_k, "boundary dimension");
  ball_cmd->add_option("--p", b_p, "Lebesgue exponent (finite)");
  ball_cmd->add_option("--refinement", b_ref, "endpoint refinement levels");
  ball_cmd->add_option("--out", b_out, "output path or '-'");

  // compare-laplacian
  auto* cmp_cmd = app.add_subcommand("compare-laplacian", "Squared-operator parabola vs function Laplacian");
  double x_c = 1.0, x_lambda0 = 0.0, x_smax = 3.0;
  int x_k = 2, x_samples = 201;
  std::string x_p = "1", x_format = "csv", x_out = "-";
  cmp_cmd->add_option("--c", x_c, "curvature scale (comparison is at c=1)");
  cmp_cmd->add_option("--k", x_k, "sphere dimension");
  cmp_cmd->add_option("--lambda0", x_lambda0, "lowest |eigenvalue|");
  cmp_cmd->add_option("--p", x_p, "Lebesgue exponent");
  cmp_cmd->add_option("--s-max", x_smax, "parameter range");
  cmp_cmd->add_option("--samples", x_samples, "samples");
  cmp_cmd->add_option("--format", x_format, "csv | svg");
  cmp_cmd->add_option("--out", x_out, "output path or '-'");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (region_cmd->parsed())
      return cmd_region(r_c, r_k, FactorArgs{r_lambda0, r_factor}, r_p, r_smax,
                        r_samples, r_panels, r_format, r_out);
    if (member_cmd->parsed())
      return cmd_membership(m_c, m_k, FactorArgs{m_lambda0, m_factor}, m_p, m_mu,
                            m_tol);
    if (radial_cmd->parsed())
      return cmd_radial(d_c, d_k, d_rho, rho_opt->count() > 0, d_lambda, d_mu,
                        d_branch, d_r0, d_r1, d_steps, d_fit_lo, d_fit_hi, d_out);
    if (weyl_cmd->parsed())
      return cmd_weyl(w_k, w_p, w_s, w_sign, w_nlist, w_squared, w_out);
    if (ball_cmd->parsed()) return cmd_ball(b_k, b_p, b_ref, b_out);
    if (cmp_cmd->parsed())
      return cmd_compare_laplacian(x_c, x_k, x_lambda0, x_p, x_smax, x_samples,
                                   x_format, x_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "dirac-spectra: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dirac-spectra: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace dirac_spectra::cli
