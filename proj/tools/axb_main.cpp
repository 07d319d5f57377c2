// Command-line driver: kernel sweeps, verification suites, and report
// emission.  Exit codes: 0 all checks pass, 1 a check failed, 2 invalid
// configuration, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "axb/estimates.hpp"
#include "axb/group.hpp"
#include "axb/parallel.hpp"
#include "axb/report.hpp"
#include "axb/resolvent.hpp"
#include "axb/spectral.hpp"
#include "axb/transfer.hpp"

namespace {

using axb::Cx;

double wall_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// grid syntax: "start:stop:count" (inclusive linear grid), a comma list, or a
// single number
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto parse_one = [](const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3)
      throw std::invalid_argument("grid must be start:stop:count");
    double a = parse_one(parts[0]), b = parse_one(parts[1]);
    long count = std::lround(parse_one(parts[2]));
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    if (count == 1) return {a};
    for (long i = 0; i < count; ++i)
      out.push_back(a + (b - a) * static_cast<double>(i) /
                            static_cast<double>(count - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_one(tok));
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

axb::MultiplierProfile profile_by_name(const std::string& name, double tau) {
  if (name == "low") return axb::MultiplierProfile::bump_low();
  if (name == "band") return axb::MultiplierProfile::bump_band();
  if (name == "wide") return axb::MultiplierProfile::bump_wide();
  if (name == "heat") return axb::MultiplierProfile::gauss_heat(tau);
  throw std::invalid_argument("unknown profile: " + name);
}

struct CommonOpts {
  double rel_tol = 1e-8;
  double abs_tol = 1e-13;
  std::string out;  // empty = stdout
  std::string format = "json";
  unsigned long seed = 1;
  int threads = 0;  // 0 = AXB_THREADS / hardware

  axb::QuadSpec quad() const {
    axb::QuadSpec q;
    q.rel_tol = rel_tol;
    q.abs_tol = abs_tol;
    q.validate();
    return q;
  }
  void add_to(CLI::App* app) {
    app->add_option("--rel-tol", rel_tol, "relative quadrature tolerance");
    app->add_option("--abs-tol", abs_tol, "absolute quadrature tolerance");
    app->add_option("--out,-o", out, "output path (default stdout)");
    app->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--seed", seed, "RNG seed for sampled points");
    app->add_option("--threads", threads,
                    "worker threads (0 = AXB_THREADS or hardware)");
  }
  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out);
    f << text;
  }
};

std::string config_echo(const CLI::App& sub) {
  std::ostringstream os;
  os << sub.get_name();
  for (const auto* opt : sub.get_options())
    if (opt->count() > 0 && !opt->get_name().empty())
      for (const auto& r : opt->results()) os << " " << opt->get_name() << "=" << r;
  return os.str();
}

std::string json_report(const axb::EstimateReport& rep, const CLI::App& sub) {
  return axb::report_to_json(rep, config_echo(sub)) + "\n";
}

// radial sample point at the given distance: x = 0, |y|^2 = 2(ch R - 1)
axb::GroupPoint point_at(int n, double R) {
  std::vector<double> y(n, 0.0);
  y[0] = std::sqrt(std::max(0.0, 2.0 * (std::cosh(R) - 1.0)));
  return axb::GroupPoint(n, 0.0, y);
}

int run_kernel(const CommonOpts& opts, int n, std::optional<int> l_opt,
               double lambda, double t, const std::string& r_grid,
               const std::string& profile_name, double tau,
               const CLI::App& sub) {
  const int l = l_opt.value_or(axb::spectral_default_l(n));
  const auto grid = parse_grid(r_grid);
  const auto psi = profile_by_name(profile_name, tau);
  const auto q = opts.quad();
  struct Row {
    double R, x, re, im, err;
  };
  std::vector<Row> rows(grid.size());
  axb::parallel_for(
      grid.size(),
      [&](std::size_t i) {
        const double R = grid[i];
        const auto g = point_at(n, R);
        const auto s = axb::wave_kernel(n, l, psi, lambda, t, g, q);
        rows[i] = {R, g.x, s.value.real(), s.value.imag(), s.error_estimate};
      },
      opts.threads);
  if (opts.format == "csv") {
    std::string doc = axb::csv_row({"R", "x", "Re k", "Im k", "err"});
    for (const auto& r : rows)
      doc += axb::csv_row({axb::format_g17(r.R), axb::format_g17(r.x),
                           axb::format_g17(r.re), axb::format_g17(r.im),
                           axb::format_g17(r.err)});
    opts.emit(doc);
  } else {
    nlohmann::json j;
    j["schema_version"] = axb::report_schema_version();
    j["git_describe"] = axb::build_git_describe();
    j["config"] = config_echo(sub);
    j["columns"] = {"R", "x", "Re k", "Im k", "err"};
    auto& data = j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) data.push_back({r.R, r.x, r.re, r.im, r.err});
    opts.emit(j.dump(2) + "\n");
  }
  return 0;
}

int run_oracle(const CommonOpts& opts, double lambda, double t,
               const std::string& profile_name, double tau, double max_rel,
               const CLI::App& sub) {
  const auto psi = profile_by_name(profile_name, tau);
  const auto q = opts.quad();
  const double t0 = wall_seconds();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uR(0.2, 4.0);
  std::vector<axb::GroupPoint> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(point_at(2, uR(rng)));
  const double err = axb::cross_validate(lambda, t, psi, pts, q);
  axb::EstimateReport rep;
  rep.task = "oracle";
  {
    std::ostringstream os;
    os << "lambda=" << lambda << " t=" << t << " profile=" << profile_name
       << " points=" << pts.size();
    rep.grid = os.str();
  }
  rep.fitted_constant = err;
  rep.details.emplace_back("max_rel_error", err);
  rep.details.emplace_back("tolerance", max_rel);
  rep.pass = err <= max_rel;
  rep.runtime_seconds = wall_seconds() - t0;
  opts.emit(json_report(rep, sub));
  return rep.pass ? 0 : 1;
}

int run_envelope(const CommonOpts& opts, int n, const std::string& regime,
                 int N, const std::string& lambda_grid,
                 const std::string& r_grid, const std::string& rho_grid,
                 const std::string& profile_name, double tau,
                 const CLI::App& sub) {
  axb::EnvelopeSpec spec;
  spec.n = n;
  spec.N = N;
  if (regime == "large-R")
    spec.regime = axb::EnvelopeSpec::Regime::large_R;
  else if (regime == "small-R")
    spec.regime = axb::EnvelopeSpec::Regime::small_R;
  else if (regime == "small-R-improved")
    spec.regime = axb::EnvelopeSpec::Regime::small_R_improved;
  else
    throw std::invalid_argument("unknown regime: " + regime);
  const auto rep = axb::check_envelope(
      spec, profile_by_name(profile_name, tau), parse_grid(lambda_grid),
      parse_grid(r_grid), parse_grid(rho_grid), opts.quad());
  opts.emit(json_report(rep, sub));
  return rep.pass ? 0 : 1;
}

int run_l1growth(const CommonOpts& opts, int n, double lambda, double eps,
                 const std::string& t_grid, const std::string& profile_name,
                 double tau, const CLI::App& sub) {
  const auto rep =
      axb::check_l1_growth(n, profile_by_name(profile_name, tau), lambda, eps,
                           parse_grid(t_grid), opts.quad());
  opts.emit(json_report(rep, sub));
  return rep.pass ? 0 : 1;
}

int run_supnorm(const CommonOpts& opts, int n, const std::string& lambda_grid,
                const std::string& t_grid, const CLI::App& sub) {
  const auto rep = axb::check_supnorm(n, parse_grid(lambda_grid),
                                      parse_grid(t_grid), opts.quad());
  opts.emit(json_report(rep, sub));
  return rep.pass ? 0 : 1;
}

int run_hs(const CommonOpts& opts, int n, double lambda, double eps,
           double s_order, const CLI::App& sub) {
  // C^7 bump supported in [1, 2] on the spectral-square axis
  auto F = [](double u) {
    return axb::smoothstep7((u - 1.0) / 0.3) -
           axb::smoothstep7((u - 1.7) / 0.3);
  };
  const auto rep =
      axb::check_hebisch_steger(n, F, lambda, eps, s_order, opts.quad());
  opts.emit(json_report(rep, sub));
  return rep.pass ? 0 : 1;
}

int run_resolvent_suite(const CommonOpts& opts, const CLI::App& sub) {
  const double t0 = wall_seconds();
  const auto q = opts.quad();
  axb::EstimateReport rep;
  rep.task = "resolvent-suite";
  rep.grid = "closed-form n=2; ode residual n in {1,2,3}; continuation l vs l+1";
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ux(-1.5, 1.5), uy(-2.0, 2.0);

  // closed form at n = 2
  double closed_err = 0.0;
  for (int i = 0; i < 12; ++i) {
    axb::GroupPoint g(2, ux(rng), {uy(rng), uy(rng)});
    if (axb::radial_distance(g) < 1e-3) continue;
    axb::ResolventParams p(2, Cx(-1.0, 0.0));
    const double R = axb::radial_distance(g);
    const Cx want =
        std::exp(-g.x) * std::exp(p.nu * R) / std::sinh(R) / (4.0 * M_PI);
    const Cx got = axb::resolvent_kernel(p, g, q);
    closed_err = std::max(closed_err, std::abs(got - want) / std::abs(want));
  }
  rep.details.emplace_back("closed_form_max_rel_error", closed_err);

  // ODE residual
  double ode_max = 0.0;
  for (int n : {1, 2, 3}) {
    axb::ResolventParams p(n, Cx(-0.5, -0.5));
    for (double d : {1.05, 1.5, 3.0, 8.0})
      ode_max = std::max(ode_max, axb::ode_residual(p, d));
  }
  rep.details.emplace_back("ode_residual_max", ode_max);

  // continuation: l vs l + 1 at fractional n
  double cont_err = 0.0;
  for (double n : {1.5, 2.5}) {
    const int l = static_cast<int>(std::floor(n / 2.0)) + 1;
    for (double R : {0.3, 1.0, 3.0}) {
      const Cx nu{-0.7, 0.4};
      const Cx a = axb::f0_profile(n, l, nu, R, q);
      const Cx b = axb::f0_profile(n, l + 1, nu, R, q);
      cont_err = std::max(cont_err, std::abs(a - b) / std::abs(a));
    }
  }
  rep.details.emplace_back("continuation_max_rel_error", cont_err);

  rep.pass = closed_err <= 1e-8 && ode_max <= 1e-4 && cont_err <= 1e-7;
  rep.fitted_constant = std::max({closed_err, ode_max, cont_err});
  rep.runtime_seconds = wall_seconds() - t0;
  opts.emit(json_report(rep, sub));
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel evaluation and estimate verification for the "
               "distinguished Laplacian on ax+b groups"};
  app.require_subcommand(1);
  CommonOpts opts;

  int n = 2, N = 4;
  std::optional<int> l_opt;
  double lambda = 1.0, t = 1.0, eps = 0.5, tau = 1.0, s_order = 2.1;
  double oracle_tol = 1e-4;
  std::string r_grid = "0.1:6:50", lambda_grid = "2,8", t_grid = "1,2,4,8";
  std::string rho_grid = "0:1:5", regime = "large-R", profile = "band";

  auto add_common_model = [&](CLI::App* c, bool with_l) {
    c->add_option("--n", n, "dimension of the normal factor")
        ->check(CLI::Range(1, 8));
    if (with_l) c->add_option("--l", l_opt, "derivative order (default n/2)");
    opts.add_to(c);
  };

  CLI::App* kernel = app.add_subcommand(
      "kernel", "evaluate the localized wave kernel on an R-grid");
  add_common_model(kernel, true);
  kernel->add_option("--lambda", lambda, "frequency localization");
  kernel->add_option("--t", t, "time");
  kernel->add_option("--R", r_grid, "R grid, start:stop:count");
  kernel->add_option("--profile", profile, "low|band|wide|heat");
  kernel->add_option("--tau", tau, "heat profile time");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "cross-validate the n=2 wave kernel against the transfer "
                "principle");
  opts.add_to(oracle);
  oracle->add_option("--lambda", lambda, "frequency localization");
  oracle->add_option("--t", t, "time");
  oracle->add_option("--profile", profile, "low|band|wide");
  oracle->add_option("--tau", tau, "heat profile time");
  oracle->add_option("--max-rel-error", oracle_tol, "pass threshold");

  CLI::App* envelope =
      app.add_subcommand("envelope", "fit the pointwise envelope constant");
  add_common_model(envelope, false);
  envelope->add_option("--regime", regime,
                       "large-R|small-R|small-R-improved");
  envelope->add_option("--N", N, "decay order");
  envelope->add_option("--lambda", lambda_grid, "lambda grid");
  envelope->add_option("--R", r_grid, "R grid");
  envelope->add_option("--rho", rho_grid, "offset grid");
  envelope->add_option("--profile", profile, "low|band|wide");
  envelope->add_option("--tau", tau, "heat profile time");

  CLI::App* l1growth = app.add_subcommand(
      "l1growth", "weighted L1 growth exponent of the rescaled wave kernel");
  add_common_model(l1growth, false);
  l1growth->add_option("--lambda", lambda, "frequency localization");
  l1growth->add_option("--eps", eps, "weight exponent");
  l1growth->add_option("--t", t_grid, "t grid");
  l1growth->add_option("--profile", profile, "low|band|wide");
  l1growth->add_option("--tau", tau, "heat profile time");

  CLI::App* supnorm =
      app.add_subcommand("supnorm", "sup-norm bound over a (lambda, t) grid");
  add_common_model(supnorm, false);
  supnorm->add_option("--lambda", lambda_grid, "lambda grid");
  supnorm->add_option("--t", t_grid, "t grid");

  CLI::App* hs = app.add_subcommand(
      "hs", "weighted L1 norm against the Sobolev norm of the multiplier");
  add_common_model(hs, false);
  hs->add_option("--lambda", lambda, "spectral scale");
  hs->add_option("--eps", eps, "weight exponent");
  hs->add_option("--s-order", s_order, "Sobolev order");

  CLI::App* rsuite = app.add_subcommand(
      "resolvent-suite", "resolvent closed form, ODE residual, continuation");
  opts.add_to(rsuite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*kernel)
      return run_kernel(opts, n, l_opt, lambda, t, r_grid, profile, tau,
                        *kernel);
    if (*oracle)
      return run_oracle(opts, lambda, t, profile, tau, oracle_tol, *oracle);
    if (*envelope)
      return run_envelope(opts, n, regime, N, lambda_grid, r_grid, rho_grid,
                          profile, tau, *envelope);
    if (*l1growth)
      return run_l1growth(opts, n, lambda, eps, t_grid, profile, tau,
                          *l1growth);
    if (*supnorm) return run_supnorm(opts, n, lambda_grid, t_grid, *supnorm);
    if (*hs) return run_hs(opts, n, lambda, eps, s_order, *hs);
    if (*rsuite) return run_resolvent_suite(opts, *rsuite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
