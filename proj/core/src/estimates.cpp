#include "axb/estimates.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "axb/group.hpp"
#include "axb/parallel.hpp"

namespace axb {

namespace {

constexpr double kPi = 3.14159265358979323846;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// least squares y = a + b x; returns (b, standard error of b)
std::pair<double, double> fit_slope(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = m * sxx - sx * sx;
  const double b = (m * sxy - sx * sy) / denom;
  const double a = (sy - b * sx) / m;
  double rss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = y[i] - a - b * x[i];
    rss += r * r;
  }
  double se = (m > 2) ? std::sqrt(rss / (m - 2) * m / denom) : 0.0;
  return {b, se};
}

std::vector<double> midpoint_refine(const std::vector<double>& g) {
  std::vector<double> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.push_back(g[i]);
    if (i + 1 < g.size()) out.push_back(0.5 * (g[i] + g[i + 1]));
  }
  return out;
}

// deterministic trapezoid over an explicit grid with parallel evaluation
double trapezoid_grid(const std::vector<double>& grid, const ReFn& f) {
  std::vector<double> vals(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { vals[i] = f(grid[i]); });
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    acc += 0.5 * (vals[i] + vals[i + 1]) * (grid[i + 1] - grid[i]);
  return acc;
}

void append_range(std::vector<double>& g, double a, double b, double step) {
  if (!(b > a) || !(step > 0)) return;
  int m = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  for (int i = 0; i <= m; ++i) g.push_back(a + (b - a) * i / m);
}

std::vector<double> sorted_unique(std::vector<double> g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-12; }),
          g.end());
  return g;
}

}  // namespace

double EnvelopeSpec::predicted(double R, double rho, double lambda) const {
  const double dec = std::pow(1.0 + std::abs(lambda * rho), -static_cast<double>(N));
  switch (regime) {
    case Regime::large_R:
      return (lambda >= 1.0 ? std::pow(lambda, 0.5 * n + 1.0)
                            : lambda * lambda) *
             dec;
    case Regime::small_R:
      if (n == 1) {
        double lam = (lambda >= 1.0) ? std::pow(lambda, 1.5) : lambda * lambda;
        return std::pow(R, -0.5) * lam * dec;
      }
      if (lambda >= 1.0)
        return (std::pow(R, 1.0 - n) * lambda * lambda +
                std::pow(R, -0.5 * n) * std::pow(lambda, 0.5 * n + 1.0)) *
               dec;
      return std::pow(R, 1.0 - n) * lambda * lambda * dec;
    case Regime::small_R_improved:
      return (lambda >= 1.0 ? std::pow(lambda, n + 1.0) : lambda * lambda) *
             dec;
  }
  return 0.0;
}

EstimateReport check_envelope(const EnvelopeSpec& spec,
                              const MultiplierProfile& psi,
                              const std::vector<double>& lambda_grid,
                              const std::vector<double>& R_grid,
                              const std::vector<double>& rho_grid,
                              const QuadSpec& quad) {
  const double t0 = now_seconds();
  EstimateReport rep;
  rep.task = "envelope";
  {
    std::ostringstream os;
    os << "lambda x R x rho = " << lambda_grid.size() << " x " << R_grid.size()
       << " x " << rho_grid.size() << ", N=" << spec.N << ", n=" << spec.n;
    rep.grid = os.str();
  }
  auto fit = [&](const std::vector<double>& Rs, const std::vector<double>& rhos,
                 const QuadSpec& q) {
    double worst = 0.0;
    for (double lam : lambda_grid) {
      const int l = spectral_default_l(spec.n);
      std::vector<double> local(Rs.size());
      parallel_for(Rs.size(), [&](std::size_t i) {
        WavePlan plan(spec.n, l, psi, lam, Rs[i], q);
        double w = 0.0;
        for (double rho : rhos)
          w = std::max(w, std::abs(plan.G(rho)) /
                              spec.predicted(Rs[i], rho, lam));
        local[i] = w;
      });
      for (double w : local) worst = std::max(worst, w);
    }
    return worst;
  };
  rep.fitted_constant = fit(R_grid, rho_grid, quad);
  QuadSpec fine = quad;
  fine.rel_tol = quad.rel_tol * 0.1;
  rep.refined_constant =
      fit(midpoint_refine(R_grid), midpoint_refine(rho_grid), fine);
  const double drift =
      std::abs(rep.refined_constant - rep.fitted_constant) /
      std::max(rep.fitted_constant, 1e-300);
  rep.details.emplace_back("drift", drift);
  rep.pass = std::isfinite(rep.fitted_constant) &&
             std::isfinite(rep.refined_constant) && rep.fitted_constant > 0 &&
             drift <= 0.2;
  rep.runtime_seconds = now_seconds() - t0;
  return rep;
}

EstimateReport check_l1_growth(int n, const MultiplierProfile& psi,
                               double lambda, double epsilon,
                               const std::vector<double>& t_grid,
                               const QuadSpec& quad) {
  const double t0 = now_seconds();
  if (t_grid.size() < 2)
    throw std::invalid_argument("check_l1_growth: need at least two t values");
  EstimateReport rep;
  rep.task = "l1growth";
  {
    std::ostringstream os;
    os << "n=" << n << " lambda=" << lambda << " eps=" << epsilon << " t=[";
    for (double t : t_grid) os << t << " ";
    os << "]";
    rep.grid = os.str();
  }
  QuadSpec q = quad;
  q.rel_tol = std::max(quad.rel_tol, 1e-7);
  q.tail_cutoff_decades = std::min(quad.tail_cutoff_decades, 10.0);
  const int l = spectral_default_l(n);

  std::vector<double> xs, ys;
  for (double t : t_grid) {
    const double tp = t / lambda;  // rescaled time of W_lambda^t
    std::vector<double> grid;
    const double halo = 15.0 / lambda;
    append_range(grid, std::max(1e-3, tp - halo), tp + halo,
                 0.4 / std::max(1.0, lambda));
    if (tp - halo > 1e-3) append_range(grid, 1e-3, tp - halo, 0.25);
    append_range(grid, tp + halo, tp + halo + 24.0, 0.5);
    grid = sorted_unique(grid);
    auto f = [&](double R) {
      WavePlan plan(n, l, psi, lambda, R, q);
      double g = std::exp(-0.5 * n * R) *
                 std::abs(plan.G(R - tp) + plan.G(R + tp)) *
                 std::pow(1.0 + lambda * R, epsilon);
      return g * radial_density(n, R, q).value.real();
    };
    const double I = trapezoid_grid(grid, f);
    rep.details.emplace_back("integral_t=" + std::to_string(t), I);
    xs.push_back(std::log(1.0 + t));
    ys.push_back(std::log(std::max(I, 1e-300)));
  }
  auto [slope, se] = fit_slope(xs, ys);
  rep.growth_exponent_fit = slope;
  rep.exponent_band = 2.0 * se;
  const bool all_below = *std::max_element(t_grid.begin(), t_grid.end()) <=
                         lambda + 1e-12;
  if (lambda > 1.0 && all_below)
    rep.predicted_exponent = (n >= 2) ? 0.5 * n + epsilon : 1.0 + epsilon;
  else
    rep.predicted_exponent = 1.0 + epsilon;
  rep.pass = std::isfinite(slope) &&
             slope <= rep.predicted_exponent + 0.3;
  rep.runtime_seconds = now_seconds() - t0;
  return rep;
}

ElementaryBounds elementary_bounds(double alpha, double lambda, double t,
                                   double N, const QuadSpec& quad) {
  if (!(alpha >= 0) || !(t >= 0))
    throw std::invalid_argument("elementary_bounds: need alpha >= 0, t >= 0");
  if (!(lambda > 0))
    throw std::invalid_argument("elementary_bounds: lambda must be > 0");
  if (!(N > alpha + 1.0))
    throw std::invalid_argument("elementary_bounds: need N > alpha + 1");
  auto weight = [&](double R) {
    return std::pow(1.0 + std::abs(lambda * R - t), -N) * std::pow(R, alpha);
  };
  const double kink = t / lambda;  // |.| is non-smooth here
  ElementaryBounds out;
  {
    CxFn f = [&](double R) { return Cx(weight(R), 0.0); };
    double mid = (kink > 0 && kink < 1) ? kink : 0.5;
    out.I0 = integrate_osc(f, 0.0, mid, 0.0, quad).value.real() +
             integrate_osc(f, mid, 1.0, 0.0, quad).value.real();
  }
  {
    // R = 1/u turns [1, inf) into (0, 1]; integrand ~ u^{N - alpha - 2} at 0
    CxFn h = [&](double u) {
      double R = 1.0 / u;
      return Cx(weight(R) / (u * u), 0.0);
    };
    const double beta = N - alpha - 2.0;
    double ukink = (kink > 1.0) ? 1.0 / kink : 0.5;
    if (beta < 0) {
      // singular at u = 0
      out.Iinf =
          integrate_power_endpoint(h, beta, ukink, quad).value.real() +
          integrate_osc(h, ukink, 1.0, 0.0, quad).value.real();
    } else {
      CxFn h0 = [&](double u) { return (u == 0.0) ? Cx{0, 0} : h(u); };
      out.Iinf = integrate_osc(h0, 0.0, ukink, 0.0, quad).value.real() +
                 integrate_osc(h0, ukink, 1.0, 0.0, quad).value.real();
    }
  }
  out.bound0 = (t <= 2.0 * lambda)
                   ? std::pow(1.0 + lambda, -alpha - 1.0) *
                         std::pow(1.0 + t, alpha)
                   : std::pow(1.0 + t, -N);
  out.boundinf = (t <= 0.5 * lambda)
                     ? std::pow(lambda, -alpha - 1.0) *
                           std::pow(1.0 + lambda, -N + alpha + 1.0)
                     : std::pow(lambda, -alpha - 1.0) *
                           std::pow(1.0 + t, alpha);
  out.ratio0 = out.I0 / out.bound0;
  out.ratioinf = out.Iinf / out.boundinf;
  return out;
}

EstimateReport check_supnorm(int n, const std::vector<double>& lambda_grid,
                             const std::vector<double>& t_grid,
                             const QuadSpec& quad) {
  const double t0 = now_seconds();
  EstimateReport rep;
  rep.task = "supnorm";
  {
    std::ostringstream os;
    os << "n=" << n << " lambda x t = " << lambda_grid.size() << " x "
       << t_grid.size();
    rep.grid = os.str();
  }
  const MultiplierProfile psi = MultiplierProfile::bump_band();
  const int l = spectral_default_l(n);
  QuadSpec q = quad;
  q.rel_tol = std::max(quad.rel_tol, 1e-7);
  q.tail_cutoff_decades = std::min(quad.tail_cutoff_decades, 10.0);

  double worst = 0.0, best = std::numeric_limits<double>::infinity();
  for (double lam : lambda_grid) {
    if (!(lam >= 1.0))
      throw std::invalid_argument("check_supnorm: lambda must be >= 1");
    for (double t : t_grid) {
      std::vector<double> grid;
      append_range(grid, std::max(1e-3, t - 12.0 / lam), t + 12.0 / lam,
                   0.2 / lam);
      append_range(grid, 0.05, std::max(1.0, t), 0.25);
      grid = sorted_unique(grid);
      std::vector<double> vals(grid.size());
      parallel_for(grid.size(), [&](std::size_t i) {
        WavePlan plan(n, l, psi, lam, grid[i], q);
        vals[i] = std::abs(plan.G(grid[i] - t));
      });
      double sup = 0.0;
      for (double v : vals) sup = std::max(sup, v);
      const double env =
          (1.0 + std::pow(t, -0.5 * n)) * std::pow(lam, 0.5 * n + 1.0);
      const double ratio = sup / env;
      {
        std::ostringstream os;
        os << "ratio_lambda=" << lam << "_t=" << t;
        rep.details.emplace_back(os.str(), ratio);
      }
      worst = std::max(worst, ratio);
      best = std::min(best, ratio);
    }
  }
  rep.fitted_constant = worst;
  rep.refined_constant = best;  // spread lower end, for stability inspection
  rep.pass = std::isfinite(worst) && worst > 0;
  rep.runtime_seconds = now_seconds() - t0;
  return rep;
}

double sobolev_hs_norm(const std::function<double(double)>& F, double s_order,
                       const QuadSpec& quad) {
  (void)quad;
  // f(v) = F(v^2) supported in v in [1, sqrt(2)].  Both fhat and the density
  // are entire/smooth with known oscillation scales, so fixed composite
  // Gauss-Legendre panels sized to the local period are accurate and cheap.
  const auto& rule = detail::panel_rule();
  const double a = 1.0, b = std::sqrt(2.0);
  auto fhat = [&](double xi) {
    // 2 * int_a^b F(v^2) cos(xi v) dv; panel width <= ~3/xi radians of phase
    int np = std::max(2, static_cast<int>(std::ceil(std::abs(xi) * (b - a) / 3.0)));
    double h = (b - a) / np, acc = 0.0;
    for (int p = 0; p < np; ++p) {
      double lo = a + p * h;
      for (int i = 0; i < 15; ++i) {
        double v = lo + 0.5 * h * (1.0 + rule.x15[i]);
        acc += 0.5 * h * rule.w15[i] * F(v * v) * std::cos(xi * v);
      }
    }
    return 2.0 * acc;
  };
  // |fhat|^2 oscillates at scale ~ 2 sqrt(2) in xi: unit-width panels give
  // ~15 nodes per half period.  Beyond xi ~ 250 the C^7 profile has decayed
  // far below the accumulated integral for any s_order <= 3.
  double acc = 0.0;
  for (int p = 0; p < 250; ++p)
    for (int i = 0; i < 15; ++i) {
      double xi = p + 0.5 * (1.0 + rule.x15[i]);
      double m = fhat(xi);
      acc += 0.5 * rule.w15[i] * m * m * std::pow(1.0 + xi, 2.0 * s_order);
    }
  return std::sqrt(acc / kPi);
}

EstimateReport check_hebisch_steger(int n,
                                    const std::function<double(double)>& F,
                                    double lambda, double epsilon,
                                    double s_order, const QuadSpec& quad) {
  const double t0 = now_seconds();
  EstimateReport rep;
  rep.task = "hs";
  {
    std::ostringstream os;
    os << "n=" << n << " lambda=" << lambda << " eps=" << epsilon
       << " s=" << s_order;
    rep.grid = os.str();
  }
  // psi(s) = F(s^2 / lambda^2) = f(s/lambda): kernel of F(L/lambda^2)
  MultiplierProfile prof = MultiplierProfile::custom(
      [F, lambda](double s) { return F(s * s / (lambda * lambda)); }, true, 7,
      lambda, lambda * std::sqrt(2.0));
  QuadSpec q = quad;
  q.rel_tol = std::max(quad.rel_tol, 1e-7);
  q.tail_cutoff_decades = std::min(quad.tail_cutoff_decades, 10.0);
  const int l = spectral_default_l(n);

  const double scale = std::max(1.0, lambda);
  std::vector<double> grid;
  append_range(grid, 1e-3, 40.0 / scale, 0.2 / scale);
  append_range(grid, 40.0 / scale, 40.0 / scale + 15.0, 0.5);
  grid = sorted_unique(grid);
  auto f = [&](double R) {
    WavePlan plan(n, l, prof, 1.0, R, q);
    double g = std::exp(-0.5 * n * R) * 2.0 * std::abs(plan.G(R)) *
               std::pow(1.0 + lambda * R, epsilon);
    return g * radial_density(n, R, q).value.real();
  };
  const double integral = trapezoid_grid(grid, f);
  const double norm = sobolev_hs_norm(F, s_order, quad);
  rep.details.emplace_back("weighted_l1", integral);
  rep.details.emplace_back("hs_norm", norm);
  rep.fitted_constant = (norm > 0) ? integral / norm : 0.0;
  rep.pass = std::isfinite(rep.fitted_constant);
  rep.runtime_seconds = now_seconds() - t0;
  return rep;
}

}  // namespace axb
