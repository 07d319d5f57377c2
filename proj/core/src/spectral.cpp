#include "axb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "axb/dsh.hpp"

namespace axb {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline Cx ipow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// M_k(w) = int_{-1}^1 P_k(x) e^{iwx} dx = 2 i^k j_k(w)
void legendre_moments(int kmax, double w, Cx* M) {
  double j[32];
  sph_bessel_array(kmax, std::abs(w), j);
  for (int k = 0; k <= kmax; ++k) {
    Cx m = 2.0 * ipow(k) * j[k];
    M[k] = (w >= 0) ? m : std::conj(m);
  }
}

double sign_l(int l) { return (l % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double smoothstep7(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // x^8 sum_{k=0}^{7} C(7+k,k) C(15,7-k) (-x)^k
  static const double c[8] = {6435.0,  -40040.0, 108108.0, -163800.0,
                              150150.0, -83160.0, 25740.0,  -3432.0};
  double acc = 0.0;
  for (int k = 7; k >= 0; --k) acc = acc * x + c[k];
  return acc * std::pow(x, 8);
}

double MultiplierProfile::cutoff(double decades) const {
  if (std::isfinite(support_hi)) return support_hi;
  if (tau > 0) return std::sqrt(decades * std::log(10.0) / tau);
  throw std::invalid_argument("MultiplierProfile: unbounded support without decay");
}

MultiplierProfile MultiplierProfile::bump_low() {
  MultiplierProfile p;
  p.kind = Kind::bump_low;
  p.support_lo = 0.0;
  p.support_hi = 2.0;
  p.breakpoints = {1.0, 2.0};
  p.eval = [](double s) { return 1.0 - smoothstep7(std::abs(s) - 1.0); };
  return p;
}

MultiplierProfile MultiplierProfile::bump_band() {
  MultiplierProfile p;
  p.kind = Kind::bump_band;
  p.support_lo = 1.0;
  p.support_hi = 2.0;
  p.breakpoints = {1.0, 1.25, 1.75, 2.0};
  p.eval = [](double s) {
    double a = std::abs(s);
    return smoothstep7((a - 1.0) / 0.25) - smoothstep7((a - 1.75) / 0.25);
  };
  return p;
}

MultiplierProfile MultiplierProfile::bump_wide() {
  MultiplierProfile p;
  p.kind = Kind::bump_wide;
  p.support_lo = 0.5;
  p.support_hi = 4.0;
  p.breakpoints = {0.5, 1.0, 2.0, 4.0};
  p.eval = [](double s) {
    double a = std::abs(s);
    return smoothstep7((a - 0.5) / 0.5) - smoothstep7((a - 2.0) / 2.0);
  };
  return p;
}

MultiplierProfile MultiplierProfile::gauss_heat(double tau) {
  if (!(tau > 0))
    throw std::invalid_argument("gauss_heat: tau must be positive");
  MultiplierProfile p;
  p.kind = Kind::gauss_heat;
  p.smoothness = 1000;  // smooth
  p.support_lo = 0.0;
  p.support_hi = std::numeric_limits<double>::infinity();
  p.tau = tau;
  p.eval = [tau](double s) { return std::exp(-tau * s * s); };
  return p;
}

MultiplierProfile MultiplierProfile::custom(std::function<double(double)> f,
                                            bool even, int smoothness,
                                            double lo, double hi) {
  MultiplierProfile p;
  p.kind = Kind::custom;
  p.even = even;
  p.smoothness = smoothness;
  p.support_lo = lo;
  p.support_hi = hi;
  p.eval = std::move(f);
  return p;
}

int spectral_default_l(int n) {
  if (n < 1) throw std::invalid_argument("spectral_default_l: n must be >= 1");
  return (n % 2 == 0) ? n / 2 : (n - 1) / 2;
}

double kappa_const(double n, int l) {
  return std::pow(2.0, -1.0 - 0.5 * n) * std::pow(kPi, -0.5 * n) /
         std::tgamma(1.0 - 0.5 * n + l);
}

Cx F_R(int n, int l, double R, double s, const QuadSpec& spec) {
  if (!(l - 0.5 * n > -1.0))
    throw std::invalid_argument("F_R: need l - n/2 > -1");
  if (!(R > 0)) throw std::invalid_argument("F_R: R must be > 0");
  // the rule supplies the e^{isv} phase; pass the smooth factor e^{-isv} D^l
  CxFn f = [l, s](double v) {
    return dsh_apply_exp(l, Cx(0.0, s), v) * std::exp(Cx(0.0, -s * v));
  };
  return integrate_singular_osc(f, l - 0.5 * n, R, s,
                                std::numeric_limits<double>::infinity(),
                                0.5 * n, spec)
      .value;
}

double F_R_sin(int n, int l, double R, double s, const QuadSpec& spec) {
  if (!(l - 0.5 * n > -1.0))
    throw std::invalid_argument("F_R_sin: need l - n/2 > -1");
  if (!(R > 0)) throw std::invalid_argument("F_R_sin: R must be > 0");
  if (!(s >= 0)) throw std::invalid_argument("F_R_sin: s must be >= 0");
  CxFn f = [l, s](double v) { return Cx(dsh_apply_sin(l, s, v), 0.0); };
  return integrate_singular_osc(f, l - 0.5 * n, R, 0.0,
                                std::numeric_limits<double>::infinity(),
                                0.5 * n, spec)
      .value.real();
}

// ---------------------------------------------------------------------------

WavePlan::WavePlan(int n, int l, const MultiplierProfile& psi, double lambda,
                   double R, const QuadSpec& spec)
    : n_(n), l_(l), lambda_(lambda), R_(R) {
  spec.validate();
  if (!(lambda > 0)) throw std::invalid_argument("WavePlan: lambda must be > 0");
  if (!(R > 0)) throw std::invalid_argument("WavePlan: R must be > 0");
  if (!psi.even)
    throw std::invalid_argument("WavePlan: profile must be even");
  coef_ = sign_l(l) * kappa_const(n, l) / kPi * std::exp(0.5 * n * R);

  const double s0 = lambda * psi.support_lo;
  const double s1 = lambda * psi.cutoff(spec.tail_cutoff_decades + 2.0);
  if (!(s1 > s0)) throw std::invalid_argument("WavePlan: empty support");

  QuadSpec inner = spec;
  inner.rel_tol = std::max(spec.rel_tol * 0.1, 1e-13);
  inner.abs_tol = spec.abs_tol * 0.1;

  const auto& rule = detail::panel_rule();
  auto make_panel = [&](double a, double b) {
    Panel p;
    p.c = 0.5 * (a + b);
    p.hh = 0.5 * (b - a);
    Cx h1[15];
    for (int i = 0; i < 15; ++i) {
      double s = p.c + p.hh * rule.x15[i];
      double w = psi(s / lambda);
      if (w == 0.0) {
        h1[i] = Cx{0.0, 0.0};
        continue;
      }
      Cx fr = F_R(n_, l_, R_, s, inner);
      h1[i] = w * std::exp(Cx(0.0, -R_ * s)) * fr;
    }
    for (int k = 0; k < 15; ++k) {
      Cx a1{0, 0}, as{0, 0};
      for (int i = 0; i < 15; ++i) {
        double s = p.c + p.hh * rule.x15[i];
        a1 += rule.leg15[k][i] * h1[i];
        as += rule.leg15[k][i] * (s * h1[i]);
      }
      p.c1[k] = a1;
      p.cs[k] = as;
    }
    p.tail_s = std::abs(p.cs[12]) + std::abs(p.cs[13]) + std::abs(p.cs[14]);
    p.tail_1 = std::abs(p.c1[12]) + std::abs(p.c1[13]) + std::abs(p.c1[14]);
    return p;
  };

  // initial panels aligned to the profile's join points
  std::vector<double> edges = {s0, s1};
  for (double b : psi.breakpoints) {
    double e = lambda * b;
    if (e > s0 && e < s1) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  std::deque<Panel> queue;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double a = edges[i], b = edges[i + 1];
    int m = std::max(2, static_cast<int>(std::ceil((b - a) / (0.25 * lambda))));
    for (int j = 0; j < m; ++j)
      queue.push_back(make_panel(a + (b - a) * j / m, a + (b - a) * (j + 1) / m));
  }

  double scale = 0.0;
  for (const auto& p : queue) scale = std::max(scale, std::abs(p.cs[0]));
  const int max_panels = 1000;
  // the node values carry the inner quadrature's relative noise; refining
  // below that floor never converges
  const double tol_rel =
      std::max({spec.rel_tol * 0.1, 1e-12, 20.0 * inner.rel_tol});
  int built = static_cast<int>(queue.size());
  while (!queue.empty()) {
    Panel p = queue.front();
    queue.pop_front();
    scale = std::max(scale, std::abs(p.cs[0]));
    double tol = tol_rel * std::max(scale, 1e-300);
    if ((p.tail_s <= tol && p.tail_1 <= tol * std::max(1.0, 1.0 / p.c)) ||
        built >= max_panels || 2.0 * p.hh < 1e-8 * lambda_) {
      panels_.push_back(p);
      continue;
    }
    queue.push_back(make_panel(p.c - p.hh, p.c));
    queue.push_back(make_panel(p.c, p.c + p.hh));
    ++built;
  }
  std::sort(panels_.begin(), panels_.end(),
            [](const Panel& a, const Panel& b) { return a.c < b.c; });
}

Cx WavePlan::moment_sum(const Panel& p, const Cx* coef, double rho) const {
  const double w = rho * p.hh;
  Cx M[15];
  legendre_moments(14, w, M);
  Cx acc{0, 0};
  for (int k = 0; k < 15; ++k) acc += coef[k] * M[k];
  return p.hh * std::exp(Cx(0.0, rho * p.c)) * acc;
}

double WavePlan::G(double rho) const {
  Cx P{0, 0};
  for (const auto& p : panels_) P += moment_sum(p, p.cs, rho);
  return coef_ * P.imag();
}

double WavePlan::G_error(double rho) const {
  (void)rho;
  double e = 0.0;
  for (const auto& p : panels_) e += 2.0 * p.hh * p.tail_s;
  return std::abs(coef_) * e;
}

double WavePlan::sin_block(double rho) const {
  Cx Q{0, 0};
  for (const auto& p : panels_) Q += moment_sum(p, p.c1, rho);
  return Q.real();
}

// ---------------------------------------------------------------------------

namespace {

void check_wave_profile(const MultiplierProfile& psi, double lambda) {
  if (!psi.even)
    throw std::invalid_argument("wave kernel: profile must be even");
  if (lambda > 1.0 && psi.kind == MultiplierProfile::Kind::bump_low)
    throw std::invalid_argument(
        "wave kernel: lambda > 1 needs a profile vanishing near 0 (bump_band)");
}

}  // namespace

WaveKernelSample wave_kernel(int n, int l, const MultiplierProfile& psi,
                             double lambda, double t, const GroupPoint& g,
                             const QuadSpec& spec) {
  check_wave_profile(psi, lambda);
  if (n != g.n) throw std::invalid_argument("wave_kernel: dimension mismatch");
  const double R = radial_distance(g);
  if (R == 0.0)
    throw std::domain_error("wave_kernel: evaluation at the identity");
  WavePlan plan(n, l, psi, lambda, R, spec);
  WaveKernelSample out;
  out.n = n;
  out.l = l;
  out.lambda = lambda;
  out.t = t;
  out.R = R;
  out.x = g.x;
  out.G_minus = plan.G(R - t);
  out.G_plus = plan.G(R + t);
  out.value = Cx(std::exp(-0.5 * n * g.x) * std::exp(-0.5 * n * R) *
                     (out.G_minus + out.G_plus),
                 0.0);
  out.error_estimate = std::exp(-0.5 * n * g.x) * std::exp(-0.5 * n * R) *
                       (plan.G_error(R - t) + plan.G_error(R + t));
  return out;
}

WaveKernelSample wave_kernel_rescaled(int n, int l,
                                      const MultiplierProfile& psi,
                                      double lambda, double t,
                                      const GroupPoint& g,
                                      const QuadSpec& spec) {
  WaveKernelSample out = wave_kernel(n, l, psi, lambda, t / lambda, g, spec);
  out.t = t;
  return out;
}

double wave_kernel_sin(int n, int l, const MultiplierProfile& psi,
                       double lambda, double t, const GroupPoint& g,
                       const QuadSpec& spec) {
  check_wave_profile(psi, lambda);
  if (n != g.n)
    throw std::invalid_argument("wave_kernel_sin: dimension mismatch");
  const double R = radial_distance(g);
  if (R == 0.0)
    throw std::domain_error("wave_kernel_sin: evaluation at the identity");
  WavePlan plan(n, l, psi, lambda, R, spec);
  return sign_l(l) * kappa_const(n, l) / kPi * std::exp(-0.5 * n * g.x) *
         (plan.sin_block(R - t) - plan.sin_block(R + t));
}

// ---------------------------------------------------------------------------

double multiplier_kernel(int n, int l, const MultiplierProfile& psi,
                         const GroupPoint& g, const QuadSpec& spec) {
  if (n != g.n)
    throw std::invalid_argument("multiplier_kernel: dimension mismatch");
  if (!psi.even)
    throw std::invalid_argument("multiplier_kernel: profile must be even");
  const double R = radial_distance(g);
  if (R == 0.0)
    throw std::domain_error("multiplier_kernel: evaluation at the identity");
  WavePlan plan(n, l, psi, 1.0, R, spec);
  // k = e^{-nx/2} e^{-nR/2} * 2 G(R, R)
  return std::exp(-0.5 * n * g.x) * std::exp(-0.5 * n * R) * 2.0 * plan.G(R);
}

Cx multiplier_kernel_full(int n, int l, const MultiplierProfile& psi,
                          const GroupPoint& g, const QuadSpec& spec) {
  if (n != g.n)
    throw std::invalid_argument("multiplier_kernel_full: dimension mismatch");
  const double R = radial_distance(g);
  if (R == 0.0)
    throw std::domain_error("multiplier_kernel_full: evaluation at the identity");
  const double S = psi.cutoff(spec.tail_cutoff_decades + 2.0);
  QuadSpec inner = spec;
  inner.rel_tol = std::max(spec.rel_tol * 0.1, 1e-13);
  QuadSpec outer = spec;
  outer.oscillation_hint = R;  // F_R(s) carries the phase e^{iRs}
  CxFn f = [&](double s) {
    double w = psi(s);
    if (w == 0.0) return Cx{0.0, 0.0};
    return w * F_R(n, l, R, s, inner) * s;
  };
  Cx I = integrate_osc(f, -S, S, 0.0, outer).value;
  const Cx c_l = sign_l(l) / (kPi * Cx(0.0, 1.0)) * kappa_const(n, l);
  return c_l * std::exp(-0.5 * n * g.x) * I;
}

}  // namespace axb
