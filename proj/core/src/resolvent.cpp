#include "axb/resolvent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "axb/dsh.hpp"

namespace axb {

namespace {

int default_l(int n) { return (n % 2 == 0) ? n / 2 : (n - 1) / 2; }

void check_profile_args(double n, int l, Cx nu) {
  if (!(n > 0)) throw std::invalid_argument("f0_profile: n must be > 0");
  if (!(l - 0.5 * n > -1.0))
    throw std::invalid_argument("f0_profile: need l - n/2 > -1");
  if (!(nu.real() < 0))
    throw std::invalid_argument("f0_profile: Re(nu) must be < 0");
}

}  // namespace

ResolventParams::ResolventParams(int n_, Cx lambda_, std::optional<int> l_)
    : n(n_), lambda(lambda_) {
  if (n < 1) throw std::invalid_argument("ResolventParams: n must be positive");
  if (lambda.imag() == 0.0 && lambda.real() >= 0.0)
    throw std::invalid_argument(
        "ResolventParams: lambda must avoid the spectrum [0, inf)");
  nu = Cx(0.0, 1.0) * std::sqrt(lambda);
  if (nu.real() >= 0) nu = -nu;
  l = l_ ? *l_ : default_l(n);
  if (!(l - 0.5 * n > -1.0))
    throw std::invalid_argument("ResolventParams: need l - n/2 > -1");
}

Cx f0_profile(double n, int l, Cx nu, double R, const QuadSpec& spec) {
  check_profile_args(n, l, nu);
  if (!(R > 0)) throw std::invalid_argument("f0_profile: R must be > 0");
  const double beta = l - 0.5 * n;
  CxFn f = [l, nu](double v) { return dsh_apply_exp(l, nu, v); };
  // |D^l[e^{nu v}] (ch v - ch R)^beta| ~ e^{(Re nu - l + l - n/2) v}
  const double decay = 0.5 * n - nu.real();
  QuadResult q =
      integrate_singular_osc(f, beta, R, 0.0,
                             std::numeric_limits<double>::infinity(), decay,
                             spec);
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return sign / std::tgamma(1.0 - 0.5 * n + l) * q.value;
}

Cx f0_profile(const ResolventParams& p, double R, const QuadSpec& spec) {
  return f0_profile(static_cast<double>(p.n), p.l, p.nu, R, spec);
}

Cx resolvent_kernel(const ResolventParams& p, const GroupPoint& g,
                    const QuadSpec& spec) {
  if (p.n != g.n)
    throw std::invalid_argument("resolvent_kernel: dimension mismatch");
  const double R = radial_distance(g);
  if (R == 0.0)
    throw std::domain_error("resolvent_kernel: singular at the identity");
  const double c = std::pow(2.0, -1.0 - 0.5 * p.n) * std::pow(M_PI, -0.5 * p.n);
  return c * std::exp(-0.5 * p.n * g.x) * f0_profile(p, R, spec);
}

double ode_residual(const ResolventParams& p, double d, double h) {
  if (!(d > 1.0)) throw std::invalid_argument("ode_residual: d must be > 1");
  if (h == 0.0) h = 1.5e-4 * std::max(1.0, d - 1.0);
  if (!(d - 1.0 > 10.0 * h))
    throw std::invalid_argument("ode_residual: step too large relative to d-1");
  QuadSpec tight;
  tight.rel_tol = 1e-12;
  tight.abs_tol = 1e-16;
  auto f = [&](double dd) {
    return f0_profile(p, std::acosh(dd), tight);
  };
  const Cx fm2 = f(d - 2 * h), fm1 = f(d - h), f0 = f(d), fp1 = f(d + h),
           fp2 = f(d + 2 * h);
  const Cx f1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  const Cx f2 =
      (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
  const double n = p.n;
  const Cx lhs = -0.25 * n * n * f0 - (n + 1.0) * d * f1 - (d * d - 1.0) * f2;
  const Cx rhs = p.lambda * f0;
  return std::abs(lhs - rhs) / (std::abs(rhs) + 1e-30);
}

std::pair<double, double> weighted_l1_resolvent(const ResolventParams& p,
                                                double R_max,
                                                const QuadSpec& spec) {
  if (!(p.nu.real() < 0))
    throw std::invalid_argument("weighted_l1_resolvent: Re(nu) must be < 0");
  const double c = std::pow(2.0, -1.0 - 0.5 * p.n) * std::pow(M_PI, -0.5 * p.n);
  ReFn g = [&](double R) { return c * std::abs(f0_profile(p, R, spec)); };
  QuadSpec s = spec;
  s.decay_hint = 0.5 * p.n - p.nu.real();
  const double integral =
      integrate_radial_ball(p.n, g, R_max, s).value.real();
  // int_0^{R_max} e^{Re(nu) r} r dr
  const double a = -p.nu.real();
  const double tail_int =
      (1.0 - std::exp(-a * R_max) * (1.0 + a * R_max)) / (a * a);
  const double bound =
      std::pow(1.0 + std::abs(p.nu), 0.5 * p.n) * (1.0 + tail_int);
  return {integral, integral / bound};
}

}  // namespace axb
