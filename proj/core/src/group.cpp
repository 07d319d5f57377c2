#include "axb/group.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace axb {

GroupPoint::GroupPoint(int n_, double x_, std::vector<double> y_)
    : n(n_), x(x_), y(std::move(y_)) {
  if (n < 1) throw std::invalid_argument("GroupPoint: n must be positive");
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument("GroupPoint: length(y) != n");
  if (!std::isfinite(x)) throw std::invalid_argument("GroupPoint: x not finite");
  for (double yi : y)
    if (!std::isfinite(yi))
      throw std::invalid_argument("GroupPoint: y not finite");
}

GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b) {
  if (a.n != b.n) throw std::invalid_argument("group_mul: dimension mismatch");
  std::vector<double> y(a.n);
  const double ex = std::exp(a.x);
  for (int i = 0; i < a.n; ++i) y[i] = a.y[i] + ex * b.y[i];
  return GroupPoint(a.n, a.x + b.x, std::move(y));
}

GroupPoint group_inv(const GroupPoint& a) {
  std::vector<double> y(a.n);
  const double emx = std::exp(-a.x);
  for (int i = 0; i < a.n; ++i) y[i] = -emx * a.y[i];
  return GroupPoint(a.n, -a.x, std::move(y));
}

double radial_distance(const GroupPoint& a, bool* clamped) {
  if (clamped) *clamped = false;
  double y2 = 0.0;
  for (double yi : a.y) y2 += yi * yi;
  double d = std::cosh(a.x) + 0.5 * y2 * std::exp(-a.x);
  if (d < 1.0) {
    if (d < 1.0 - 1e-12)
      throw std::domain_error("radial_distance: arcch argument below 1");
    d = 1.0;
    if (clamped) *clamped = true;
  }
  return std::acosh(d);
}

double ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("ball_volume: n must be positive");
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

QuadResult radial_density(int n, double R, const QuadSpec& spec) {
  if (n < 1) throw std::invalid_argument("radial_density: n must be positive");
  if (!(R > 0)) throw std::invalid_argument("radial_density: R must be > 0");
  const double e = 0.5 * n - 1.0;
  // int_{-R}^{R} (ch R - ch x)^{n/2-1} dx = 2 int_0^R (...)^{n/2-1} dw,
  // w = R - x; the weight vanishes like (sh R * w)^{n/2-1} at w = 0.
  CxFn g = [&](double w) {
    return Cx(std::pow(cosh_diff(R - w, w), e), 0.0);
  };
  QuadResult inner = integrate_power_endpoint(g, e, R, spec);
  const double c = 0.5 * n * std::pow(2.0, 0.5 * n) * ball_volume(n);
  QuadResult out;
  out.value = c * std::sinh(R) * 2.0 * inner.value.real();
  out.error_estimate = c * std::sinh(R) * 2.0 * inner.error_estimate;
  out.subdivisions_used = inner.subdivisions_used;
  out.truncation_point = R;
  return out;
}

namespace {

QuadResult radial_windows(int n, const ReFn& g, double upper,
                          const QuadSpec& spec) {
  spec.validate();
  if (!spec.decay_hint && !std::isfinite(upper))
    throw std::invalid_argument(
        "integrate_radial: spec.decay_hint (decay rate of g) is required");
  const double rate = spec.decay_hint ? *spec.decay_hint : 0.0;
  const double net = rate - 0.5 * n;  // g J ~ C R e^{(n/2 - rate) R}
  if (!std::isfinite(upper) && !(net > 0))
    throw std::invalid_argument(
        "integrate_radial: decay_hint must exceed n/2 for an integrable "
        "radial profile");

  QuadSpec inner = spec;
  inner.oscillation_hint.reset();
  auto f = [&](double R) {
    return Cx(g(R) * radial_density(n, R, inner).value.real(), 0.0);
  };

  const double w = 2.0;
  double total = 0.0, err = 0.0, t = 0.0;
  int panels = 0;
  const int max_windows = 600;
  for (int k = 0; k < max_windows; ++k) {
    if (t >= upper) return {Cx(total, 0.0), err, panels, t};
    double te = std::min(t + w, upper);
    auto r = integrate_osc(f, t, te, 0.0, inner);
    total += r.value.real();
    err += r.error_estimate;
    panels += r.subdivisions_used;
    t = te;
    if (t >= upper) return {Cx(total, 0.0), err, panels, t};
    if (!(net > 0)) continue;  // no decay certificate; walk to the endpoint
    // certified remainder: |g(v) J(v)| <= M e^{-net (v - t)} beyond t
    double M = 0.0;
    for (double dv : {0.05, 0.5, 1.5})
      M = std::max(M, std::abs(f(t + dv).real()) * std::exp(net * dv));
    double rem = M / net;
    double cut = std::max(spec.abs_tol * 1e-2,
                          std::abs(total) *
                              std::pow(10.0, -spec.tail_cutoff_decades));
    cut = std::max(cut, spec.rel_tol * std::abs(total) * 1e-2);
    if (rem <= cut) {
      err += rem;
      return {Cx(total, 0.0), err, panels, t};
    }
  }
  throw QuadratureError(
      "integrate_radial: no convergence (divergent or too slowly decaying "
      "profile)");
}

}  // namespace

QuadResult integrate_radial(int n, const ReFn& g, const QuadSpec& spec) {
  return radial_windows(n, g, std::numeric_limits<double>::infinity(), spec);
}

QuadResult integrate_radial_ball(int n, const ReFn& g, double R_max,
                                 const QuadSpec& spec) {
  if (!(R_max > 0))
    throw std::invalid_argument("integrate_radial_ball: R_max must be > 0");
  return radial_windows(n, g, R_max, spec);
}

}  // namespace axb
