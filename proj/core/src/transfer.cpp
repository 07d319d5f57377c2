#include "axb/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace axb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RadialR3Kernel RadialR3Kernel::heat(double t) {
  if (!(t > 0)) throw std::invalid_argument("RadialR3Kernel::heat: t must be > 0");
  RadialR3Kernel k;
  k.label = Label::heat;
  const double c = std::pow(4.0 * kPi * t, -1.5);
  k.profile = [c, t](double R) { return Cx(c * std::exp(-R * R / (4.0 * t)), 0.0); };
  return k;
}

RadialR3Kernel RadialR3Kernel::resolvent(Cx nu) {
  if (!(nu.real() < 0))
    throw std::invalid_argument("RadialR3Kernel::resolvent: Re(nu) must be < 0");
  RadialR3Kernel k;
  k.label = Label::resolvent;
  k.profile = [nu](double R) { return std::exp(nu * R) / (4.0 * kPi * R); };
  return k;
}

RadialR3Kernel RadialR3Kernel::smoothed_wave(double lambda, double t,
                                             MultiplierProfile psi,
                                             QuadSpec spec) {
  RadialR3Kernel k;
  k.label = Label::smoothed_wave;
  k.profile = [lambda, t, psi = std::move(psi), spec](double R) {
    return Cx(r3_smoothed_wave(lambda, t, psi, R, spec), 0.0);
  };
  return k;
}

RadialR3Kernel RadialR3Kernel::custom(CxFn f) {
  RadialR3Kernel k;
  k.label = Label::custom;
  k.profile = std::move(f);
  return k;
}

Cx transfer(const RadialR3Kernel& f, const GroupPoint& g) {
  if (g.n != 2)
    throw std::invalid_argument("transfer: defined only for n = 2");
  const double R = radial_distance(g);
  const double w = (R < 1e-12) ? 1.0 : R / std::sinh(R);
  return std::exp(-g.x) * w * f.profile(R == 0.0 ? 1e-300 : R);
}

double r3_smoothed_wave(double lambda, double t, const MultiplierProfile& psi,
                        double R, const QuadSpec& spec) {
  if (!(R > 0))
    throw std::invalid_argument("r3_smoothed_wave: R must be > 0");
  spec.validate();
  const double s0 = lambda * psi.support_lo;
  const double s1 = lambda * psi.cutoff(spec.tail_cutoff_decades + 2.0);
  CxFn f = [&](double s) { return Cx(psi(s / lambda) * s, 0.0); };
  // integrate piecewise between the profile's scaled join points so the
  // adaptive rule never straddles a finite-smoothness seam
  std::vector<double> edges = {s0, s1};
  for (double bp : psi.breakpoints) {
    double e = lambda * bp;
    if (e > s0 && e < s1) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  // cos(ts) sin(Rs) = (sin((R+t)s) + sin((R-t)s)) / 2
  Cx a{0.0, 0.0}, b{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    a += integrate_osc(f, edges[i], edges[i + 1], R + t, spec).value;
    b += integrate_osc(f, edges[i], edges[i + 1], R - t, spec).value;
  }
  return 0.5 * (a.imag() + b.imag()) / (2.0 * kPi * kPi * R);
}

double cross_validate(double lambda, double t, const MultiplierProfile& psi,
                      const std::vector<GroupPoint>& sample_points,
                      const QuadSpec& spec) {
  if (sample_points.empty()) return 0.0;
  std::vector<double> a(sample_points.size()), b(sample_points.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    const GroupPoint& g = sample_points[i];
    a[i] = wave_kernel(2, 1, psi, lambda, t, g, spec).value.real();
    const double R = radial_distance(g);
    b[i] = std::exp(-g.x) * (R / std::sinh(R)) *
           r3_smoothed_wave(lambda, t, psi, R, spec);
    scale = std::max(scale, std::max(std::abs(a[i]), std::abs(b[i])));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    double denom = std::max(std::abs(a[i]), std::abs(b[i])) + 1e-8 * scale;
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

}  // namespace axb
