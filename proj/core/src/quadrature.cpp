#include "axb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace axb {

namespace {

constexpr double kPi = 3.14159265358979323846;

double legendre_p(int k, double x) {
  if (k == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int j = 1; j < k; ++j) {
    double pn = ((2 * j + 1) * x * p - j * pm1) / (j + 1);
    pm1 = p;
    p = pn;
  }
  return p;
}

// Gauss-Legendre nodes/weights by Newton iteration on P_m.
void gauss_legendre(int m, double* x, double* w) {
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < m; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  if (m % 2 == 1) x[m / 2] = 0.0;
}

}  // namespace

namespace detail {

const PanelRule& panel_rule() {
  static const PanelRule rule = [] {
    PanelRule r;
    gauss_legendre(15, r.x15, r.w15);
    gauss_legendre(7, r.x7, r.w7);
    for (int k = 0; k < 15; ++k)
      for (int i = 0; i < 15; ++i) {
        r.p15[k][i] = legendre_p(k, r.x15[i]);
        r.leg15[k][i] = 0.5 * (2 * k + 1) * r.w15[i] * r.p15[k][i];
      }
    for (int k = 0; k < 7; ++k)
      for (int i = 0; i < 7; ++i)
        r.leg7[k][i] = 0.5 * (2 * k + 1) * r.w7[i] * legendre_p(k, r.x7[i]);
    return r;
  }();
  return rule;
}

}  // namespace detail

void sph_bessel_array(int kmax, double w, double* out) {
  const double aw = std::abs(w);
  if (aw < 1e-8) {
    double df = 1.0;  // (2k+1)!!
    double pw = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      out[k] = pw / df;
      pw *= w;
      df *= (2 * k + 3);
    }
    return;
  }
  if (aw > kmax + 10) {
    out[0] = std::sin(w) / w;
    if (kmax >= 1) out[1] = std::sin(w) / (w * w) - std::cos(w) / w;
    for (int k = 1; k < kmax; ++k)
      out[k + 1] = (2.0 * k + 1.0) / w * out[k] - out[k - 1];
    return;
  }
  // Miller backward recurrence, normalized against j0 or j1
  const int K = kmax + 25 + static_cast<int>(aw);
  std::vector<double> j(K + 2, 0.0);
  j[K + 1] = 0.0;
  j[K] = 1e-30;
  for (int k = K; k >= 1; --k) {
    j[k - 1] = (2.0 * k + 1.0) / w * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int m = k - 1; m <= K + 1; ++m) j[m] *= 1e-250;
    }
  }
  const double j0 = std::sin(w) / w;
  const double j1 = std::sin(w) / (w * w) - std::cos(w) / w;
  double scale;
  if (std::abs(j0) >= std::abs(j1))
    scale = j0 / j[0];
  else
    scale = j1 / j[1];
  for (int k = 0; k <= kmax; ++k) out[k] = j[k] * scale;
}

double cosh_diff(double R, double u) {
  return 2.0 * std::sinh(0.5 * (2.0 * R + u)) * std::sinh(0.5 * u);
}

namespace {

using detail::panel_rule;

struct Panel {
  double a, b;
  Cx val;
  double err;
};

// i^k cycle
inline Cx ipow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Legendre moments M_k(w) = int_{-1}^{1} P_k(x) e^{iwx} dx = 2 i^k j_k(w)
void filon_moments(int kmax, double w, Cx* M) {
  double j[32];
  sph_bessel_array(kmax, std::abs(w), j);
  for (int k = 0; k <= kmax; ++k) {
    Cx m = 2.0 * ipow(k) * j[k];
    M[k] = (w >= 0) ? m : std::conj(m);
  }
}

Panel eval_panel(const CxFn& f, double a, double b, double s) {
  const auto& r = panel_rule();
  const double h = b - a, c = 0.5 * (a + b), hh = 0.5 * h;
  Cx f15[15], f7[7];
  for (int i = 0; i < 15; ++i) f15[i] = f(c + hh * r.x15[i]);
  for (int i = 0; i < 7; ++i) f7[i] = f(c + hh * r.x7[i]);

  const double w = s * hh;
  Cx i15, i7;
  if (std::abs(w) <= 2.0 * kPi) {
    // direct: phase folded into the node evaluation
    i15 = i7 = Cx{0, 0};
    for (int i = 0; i < 15; ++i)
      i15 += r.w15[i] * f15[i] *
             std::exp(Cx(0.0, s * (c + hh * r.x15[i])));
    for (int i = 0; i < 7; ++i)
      i7 += r.w7[i] * f7[i] * std::exp(Cx(0.0, s * (c + hh * r.x7[i])));
    i15 *= hh;
    i7 *= hh;
  } else {
    // Filon: Legendre expansion of the smooth factor, exact moments
    Cx M[15];
    filon_moments(14, w, M);
    Cx c15[15], c7[7];
    for (int k = 0; k < 15; ++k) {
      Cx acc{0, 0};
      for (int i = 0; i < 15; ++i) acc += r.leg15[k][i] * f15[i];
      c15[k] = acc;
    }
    for (int k = 0; k < 7; ++k) {
      Cx acc{0, 0};
      for (int i = 0; i < 7; ++i) acc += r.leg7[k][i] * f7[i];
      c7[k] = acc;
    }
    Cx s15{0, 0}, s7{0, 0};
    for (int k = 0; k < 15; ++k) s15 += c15[k] * M[k];
    for (int k = 0; k < 7; ++k) s7 += c7[k] * M[k];
    const Cx ph = std::exp(Cx(0.0, s * c));
    i15 = hh * ph * s15;
    i7 = hh * ph * s7;
  }
  return Panel{a, b, i15, std::abs(i15 - i7)};
}

struct AdaptiveResult {
  Cx value;
  double err;
  int panels;
};

// globally adaptive bisection over [a,b]; phase e^{isv} handled per panel
AdaptiveResult adaptive_core(const CxFn& f, double a, double b, double s,
                             const QuadSpec& spec, int max_panels,
                             int init_panels = 4) {
  auto cmp = [](const Panel& p, const Panel& q) { return p.err < q.err; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  std::vector<Panel> done;

  int n0 = std::max(1, init_panels);
  if (spec.oscillation_hint && s == 0.0) {
    // the caller folded oscillation into f; resolve it from the start
    double freq = std::abs(*spec.oscillation_hint);
    n0 = std::max<int>(n0, std::min(4096.0, freq * (b - a) / kPi));
  }
  for (int i = 0; i < n0; ++i) {
    double pa = a + (b - a) * i / n0, pb = a + (b - a) * (i + 1) / n0;
    heap.push(eval_panel(f, pa, pb, s));
  }
  int panels = n0;
  const int min_panels = std::min(max_panels, std::max(4, n0 * 2));
  Cx total{0, 0};
  double err = 0;
  {
    auto copy = heap;
    while (!copy.empty()) {
      total += copy.top().val;
      err += copy.top().err;
      copy.pop();
    }
  }
  while (true) {
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if ((err <= tol && panels >= min_panels) || heap.empty() ||
        panels >= max_panels)
      break;
    Panel worst = heap.top();
    heap.pop();
    if (worst.err <= tol / (4.0 * panels)) {
      done.push_back(worst);
      continue;
    }
    Panel left = eval_panel(f, worst.a, 0.5 * (worst.a + worst.b), s);
    Panel right = eval_panel(f, 0.5 * (worst.a + worst.b), worst.b, s);
    total += left.val + right.val - worst.val;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // final sum in interval order, independent of the refinement history
  std::vector<Panel> all = std::move(done);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  total = Cx{0, 0};
  err = 0;
  for (const auto& p : all) {
    total += p.val;
    err += p.err;
  }
  return {total, err, panels};
}

}  // namespace

QuadResult integrate_osc(const CxFn& f, double a, double b, double s,
                         const QuadSpec& spec) {
  spec.validate();
  if (!(b > a)) return {Cx{0, 0}, 0.0, 0, b};
  auto r = adaptive_core(f, a, b, s, spec, spec.max_subdivisions);
  double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
  if (r.err > 100.0 * tol && r.panels >= spec.max_subdivisions)
    throw QuadratureError("integrate_osc: no convergence within max_subdivisions");
  return {r.value, r.err, r.panels, b};
}

QuadResult integrate_power_endpoint(const CxFn& g, double beta, double T,
                                    const QuadSpec& spec) {
  spec.validate();
  if (!(beta > -1.0))
    throw std::invalid_argument("integrate_power_endpoint: beta must be > -1");
  if (!(T > 0)) return {Cx{0, 0}, 0.0, 0, T};
  const double q = (beta == -0.5) ? 2.0 : 6.0 / (1.0 + beta);
  const double Z = std::pow(T, 1.0 / q);
  CxFn h = [&](double z) {
    double u = std::pow(z, q);
    return g(u) * q * std::pow(z, q - 1.0);
  };
  auto r = adaptive_core(h, 0.0, Z, 0.0, spec, spec.max_subdivisions, 8);
  double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
  if (r.err > 100.0 * tol && r.panels >= spec.max_subdivisions)
    throw QuadratureError("integrate_power_endpoint: no convergence");
  return {r.value, r.err, r.panels, T};
}

namespace {

// shared tail driver: integrate windows [t0, t0+w], [t0+w, ...] until the
// certified remainder M/r is negligible.  integrand must decay like e^{-r v}.
QuadResult tail_windows(const CxFn& f, double t0, double upper,
                        double decay_rate, double s, const QuadSpec& spec,
                        Cx head, double head_err, int head_panels) {
  if (!(decay_rate > 0))
    throw std::invalid_argument("tail integration requires a positive decay rate");
  const double w = std::max(1.0, 2.0 / decay_rate);
  Cx total = head;
  double err = head_err;
  int panels = head_panels;
  double t = t0;
  double prev_mag = -1.0;
  int grow_count = 0;
  const int max_windows = 2000;
  for (int k = 0; k < max_windows; ++k) {
    if (t >= upper) return {total, err, panels, t};
    double te = std::min(t + w, upper);
    auto r = adaptive_core(f, t, te, s, spec,
                           std::max(64, spec.max_subdivisions / 16), 2);
    total += r.value;
    err += r.err;
    panels += r.panels;
    double mag = std::abs(r.value);
    if (prev_mag >= 0 && mag > prev_mag * 1.0001 && mag > spec.abs_tol) {
      if (++grow_count >= 3)
        throw QuadratureError("tail integration: contributions not decaying "
                              "(decay hint violated)");
    } else {
      grow_count = 0;
    }
    prev_mag = mag;
    t = te;
    if (t >= upper) return {total, err, panels, t};
    // remainder bound from the decay certificate
    double M = 0.0;
    for (double dv : {0.0, 0.3, 0.7}) M = std::max(M, std::abs(f(t + dv * 0.1)));
    double rem = M / decay_rate;
    double cut = std::max(spec.abs_tol * 1e-2,
                          std::abs(total) * std::pow(10.0, -spec.tail_cutoff_decades));
    cut = std::max(cut, spec.rel_tol * std::abs(total) * 1e-2);
    if (rem <= cut) {
      err += rem;
      return {total, err, panels, t};
    }
  }
  throw QuadratureError("tail integration: window limit exceeded");
}

}  // namespace

QuadResult integrate_singular_osc(const CxFn& f_smooth, double beta, double R,
                                  double s, double upper, double decay_rate,
                                  const QuadSpec& spec) {
  spec.validate();
  if (!(beta > -1.0))
    throw std::invalid_argument("integrate_singular_osc: beta must be > -1");
  if (!(R > 0))
    throw std::invalid_argument("integrate_singular_osc: R must be > 0");
  const double len = upper - R;
  if (!(len > 0)) return {Cx{0, 0}, 0.0, 0, R};

  Cx head{0, 0};
  double head_err = 0;
  int head_panels = 0;
  double v1 = R;  // start of the smooth region

  if (beta != 0.0) {
    // endpoint region [R, R+delta]; delta small enough that the phase range
    // s*delta stays below one period, so the substituted integrand is smooth
    const double delta = std::min({1.0, len, 2.0 * kPi / (1.0 + std::abs(s))});
    CxFn g = [&](double u) {
      double v = R + u;
      return f_smooth(v) * std::pow(cosh_diff(R, u), beta) *
             std::exp(Cx(0.0, s * v));
    };
    auto r0 = integrate_power_endpoint(g, beta, delta, spec);
    head = r0.value;
    head_err = r0.error_estimate;
    head_panels = r0.subdivisions_used;
    v1 = R + delta;
    if (v1 >= upper) return {head, head_err, head_panels, v1};
  }

  CxFn smooth = [&](double v) {
    Cx val = f_smooth(v);
    if (beta != 0.0) val *= std::pow(cosh_diff(R, v - R), beta);
    return val;
  };
  if (std::isfinite(upper) && upper - v1 <= 8.0) {
    auto r = adaptive_core(smooth, v1, upper, s, spec, spec.max_subdivisions, 8);
    return {head + r.value, head_err + r.err, head_panels + r.panels, upper};
  }
  return tail_windows(smooth, v1, upper, decay_rate, s, spec, head, head_err,
                      head_panels);
}

QuadResult integrate_decaying(const CxFn& f, double a, double decay_rate,
                              const QuadSpec& spec) {
  spec.validate();
  return tail_windows(f, a, std::numeric_limits<double>::infinity(), decay_rate,
                      0.0, spec, Cx{0, 0}, 0.0, 0);
}

}  // namespace axb
