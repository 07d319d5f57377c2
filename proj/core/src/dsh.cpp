#include "axb/dsh.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace axb {

namespace {

constexpr int kSeries = 24;  // Laurent truncation; ample for v < 1e-3

// ---- exp engine: P_l as sum of c * mu^j * ch^a * sh^b, a in {0,1} ---------

struct ExpKey {
  int j, a, b;
  bool operator<(const ExpKey& o) const {
    if (j != o.j) return j < o.j;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};
using ExpPoly = std::map<ExpKey, double>;

void add_term(ExpPoly& p, int j, int a, int b, double c) {
  if (c == 0.0) return;
  // canonicalize ch^2 = 1 + sh^2
  while (a >= 2) {
    a -= 2;
    add_term(p, j, a, b, c);
    b += 2;
  }
  double& slot = p[{j, a, b}];
  slot += c;
  if (slot == 0.0) p.erase({j, a, b});
}

// P_{l+1} = sh (mu P + P') - (2l+1) ch P,  with ch' = sh, sh' = ch.
ExpPoly step_exp(const ExpPoly& p, int l) {
  ExpPoly out;
  for (const auto& [k, c] : p) {
    // sh * mu * term
    add_term(out, k.j + 1, k.a, k.b + 1, c);
    // sh * d/dv(ch^a sh^b):  a=1: sh^{b+1} + b(1+sh^2)sh^{b-1}; a=0: b ch sh^{b-1}
    if (k.a == 1) {
      add_term(out, k.j, 0, k.b + 2, c);
      if (k.b > 0) {
        add_term(out, k.j, 0, k.b, c * k.b);
        add_term(out, k.j, 0, k.b + 2, c * k.b);
      }
    } else if (k.b > 0) {
      add_term(out, k.j, 1, k.b, c * k.b);
    }
    // -(2l+1) ch * term
    add_term(out, k.j, k.a + 1, k.b, -(2.0 * l + 1.0) * c);
  }
  return out;
}

// ---- power series helpers (coefficients of v^m) ---------------------------

using Series = std::array<double, kSeries>;

Series mul(const Series& a, const Series& b) {
  Series r{};
  for (int i = 0; i < kSeries; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j + i < kSeries; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series series_ch() {
  Series r{};
  double f = 1.0;
  for (int m = 0; m < kSeries; m += 2) {
    r[m] = 1.0 / f;
    f *= (m + 1.0) * (m + 2.0);
  }
  return r;
}

Series series_sh_over_v() {
  Series r{};
  double f = 1.0;
  for (int m = 0; m < kSeries; m += 2) {
    r[m] = 1.0 / f;
    f *= (m + 2.0) * (m + 3.0);
  }
  return r;
}

Series invert(const Series& a) {  // a[0] != 0
  Series r{};
  r[0] = 1.0 / a[0];
  for (int m = 1; m < kSeries; ++m) {
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) acc += a[i] * r[m - i];
    r[m] = -acc / a[0];
  }
  return r;
}

// ---- per-l cache ----------------------------------------------------------

struct ExpLevel {
  ExpPoly poly;                  // P_l
  int jmax = 0;                  // mu-degree
  // small-v: coefficient of mu^j is v^{-2l} * sum_m small[j][m] v^m
  std::vector<Series> small;
};

const ExpLevel& exp_level(int l) {
  static std::mutex mtx;
  static std::vector<ExpLevel> cache;
  std::lock_guard<std::mutex> lk(mtx);
  while (static_cast<int>(cache.size()) <= l) {
    int cur = static_cast<int>(cache.size());
    ExpLevel lev;
    if (cur == 0) {
      lev.poly = {{{0, 0, 0}, 1.0}};
    } else {
      lev.poly = step_exp(cache[cur - 1].poly, cur - 1);
    }
    for (const auto& [k, c] : lev.poly) lev.jmax = std::max(lev.jmax, k.j);
    // small-v series: (ch^a sh^b / sh^{2l}) = v^{-2l} * ch^a (sh/v)^b v^b U^{2l}
    const Series ch = series_ch(), shv = series_sh_over_v();
    const Series u = invert(shv);
    Series u2l{};
    u2l[0] = 1.0;
    for (int i = 0; i < 2 * cur; ++i) u2l = mul(u2l, u);
    lev.small.assign(lev.jmax + 1, Series{});
    for (const auto& [k, c] : lev.poly) {
      Series t = u2l;
      if (k.a) t = mul(t, ch);
      for (int i = 0; i < k.b; ++i) t = mul(t, shv);
      // shift by v^b
      for (int m = kSeries - 1; m >= 0; --m)
        t[m] = (m >= k.b) ? t[m - k.b] : 0.0;
      for (int m = 0; m < kSeries; ++m) lev.small[k.j][m] += c * t[m];
    }
    cache.push_back(std::move(lev));
  }
  return cache[l];
}

Cx eval_exp_direct(const ExpLevel& lev, int l, Cx mu, double v) {
  // group by mu-power, evaluate hyperbolics via t = e^{-v} to avoid overflow
  const double t = std::exp(-v);
  std::vector<double> coef(lev.jmax + 1, 0.0);
  if (v > 20.0) {
    const double op = 1.0 + t * t, om = 1.0 - t * t;
    for (const auto& [k, c] : lev.poly) {
      // ch^a sh^b / sh^{2l} = e^{(a+b-2l)v} (1+t^2)^a (1-t^2)^b 2^{2l-a-b} / (1-t^2)^{2l}
      double w = c * std::exp((k.a + k.b - 2 * l) * v) *
                 std::pow(2.0, 2 * l - k.a - k.b) *
                 std::pow(om, k.b - 2 * l);
      if (k.a) w *= op;
      coef[k.j] += w;
    }
  } else {
    const double ch = std::cosh(v), sh = std::sinh(v);
    const double inv = std::pow(sh, -2 * l);
    for (const auto& [k, c] : lev.poly) {
      double w = c * std::pow(sh, k.b) * inv;
      if (k.a) w *= ch;
      coef[k.j] += w;
    }
  }
  Cx acc{0.0, 0.0};
  for (int j = lev.jmax; j >= 0; --j) acc = acc * mu + coef[j];
  return std::exp(mu * v) * acc;
}

Cx eval_exp_small(const ExpLevel& lev, int l, Cx mu, double v) {
  Cx acc{0.0, 0.0};
  Cx muj{1.0, 0.0};
  for (int j = 0; j <= lev.jmax; ++j) {
    double s = 0.0;
    for (int m = kSeries - 1; m >= 0; --m) s = s * v + lev.small[j][m];
    acc += muj * s;
    muj *= mu;
  }
  return std::exp(mu * v) * acc * std::pow(v, -2 * l);
}

// ---- independent sin/cos engine -------------------------------------------
// D^l[sin(sv)] = Q_l(s, v) / sh^{2l}, Q_l a sum of c s^k trig(sv) ch^a sh^b.

struct SinKey {
  int k, trig, a, b;  // trig: 0 = sin, 1 = cos
  bool operator<(const SinKey& o) const {
    if (k != o.k) return k < o.k;
    if (trig != o.trig) return trig < o.trig;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};
using SinPoly = std::map<SinKey, double>;

void add_sterm(SinPoly& p, int k, int trig, int a, int b, double c) {
  if (c == 0.0) return;
  while (a >= 2) {
    a -= 2;
    add_sterm(p, k, trig, a, b, c);
    b += 2;
  }
  double& slot = p[{k, trig, a, b}];
  slot += c;
  if (slot == 0.0) p.erase({k, trig, a, b});
}

SinPoly step_sin(const SinPoly& p, int l) {
  SinPoly out;
  for (const auto& [k, c] : p) {
    // sh * s * trig'  (sin -> cos, cos -> -sin)
    if (k.trig == 0)
      add_sterm(out, k.k + 1, 1, k.a, k.b + 1, c);
    else
      add_sterm(out, k.k + 1, 0, k.a, k.b + 1, -c);
    // sh * trig * d/dv(ch^a sh^b)
    if (k.a == 1) {
      add_sterm(out, k.k, k.trig, 0, k.b + 2, c);
      if (k.b > 0) {
        add_sterm(out, k.k, k.trig, 0, k.b, c * k.b);
        add_sterm(out, k.k, k.trig, 0, k.b + 2, c * k.b);
      }
    } else if (k.b > 0) {
      add_sterm(out, k.k, k.trig, 1, k.b, c * k.b);
    }
    // -(2l+1) ch * term
    add_sterm(out, k.k, k.trig, k.a + 1, k.b, -(2.0 * l + 1.0) * c);
  }
  return out;
}

const SinPoly& sin_level(int l) {
  static std::mutex mtx;
  static std::vector<SinPoly> cache;
  std::lock_guard<std::mutex> lk(mtx);
  while (static_cast<int>(cache.size()) <= l) {
    int cur = static_cast<int>(cache.size());
    if (cur == 0)
      cache.push_back({{{0, 0, 0, 0}, 1.0}});
    else
      cache.push_back(step_sin(cache[cur - 1], cur - 1));
  }
  return cache[l];
}

}  // namespace

Cx dsh_apply_exp(int l, Cx mu, double v) {
  if (l < -1) throw std::invalid_argument("dsh_apply_exp: l < -1");
  if (!(v > 0)) throw std::invalid_argument("dsh_apply_exp: v must be > 0");
  if (mu.real() > 0)
    throw std::invalid_argument("dsh_apply_exp: Re(mu) must be <= 0");
  if (l == -1) {
    if (!(mu.real() < 0))
      throw std::invalid_argument("dsh_apply_exp: l = -1 needs Re(mu) < 0");
    return std::sinh(v) * std::exp(mu * v) / mu;
  }
  const ExpLevel& lev = exp_level(l);
  if (l >= 1 && v < 1e-3) return eval_exp_small(lev, l, mu, v);
  return eval_exp_direct(lev, l, mu, v);
}

double dsh_apply_sin(int l, double s, double v) {
  if (l < 0) throw std::invalid_argument("dsh_apply_sin: l must be >= 0");
  if (!(v > 0)) throw std::invalid_argument("dsh_apply_sin: v must be > 0");
  if (l >= 1 && v < 1e-3)
    return dsh_apply_exp(l, Cx(0.0, s), v).imag();
  const SinPoly& p = sin_level(l);
  const double ch = std::cosh(v), sh = std::sinh(v);
  const double sn = std::sin(s * v), cs = std::cos(s * v);
  const double inv = std::pow(sh, -2 * l);
  double acc = 0.0;
  for (const auto& [k, c] : p) {
    double w = c * std::pow(s, k.k) * std::pow(sh, k.b) * inv;
    if (k.a) w *= ch;
    acc += w * (k.trig ? cs : sn);
  }
  return acc;
}

Cx DshExpansion::eval(double s, double v) const {
  Cx acc{0.0, 0.0};
  for (const auto& t : terms) {
    double w = (regime == DshRegime::large_v) ? std::exp(-l * v)
                                              : std::pow(v, t.k - 2 * l);
    acc += std::pow(s, t.k) * t.q(v) * w;
  }
  return std::exp(Cx(0.0, s * v)) * acc;
}

DshExpansion dsh_expansion(int l, DshRegime regime) {
  if (l < 0) throw std::invalid_argument("dsh_expansion: l must be >= 0");
  DshExpansion ex;
  ex.l = l;
  ex.regime = regime;
  const ExpLevel& lev = exp_level(l);
  for (int j = 0; j <= lev.jmax; ++j) {
    Cx ij = std::pow(Cx(0.0, 1.0), j);
    DshExpansion::Term term;
    term.k = j;
    if (regime == DshRegime::large_v) {
      // q_j(v) = i^j * [coef_j](ch,sh) e^{lv} / sh^{2l}, bounded for v >= 1
      term.q = [l, j, ij](double v) {
        const ExpLevel& lv = exp_level(l);
        const double t = std::exp(-v);
        const double op = 1.0 + t * t, om = 1.0 - t * t;
        double acc = 0.0;
        for (const auto& [k, c] : lv.poly) {
          if (k.j != j) continue;
          // ch^a sh^b e^{lv} / sh^{2l} = e^{(a+b-l)v} (1+t^2)^a (1-t^2)^{b-2l} 2^{2l-a-b}
          double w = c * std::exp((k.a + k.b - 2 * l) * v + l * v) *
                     std::pow(2.0, 2 * l - k.a - k.b) *
                     std::pow(om, k.b - 2 * l);
          if (k.a) w *= op;
          acc += w;
        }
        return ij * acc;
      };
    } else {
      // q_j(v) = i^j * v^{2l-j} [coef_j](ch,sh) / sh^{2l}, bounded near 0
      term.q = [l, j, ij](double v) {
        const ExpLevel& lv = exp_level(l);
        double s = 0.0;
        for (int m = kSeries - 1; m >= 0; --m) s = s * v + lv.small[j][m];
        if (v >= 0.5) {  // series radius is pi; recompute directly when safe
          const double ch = std::cosh(v), sh = std::sinh(v);
          s = 0.0;
          for (const auto& [k, c] : lv.poly) {
            if (k.j != j) continue;
            double w = c * std::pow(sh, k.b) * std::pow(sh, -2 * l) *
                       std::pow(v, 2 * l);
            if (k.a) w *= ch;
            s += w;
          }
          return ij * s * std::pow(v, -j);
        }
        return ij * s * std::pow(v, -j);
      };
    }
    ex.terms.push_back(std::move(term));
  }
  return ex;
}

}  // namespace axb
