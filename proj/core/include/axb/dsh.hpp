#pragma once

// The operator D_sh: g -> d/dv (g / sh v) iterated l times on exponentials.
// D^l[e^{mu v}] = e^{mu v} P_l(mu, ch v, sh v) / sh(v)^{2l} with P_l built by
// symbolic recursion; an independent sin/cos engine covers D^l[sin(sv)].
// D^{-1}[e^{mu v}] = mu^{-1} sh(v) e^{mu v} for Re(mu) < 0.

#include <complex>
#include <functional>
#include <vector>

#include "axb/quadrature.hpp"  // Cx

namespace axb {

enum class DshRegime { large_v, small_v };

// Structural expansion of D^l[e^{isv}]: e^{isv} * sum_k s^k q_k(v) * w_k(v)
// with weight w_k = e^{-lv} (large_v) or v^{k-2l} (small_v); each q_k stays
// bounded in its regime.
struct DshExpansion {
  int l = 0;
  DshRegime regime = DshRegime::large_v;
  struct Term {
    int k;                          // power of s
    std::function<Cx(double)> q;    // bounded coefficient q_k(v)
  };
  std::vector<Term> terms;

  Cx eval(double s, double v) const;
};

// D^l_{sh,v}[e^{mu v}]; l >= -1, Re(mu) <= 0 (strict for l = -1), v > 0.
// Below v = 1e-3 a Laurent-series path avoids the cancellation in the
// sh^{-2l} powers.
Cx dsh_apply_exp(int l, Cx mu, double v);

// D^l_{sh,v}[sin(sv)], evaluated by its own sin/cos term recursion (equals
// Im dsh_apply_exp(l, is, v)).
double dsh_apply_sin(int l, double s, double v);

DshExpansion dsh_expansion(int l, DshRegime regime);

}  // namespace axb
