#pragma once

// Verification harness for the quantitative kernel estimates: envelope
// fitting for the localized wave kernels, weighted-L1 growth in t, the
// elementary integral bounds, the sup-norm bound, and the Hebisch-Steger
// weighted L1 bound against a Sobolev norm of the multiplier.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "axb/quadrature.hpp"
#include "axb/spectral.hpp"

namespace axb {

struct EnvelopeSpec {
  enum class Regime { large_R, small_R, small_R_improved };
  Regime regime = Regime::large_R;
  int n = 2;
  int N = 4;  // decay order in (1 + |lambda rho|)^{-N}

  // closed-form envelope for |G_lambda(R, R - rho... )| evaluated at
  // (R, rho, lambda); rho is the offset R - t or R + t minus R
  double predicted(double R, double rho, double lambda) const;
};

struct EstimateReport {
  std::string task;
  std::string grid;  // human-readable sweep description
  double fitted_constant = 0.0;
  double refined_constant = 0.0;  // same fit on a doubled grid
  double growth_exponent_fit = 0.0;
  double exponent_band = 0.0;  // half width of the regression band
  double predicted_exponent = 0.0;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::vector<std::pair<std::string, double>> details;
};

// max over the sweep of |G|/predicted, with a doubled-grid refit;
// pass iff finite and |refined - fitted| <= 20% of fitted
EstimateReport check_envelope(const EnvelopeSpec& spec,
                              const MultiplierProfile& psi,
                              const std::vector<double>& lambda_grid,
                              const std::vector<double>& R_grid,
                              const std::vector<double>& rho_grid,
                              const QuadSpec& quad = {});

// int_G |W_lambda^t| (1 + lambda R)^eps dg for each t, then log-log
// regression of the integral against (1+t); pass iff slope <= predicted + 0.3
EstimateReport check_l1_growth(int n, const MultiplierProfile& psi,
                               double lambda, double epsilon,
                               const std::vector<double>& t_grid,
                               const QuadSpec& quad = {});

struct ElementaryBounds {
  double I0 = 0.0, Iinf = 0.0;
  double bound0 = 0.0, boundinf = 0.0;  // closed-form envelopes (C = 1)
  double ratio0 = 0.0, ratioinf = 0.0;
};

// I0 = int_0^1 (1+|lambda R - t|)^{-N} R^alpha dR and the same over [1, inf)
ElementaryBounds elementary_bounds(double alpha, double lambda, double t,
                                   double N, const QuadSpec& quad = {});

// sup-norm surrogate sup_R |G_lambda(R, R-t)| against (1+t^{-n/2}) lambda^{n/2+1}
EstimateReport check_supnorm(int n, const std::vector<double>& lambda_grid,
                             const std::vector<double>& t_grid,
                             const QuadSpec& quad = {});

// weighted L1 norm of the kernel of F(L/lambda^2) against ||F||_{H(s)};
// F continuous, supported in [1,2]
EstimateReport check_hebisch_steger(int n,
                                    const std::function<double(double)>& F,
                                    double lambda, double epsilon,
                                    double s_order, const QuadSpec& quad = {});

// ||F||_{H(s)} = (1/pi int_0^inf |fhat|^2 (1+xi)^{2s} dxi)^{1/2} with
// f(v) = F(v^2) and fhat(xi) = 2 int f(v) cos(xi v) dv
double sobolev_hs_norm(const std::function<double(double)>& F, double s_order,
                       const QuadSpec& quad = {});

}  // namespace axb
