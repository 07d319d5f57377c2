#pragma once

// Subordination: a multiplier psi becomes a convolution kernel through
//   k_psi(x,y) = c_l e^{-nx/2} int_R psi(s^2) F_R(s) s ds,
//   F_R(s) = int_R^inf D^l[e^{isv}] (ch v - ch R)^{-n/2+l} dv,
// and the spectrally localized wave kernels
//   k_lambda^t = e^{-nx/2} e^{-nR/2} [G(R, R-t) + G(R, R+t)],
//   G(R, rho) = (c_l/2) e^{nR/2} int psi(s/lambda) F_R(s) s e^{i(rho-R)s} ds.
// For even real psi both k_psi and G are real after folding to s > 0.

#include <functional>
#include <vector>

#include "axb/group.hpp"
#include "axb/quadrature.hpp"

namespace axb {

struct MultiplierProfile {
  enum class Kind { bump_low, bump_band, bump_wide, gauss_heat, custom };

  Kind kind = Kind::bump_low;
  int smoothness = 7;  // C^N
  bool even = true;
  std::function<double(double)> eval;  // psi(s)
  // support on the positive axis: psi vanishes outside [support_lo, support_hi]
  // (support_hi = +inf for gauss_heat)
  double support_lo = 0.0;
  double support_hi = 2.0;
  double tau = 0.0;  // gauss_heat only: psi(s) = e^{-tau s^2}
  // interior C^7 join points of the piecewise-polynomial bumps (positive axis);
  // quadrature panels are aligned to these
  std::vector<double> breakpoints;

  double operator()(double s) const { return eval(s); }
  // |psi| <= 10^{-decades} beyond the returned point
  double cutoff(double decades) const;

  // C^7 bumps from the degree-15 polynomial smoothstep:
  static MultiplierProfile bump_low();   // 1 on [-1,1], supp in [-2,2]
  static MultiplierProfile bump_band();  // supp in [1,2] u [-2,-1]
  static MultiplierProfile bump_wide();  // 1 on [1,2], supp in [1/2,4] u -..
  static MultiplierProfile gauss_heat(double tau);
  static MultiplierProfile custom(std::function<double(double)> f, bool even,
                                  int smoothness, double lo, double hi);
};

// order-7 polynomial smoothstep: 0 for x<=0, 1 for x>=1, C^7 joins
double smoothstep7(double x);

int spectral_default_l(int n);  // n/2 (n even), (n-1)/2 (n odd >= 3), 0 (n=1)

// 2^{-1-n/2} pi^{-n/2} / Gamma(1 - n/2 + l); c_l = (-1)^l/(pi i) * this
double kappa_const(double n, int l);

Cx F_R(int n, int l, double R, double s, const QuadSpec& spec = {});

// int_R^inf D^l[sin(sv)] (ch v - ch R)^{-n/2+l} dv = (F_R(s)-F_R(-s))/(2i)
double F_R_sin(int n, int l, double R, double s, const QuadSpec& spec = {});

// k_psi(g), folded even path (real by construction); psi must have enough
// decay that psi(s) (1+|s|)^{n/2} is integrable.
double multiplier_kernel(int n, int l, const MultiplierProfile& psi,
                         const GroupPoint& g, const QuadSpec& spec = {});

// same kernel via the two-sided s-integral without using evenness; the
// imaginary part is the reported residual of the real-valuedness observation
Cx multiplier_kernel_full(int n, int l, const MultiplierProfile& psi,
                          const GroupPoint& g, const QuadSpec& spec = {});

// Precomputed panel expansion of h(s) = psi(s/lambda) e^{-iRs} F_R(s) (with
// and without the extra s factor) over the support of psi(./lambda), s > 0.
// Each further (rho, t) evaluation costs only exact oscillatory moments, so
// sweeps at fixed (R, lambda) are cheap.
class WavePlan {
 public:
  WavePlan(int n, int l, const MultiplierProfile& psi, double lambda, double R,
           const QuadSpec& spec = {});

  double G(double rho) const;        // G_lambda(R, rho), real
  double G_error(double rho) const;  // expansion-tail error bound for G
  // building block of the sin-kernel: Re int psi(s/lambda) F_R(s) e^{i(rho-R)s} ds
  double sin_block(double rho) const;

  double R() const { return R_; }
  double lambda() const { return lambda_; }
  int n() const { return n_; }
  int l() const { return l_; }

 private:
  struct Panel {
    double c, hh;    // center, half width
    Cx cs[15];       // Legendre coefficients of psi*s*e^{-iRs}*F_R
    Cx c1[15];       // same without the s factor
    double tail_s, tail_1;  // coefficient-tail error bounds
  };
  Cx moment_sum(const Panel& p, const Cx* coef, double rho) const;

  int n_, l_;
  double lambda_, R_, coef_;  // coef_ = (-1)^l kappa/pi
  std::vector<Panel> panels_;
};

struct WaveKernelSample {
  int n = 2, l = 1;
  double lambda = 1.0, t = 0.0;
  double R = 0.0, x = 0.0;
  Cx value{0.0, 0.0};  // e^{-nx/2} e^{-nR/2} (G_minus + G_plus), real
  double G_minus = 0.0, G_plus = 0.0;
  double error_estimate = 0.0;
};

// kernel of psi(sqrt(L)/lambda) cos(t sqrt(L)) at g
WaveKernelSample wave_kernel(int n, int l, const MultiplierProfile& psi,
                             double lambda, double t, const GroupPoint& g,
                             const QuadSpec& spec = {});

// kernel of psi(sqrt(L)/lambda) cos(t sqrt(L)/lambda): wave_kernel at t/lambda
WaveKernelSample wave_kernel_rescaled(int n, int l,
                                      const MultiplierProfile& psi,
                                      double lambda, double t,
                                      const GroupPoint& g,
                                      const QuadSpec& spec = {});

// kernel of psi(sqrt(L)/lambda) sin(t sqrt(L))/sqrt(L): the s factor in the
// wave integrand is replaced by i (e^{i(R-t)s} - e^{i(R+t)s})
double wave_kernel_sin(int n, int l, const MultiplierProfile& psi,
                       double lambda, double t, const GroupPoint& g,
                       const QuadSpec& spec = {});

}  // namespace axb
