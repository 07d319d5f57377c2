#pragma once

// Controlled-accuracy 1-D quadrature for the integral types showing up in the
// kernel formulas on ax+b groups: algebraic endpoint singularities
// (ch v - ch R)^beta with beta in (-1, 0], oscillatory factors e^{isv} with
// |s| up to ~1e4, and exponentially decaying semi-infinite tails.
//
// Panel rule: 15-point Gauss-Legendre with an embedded 7-point estimate.
// When |s| * panel_width > 2*pi the panel switches to a Filon-type rule:
// the smooth factor is expanded in Legendre polynomials and the oscillatory
// moments int P_k(x) e^{i w x} dx = 2 i^k j_k(w) are evaluated exactly.

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

namespace axb {

using Cx = std::complex<double>;
using CxFn = std::function<Cx(double)>;
using ReFn = std::function<double(double)>;

struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 20000;
  // truncate a tail once the integrand bound has dropped this many decades
  // below the running total
  double tail_cutoff_decades = 14.0;
  std::optional<double> oscillation_hint;  // dominant frequency s
  std::optional<double> decay_hint;        // |g(R)| <= C e^{-decay_hint R}

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0) || max_subdivisions < 1 ||
        !(tail_cutoff_decades > 0))
      throw std::invalid_argument("QuadSpec: invalid tolerances");
  }
};

struct QuadResult {
  Cx value{0.0, 0.0};
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  double truncation_point = 0.0;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// int_a^b f(v) e^{isv} dv, f smooth.
QuadResult integrate_osc(const CxFn& f, double a, double b, double s,
                         const QuadSpec& spec);

// int_0^T g(u) du where g(u) ~ u^beta near u=0 (beta > -1), handled by the
// substitution u = z^q: q = 2 removes the beta = -1/2 singularity exactly,
// otherwise q = 6/(1+beta) grades the mesh toward the endpoint.  g is only
// evaluated at u > 0.
QuadResult integrate_power_endpoint(const CxFn& g, double beta, double T,
                                    const QuadSpec& spec);

// int_R^upper f_smooth(v) (ch v - ch R)^beta e^{isv} dv with upper possibly
// +inf; decay_rate r certifies |f_smooth(v) (ch v - ch R)^beta| <~ C e^{-rv}
// for the tail truncation.
QuadResult integrate_singular_osc(const CxFn& f_smooth, double beta, double R,
                                  double s, double upper, double decay_rate,
                                  const QuadSpec& spec);

// int_a^inf f with caller-certified exponential decay rate.
QuadResult integrate_decaying(const CxFn& f, double a, double decay_rate,
                              const QuadSpec& spec);

// ch v - ch R = 2 sh((v+R)/2) sh((v-R)/2), evaluated from v-R = u without
// cancellation.
double cosh_diff(double R, double u);

// spherical Bessel j_0..j_kmax at w (forward recurrence for w > kmax + 10,
// Miller's backward recurrence otherwise)
void sph_bessel_array(int kmax, double w, double* out);

namespace detail {
struct PanelRule {
  double x15[15], w15[15];  // Gauss-Legendre on [-1,1]
  double x7[7], w7[7];
  double leg15[15][15];  // leg15[k][i] = (2k+1)/2 * w15[i] * P_k(x15[i])
  double leg7[7][7];
  double p15[15][15];  // p15[k][i] = P_k(x15[i])
};
const PanelRule& panel_rule();
}  // namespace detail

}  // namespace axb
