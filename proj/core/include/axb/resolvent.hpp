#pragma once

// Explicit kernel of (L - lambda)^{-1} for the distinguished Laplacian:
// k(x,y) = (-1)^l 2^{-1-n/2} pi^{-n/2} Gamma(1-n/2+l)^{-1} e^{-nx/2}
//            int_R^inf D^l[e^{nu v}] (ch v - ch R)^{-n/2+l} dv,
// nu = i sqrt(lambda), Re(nu) < 0.  The radial profile f0 solves
//   -n^2/4 f - (n+1) d f' - (d^2-1) f'' = lambda f,   d = ch R.

#include <optional>
#include <utility>

#include "axb/group.hpp"
#include "axb/quadrature.hpp"

namespace axb {

struct ResolventParams {
  int n = 2;
  Cx lambda{-1.0, 0.0};
  Cx nu{-1.0, 0.0};  // i sqrt(lambda), sign fixed so Re(nu) < 0
  int l = 1;

  // Default l is n/2 for even n, (n-1)/2 for odd n, so l - n/2 in {-1/2, 0};
  // any l with l - n/2 > -1 is accepted.
  ResolventParams(int n_, Cx lambda_, std::optional<int> l_ = std::nullopt);
};

// Gamma(1-n/2)^{-1} f0(ch R) in the continued sense:
// (-1)^l Gamma(1-n/2+l)^{-1} int_R^inf D^l[e^{nu v}] (ch v - ch R)^{-n/2+l} dv.
// n may be fractional (the continuation identity is testable at n = 1.5, 2.5);
// requires l - n/2 > -1 and Re(nu) < 0.
Cx f0_profile(double n, int l, Cx nu, double R, const QuadSpec& spec = {});
Cx f0_profile(const ResolventParams& p, double R, const QuadSpec& spec = {});

// kernel value at g; throws std::domain_error at the identity (R = 0)
Cx resolvent_kernel(const ResolventParams& p, const GroupPoint& g,
                    const QuadSpec& spec = {});

// |(-n^2/4 - (n+1) d d/dd - (d^2-1) d^2/dd^2 - lambda) f| / (|lambda f| + floor)
// with derivatives by 5-point central differences of f0_profile; h = 0 picks
// 1.5e-4 * max(1, d-1).
double ode_residual(const ResolventParams& p, double d, double h = 0.0);

// (integral of |k| over the ball R <= R_max, ratio to the bound
//  (1+|nu|)^{n/2} [1 + int_0^{R_max} e^{Re(nu) r} r dr])
std::pair<double, double> weighted_l1_resolvent(const ResolventParams& p,
                                                double R_max,
                                                const QuadSpec& spec = {});

}  // namespace axb
