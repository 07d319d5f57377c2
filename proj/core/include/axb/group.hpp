#pragma once

// The group G = R x| R^n with law (x,y)(x',y') = (x+x', y + e^x y'),
// its left-invariant radial distance R(x,y) = arcch(ch x + |y|^2 e^{-x}/2),
// and integration of radial functions e^{-nx/2} g(R) against the density
// J(R) with int_G e^{-nx/2} g(R) dxdy = int_0^inf g(R) J(R) dR.

#include <vector>

#include "axb/quadrature.hpp"

namespace axb {

struct GroupPoint {
  int n = 1;        // dimension of the normal factor
  double x = 0.0;   // log-dilation coordinate
  std::vector<double> y;  // translation coordinate, length n

  GroupPoint() : y(1, 0.0) {}
  GroupPoint(int n_, double x_, std::vector<double> y_);
  static GroupPoint identity(int n) { return GroupPoint(n, 0.0, std::vector<double>(n, 0.0)); }
};

GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b);
GroupPoint group_inv(const GroupPoint& a);

// arcch(ch x + |y|^2 e^{-x} / 2); arguments within 1e-12 below 1 are clamped
// to 1 (floating point noise near the identity), larger violations throw.
// If clamped is non-null it is set when the clamp fired.
double radial_distance(const GroupPoint& a, bool* clamped = nullptr);

// Euclidean volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1)
double ball_volume(int n);

// J(R) = (n/2) 2^{n/2} V_n sh(R) int_{-R}^{R} (ch R - ch x)^{n/2-1} dx.
// For n = 1 the endpoint singularity (ch R - ch x)^{-1/2} is handled by the
// singular-endpoint rule from the quadrature module.
QuadResult radial_density(int n, double R, const QuadSpec& spec = {});

// int_0^inf g(R) J(R) dR; g must decay fast enough that g(R) R e^{nR/2} is
// integrable -- the caller asserts this via spec.decay_hint (a rate r with
// |g(R)| <~ C e^{-rR}, r > n/2).
QuadResult integrate_radial(int n, const ReFn& g, const QuadSpec& spec);

// restriction of the above to [0, R_max]
QuadResult integrate_radial_ball(int n, const ReFn& g, double R_max,
                                 const QuadSpec& spec);

}  // namespace axb
