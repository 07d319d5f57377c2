#pragma once

// n=2 transfer principle: Tf(x,y) = C e^{-x} (R / sh R) f(R) maps radial
// kernels on R^3 to kernels on G, commuting with the Laplacians and
// preserving the L^1 norm; C = 1, calibrated by the resolvent match.
// Provides closed-form oracles (heat, resolvent) and the Euclidean smoothed
// wave comparator via the radial Fourier integral.

#include <vector>

#include "axb/group.hpp"
#include "axb/quadrature.hpp"
#include "axb/spectral.hpp"

namespace axb {

struct RadialR3Kernel {
  enum class Label { heat, resolvent, smoothed_wave, custom };
  Label label = Label::custom;
  CxFn profile;  // radial kernel value f(R), R > 0

  static RadialR3Kernel heat(double t);          // (4 pi t)^{-3/2} e^{-R^2/4t}
  static RadialR3Kernel resolvent(Cx nu);        // e^{nu R} / (4 pi R)
  static RadialR3Kernel smoothed_wave(double lambda, double t,
                                      MultiplierProfile psi,
                                      QuadSpec spec = {});
  static RadialR3Kernel custom(CxFn f);
};

// C e^{-x} (R / sh R) f(R) with C = 1; requires g.n == 2
Cx transfer(const RadialR3Kernel& f, const GroupPoint& g);

// radial kernel of psi(sqrt(Delta)/lambda) cos(t sqrt(Delta)) on R^3:
// (2 pi^2 R)^{-1} int_0^inf psi(s/lambda) cos(ts) sin(sR) s ds
double r3_smoothed_wave(double lambda, double t, const MultiplierProfile& psi,
                        double R, const QuadSpec& spec = {});

// max relative deviation of wave_kernel (n=2, subordination path) from the
// transferred Euclidean kernel over the sample points
double cross_validate(double lambda, double t, const MultiplierProfile& psi,
                      const std::vector<GroupPoint>& sample_points,
                      const QuadSpec& spec = {});

}  // namespace axb
