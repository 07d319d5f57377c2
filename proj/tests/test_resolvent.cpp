#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "axb/group.hpp"
#include "axb/resolvent.hpp"
#include "axb/spectral.hpp"
#include "doctest.h"

using axb::Cx;
using axb::GroupPoint;
using axb::ResolventParams;

TEST_SUITE_BEGIN("resolvent");

TEST_CASE("parameter validation and branch choice") {
  ResolventParams p(2, Cx(-1.0, 0.0));
  CHECK(p.l == 1);
  CHECK(p.nu.real() < 0.0);
  CHECK(std::abs(p.nu * p.nu + p.lambda) < 1e-14);
  ResolventParams q(3, Cx(0.5, 2.0));
  CHECK(q.l == 1);
  CHECK(q.nu.real() < 0.0);
  CHECK_THROWS_AS(ResolventParams(2, Cx(1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(ResolventParams(2, Cx(-1.0, 0.0), -1), std::invalid_argument);
  // any l with l - n/2 > -1 is admissible, enabling the continuation tests
  CHECK_NOTHROW(ResolventParams(2, Cx(-1.0, 0.0), 3));
}

TEST_CASE("n = 2 closed form at random points") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ux(-1.5, 1.5), uy(-2.0, 2.0);
  for (Cx lambda : {Cx(-1.0, 0.0), Cx(-0.25, 0.5)}) {
    ResolventParams p(2, lambda);
    for (int i = 0; i < 10; ++i) {
      GroupPoint g(2, ux(rng), {uy(rng), uy(rng)});
      double R = axb::radial_distance(g);
      if (R < 1e-2) continue;
      Cx want = std::exp(-g.x) * std::exp(p.nu * R) /
                (std::sinh(R) * 4.0 * M_PI);
      Cx got = axb::resolvent_kernel(p, g);
      CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
    }
  }
  CHECK_THROWS_AS(
      axb::resolvent_kernel(ResolventParams(2, Cx(-1.0, 0.0)),
                            GroupPoint::identity(2)),
      std::domain_error);
}

TEST_CASE("continuation identity in l at fractional dimension") {
  for (double n : {1.5, 2.5}) {
    for (Cx nu : {Cx(-1.0, 0.0), Cx(-0.3, -0.7)}) {
      for (double R : {0.2, 0.9, 2.5}) {
        const int l0 = (n < 2.0) ? 1 : 2;  // l - n/2 > -1 for both l0, l0+1
        Cx a = axb::f0_profile(n, l0, nu, R);
        Cx b = axb::f0_profile(n, l0 + 1, nu, R);
        CHECK(std::abs(a - b) <= 1e-7 * std::abs(a));
      }
    }
  }
  // integer case from the same identity: n = 3, l = 1 vs l = 2
  for (double R : {0.4, 1.2}) {
    Cx a = axb::f0_profile(3.0, 1, Cx(-1.0, 0.0), R);
    Cx b = axb::f0_profile(3.0, 2, Cx(-1.0, 0.0), R);
    CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
  }
}

TEST_CASE("radial profile solves the hypergeometric ODE") {
  for (int n : {1, 2, 3}) {
    for (Cx lambda : {Cx(-1.0, 0.0), Cx(-0.4, 0.58)}) {
      ResolventParams p(n, lambda);
      for (double d : {1.01, 1.2, 2.0, 7.0, 20.0}) {
        CHECK(axb::ode_residual(p, d) <= 1e-4);
      }
    }
  }
}

TEST_CASE("small-R asymptotics of the profile") {
  const double R = 1e-3;
  for (int n : {2, 3}) {
    ResolventParams p(n, Cx(-1.0, 0.0));
    double lead = std::pow(2.0, 0.5 * n - 1.0) * std::pow(M_PI, -0.5) *
                  std::tgamma(0.5 * (n - 1.0)) * std::pow(R, 1.0 - n);
    double ratio = std::abs(axb::f0_profile(p, R)) / lead;
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
  }
  {
    ResolventParams p(1, Cx(-1.0, 0.0));
    double lead = std::sqrt(2.0 / M_PI) * std::abs(std::log(R));
    double ratio = std::abs(axb::f0_profile(p, R)) / lead;
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
  }
  // n = 2 kernel behaves like (4 pi)^{-1} R^{-1} near the origin
  {
    ResolventParams p(2, Cx(-1.0, 0.0));
    GroupPoint g(2, 1e-3, {0.0, 0.0});
    double R2 = axb::radial_distance(g);
    double got = std::abs(axb::resolvent_kernel(p, g));
    CHECK(got * 4.0 * M_PI * R2 == doctest::Approx(1.0).epsilon(5e-3));
  }
}

TEST_CASE("weighted L1 bound: stability and nu-scaling") {
  ResolventParams p1(2, Cx(-1.0, 0.0));  // nu = -1
  double r5 = axb::weighted_l1_resolvent(p1, 5.0).second;
  double r10 = axb::weighted_l1_resolvent(p1, 10.0).second;
  double r15 = axb::weighted_l1_resolvent(p1, 15.0).second;
  CHECK(std::isfinite(r15));
  CHECK(r10 == doctest::Approx(r15).epsilon(0.05));
  CHECK(r5 < 10.0 * r15 + 10.0);

  ResolventParams p4(2, Cx(-16.0, 0.0));  // nu = -4
  double n1 = axb::weighted_l1_resolvent(p1, 10.0).first;
  double n4 = axb::weighted_l1_resolvent(p4, 10.0).first;
  // at n = 2 the norm is exactly int_0^Rmax R e^{nu R} dR = 1/nu^2 - tail
  CHECK(n1 == doctest::Approx(1.0).epsilon(0.01));
  CHECK(n4 / n1 == doctest::Approx(1.0 / 16.0).epsilon(0.01));
}

TEST_CASE("weak form of the fundamental solution at n = 2") {
  // pair (L - lambda) phi against the closed-form kernel: the integral over G
  // (right Haar measure dx dy) returns phi at the identity
  const Cx lambda{-1.0, 0.0};
  ResolventParams p(2, lambda);
  auto phi = [](double x, double y1, double y2) {
    double r = std::sqrt(x * x + y1 * y1 + y2 * y2);
    return axb::smoothstep7(2.0 - r);  // 1 for r <= 1, 0 for r >= 2
  };
  auto Lphi = [&](double x, double y1, double y2) {
    const double h = 2e-3;
    double dxx = (phi(x + h, y1, y2) - 2.0 * phi(x, y1, y2) +
                  phi(x - h, y1, y2)) /
                 (h * h);
    double dy1 = (phi(x, y1 + h, y2) - 2.0 * phi(x, y1, y2) +
                  phi(x, y1 - h, y2)) /
                 (h * h);
    double dy2 = (phi(x, y1, y2 + h) - 2.0 * phi(x, y1, y2) +
                  phi(x, y1, y2 - h)) /
                 (h * h);
    return -dxx - std::exp(2.0 * x) * (dy1 + dy2);
  };
  auto kernel = [&](double x, double y1, double y2) {
    GroupPoint g(2, x, {y1, y2});
    double R = axb::radial_distance(g);
    if (R < 1e-12) return Cx{0.0, 0.0};
    return std::exp(-x) * std::exp(p.nu * R) / (std::sinh(R) * 4.0 * M_PI);
  };
  // importance sampling: radius density ~ r on [0, rmax] soaks up the 1/R
  // kernel singularity; angles uniform on S^2
  std::mt19937_64 rng(271828);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double rmax = 2.0;
  const long N = 600'000;
  Cx acc{0.0, 0.0};
  for (long i = 0; i < N; ++i) {
    double r = rmax * std::sqrt(u01(rng));
    double c = 2.0 * u01(rng) - 1.0;
    double srt = std::sqrt(1.0 - c * c);
    double ph = 2.0 * M_PI * u01(rng);
    double x = r * c, y1 = r * srt * std::cos(ph), y2 = r * srt * std::sin(ph);
    // dV = r^2 dr dOmega; p(r) = 2 r / rmax^2 -> weight r rmax^2 / 2 * 4 pi...
    double w = 4.0 * M_PI * r * rmax * rmax / 2.0;
    Cx f = (Lphi(x, y1, y2) - lambda * phi(x, y1, y2)) * kernel(x, y1, y2);
    acc += w * f;
  }
  Cx got = acc / static_cast<double>(N);
  CHECK(std::abs(got - 1.0) < 0.02);
}

TEST_SUITE_END();
