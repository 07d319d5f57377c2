#include <cmath>
#include <complex>
#include <vector>

#include "axb/dsh.hpp"
#include "axb/quadrature.hpp"
#include "doctest.h"

using axb::Cx;
using axb::CxFn;
using axb::QuadSpec;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("oscillatory panels reproduce the plane-wave antiderivative") {
  CxFn one = [](double) { return Cx{1.0, 0.0}; };
  QuadSpec q;
  for (double R : {0.5, 2.0}) {
    for (double s : {10.0, 1e2, 1e3, 1e4}) {
      Cx got = axb::integrate_osc(one, R, R + 1.0, s, q).value;
      Cx want = (std::exp(Cx(0, s * (R + 1.0))) - std::exp(Cx(0, s * R))) /
                Cx(0, s);
      CHECK(std::abs(got - want) <= 10.0 * q.rel_tol * std::abs(want));
    }
  }
}

TEST_CASE("endpoint substitution removes the inverse-sqrt singularity") {
  // int_0^1 v^{-1/2} dv = 2 through the power-endpoint machinery
  CxFn g = [](double u) { return Cx(1.0 / std::sqrt(u), 0.0); };
  Cx got = axb::integrate_power_endpoint(g, -0.5, 1.0, {}).value;
  CHECK(std::abs(got.real() - 2.0) < 1e-10);
  CHECK(got.imag() == 0.0);
}

TEST_CASE("singular endpoint accuracy against a refined reference") {
  // int_R^{R+1} (ch v - ch R)^{-1/2} dv, reference at 100x tighter tolerance
  for (double R : {0.01, 0.1, 1.0, 5.0}) {
    CxFn one = [](double) { return Cx{1.0, 0.0}; };
    QuadSpec q;
    Cx got = axb::integrate_singular_osc(one, -0.5, R, 0.0, R + 1.0, 1.0, q).value;
    QuadSpec fine = q;
    fine.rel_tol = q.rel_tol * 1e-2;
    fine.abs_tol = q.abs_tol * 1e-2;
    Cx ref =
        axb::integrate_singular_osc(one, -0.5, R, 0.0, R + 1.0, 1.0, fine).value;
    CHECK(std::abs(got - ref) <= 10.0 * q.rel_tol * std::abs(ref));
  }
}

TEST_CASE("decaying tails with certified truncation") {
  CxFn e = [](double v) { return Cx(std::exp(-v), 0.0); };
  CHECK(std::abs(axb::integrate_decaying(e, 0.0, 1.0, {}).value.real() - 1.0) <
        1e-10);
  CxFn ve = [](double v) { return Cx(v * std::exp(-v), 0.0); };
  CHECK(std::abs(axb::integrate_decaying(ve, 0.0, 1.0, {}).value.real() - 1.0) <
        1e-10);
  // e^{(nu-1)v} from a = 2 with nu = -0.5
  const double nu = -0.5, a = 2.0;
  CxFn f = [&](double v) { return Cx(std::exp((nu - 1.0) * v), 0.0); };
  double want = std::exp((nu - 1.0) * a) / (1.0 - nu);
  CHECK(std::abs(axb::integrate_decaying(f, a, 1.0 - nu, {}).value.real() -
                 want) < 1e-10 * want);
}

TEST_CASE("cosh_diff avoids cancellation near the endpoint") {
  for (double R : {0.01, 1.0, 10.0}) {
    for (double u : {1e-12, 1e-6, 0.1, 2.0}) {
      double stable = axb::cosh_diff(R, u);
      CHECK(stable > 0.0);
      if (u >= 0.1) {
        // naive subtraction is trustworthy away from the endpoint
        double naive = std::cosh(R + u) - std::cosh(R);
        CHECK(stable == doctest::Approx(naive).epsilon(1e-12));
      } else {
        // midpoint form u sh(R + u/2) is exact to O(u^3) and cancellation-free
        double mid = u * std::sinh(R + 0.5 * u) * (1.0 + u * u / 24.0);
        CHECK(stable == doctest::Approx(mid).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("spherical Bessel values match the closed forms") {
  for (double w : {0.3, 2.0, 15.0, 80.0}) {
    double j[8];
    axb::sph_bessel_array(5, w, j);
    CHECK(j[0] == doctest::Approx(std::sin(w) / w).epsilon(1e-12));
    CHECK(j[1] ==
          doctest::Approx(std::sin(w) / (w * w) - std::cos(w) / w).epsilon(1e-10));
  }
}

TEST_CASE("self-consistency under tolerance refinement") {
  // representative integrand corpus: the oscillatory singular building block
  // at assorted (n, l, R, s), checked against a 10x tighter rerun
  struct Case {
    int l;
    double beta, R, s;
  };
  const std::vector<Case> corpus = {
      {1, 0.0, 0.5, 0.0},   {1, 0.0, 0.5, 30.0},  {1, 0.0, 3.0, 200.0},
      {1, -0.5, 0.2, 5.0},  {1, -0.5, 1.0, 50.0}, {2, 0.5, 0.7, 12.0},
      {2, 0.0, 2.0, 400.0}, {0, -0.5, 0.05, 8.0}, {1, 0.0, 0.01, 100.0},
      {2, 1.0, 1.5, 0.0}};
  QuadSpec q;
  q.rel_tol = 1e-9;
  for (const auto& c : corpus) {
    CxFn f = [&](double v) {
      return axb::dsh_apply_exp(c.l, Cx(0.0, c.s), v) *
             std::exp(Cx(0.0, -c.s * v));
    };
    double n_eff = 2.0 * (c.l - c.beta);
    auto coarse = axb::integrate_singular_osc(
        f, c.beta, c.R, c.s, std::numeric_limits<double>::infinity(),
        0.5 * n_eff, q);
    QuadSpec fine = q;
    fine.rel_tol = 1e-10;
    fine.abs_tol = q.abs_tol * 0.1;
    auto ref = axb::integrate_singular_osc(
        f, c.beta, c.R, c.s, std::numeric_limits<double>::infinity(),
        0.5 * n_eff, fine);
    double scale = std::abs(ref.value);
    CHECK(std::abs(coarse.value - ref.value) <=
          std::max(coarse.error_estimate * 10.0, 1e-8 * scale + 1e-13));
  }
}

TEST_CASE("invalid specifications are rejected") {
  QuadSpec bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CxFn one = [](double) { return Cx{1.0, 0.0}; };
  CHECK_THROWS_AS(
      axb::integrate_singular_osc(one, -1.5, 1.0, 0.0, 2.0, 1.0, {}),
      std::invalid_argument);
}

TEST_SUITE_END();
