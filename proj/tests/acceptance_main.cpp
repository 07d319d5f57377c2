// Acceptance gate: one check per release criterion, each printed as a single
// PASS/FAIL line with its measured figure and runtime.  Exit code 0 iff all
// criteria hold.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axb/estimates.hpp"
#include "axb/group.hpp"
#include "axb/quadrature.hpp"
#include "axb/resolvent.hpp"
#include "axb/spectral.hpp"
#include "axb/transfer.hpp"

using axb::Cx;
using axb::GroupPoint;
using axb::MultiplierProfile;

namespace {

double wall() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int g_failures = 0;

void report(int idx, const std::string& label, bool pass, double figure,
            const std::string& figure_name, double seconds) {
  std::printf("%s  criterion %2d: %-52s  (%s = %.3g, %.1f s)\n",
              pass ? "PASS" : "FAIL", idx, label.c_str(), figure_name.c_str(),
              figure, seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

GroupPoint radial_point(int n, double R) {
  std::vector<double> y(n, 0.0);
  y[0] = std::sqrt(std::max(0.0, 2.0 * (std::cosh(R) - 1.0)));
  return GroupPoint(n, 0.0, y);
}

// 1. closed-form oscillatory building block at n = 2, l = 1
void criterion_1() {
  double t0 = wall(), worst = 0.0;
  for (double R : {0.01, 0.1, 1.0, 5.0})
    for (double s : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
      Cx want = -std::exp(Cx(0, s * R)) / std::sinh(R);
      worst = std::max(worst,
                       std::abs(axb::F_R(2, 1, R, s) - want) / std::abs(want));
    }
  report(1, "F_R closed form (n=2, l=1), 20 points", worst <= 1e-9, worst,
         "max rel err", wall() - t0);
}

// 2. resolvent closed form at n = 2
void criterion_2() {
  double t0 = wall(), worst = 0.0;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ux(-1.5, 1.5), uy(-2.0, 2.0);
  for (Cx lambda : {Cx(-1.0, 0.0), Cx(0.0, -0.5)}) {  // nu = -1, -0.5-0.5i
    axb::ResolventParams p(2, lambda);
    int done = 0;
    while (done < 10) {
      GroupPoint g(2, ux(rng), {uy(rng), uy(rng)});
      double R = axb::radial_distance(g);
      if (R < 1e-2) continue;
      ++done;
      Cx want =
          std::exp(-g.x) * std::exp(p.nu * R) / (std::sinh(R) * 4.0 * M_PI);
      worst = std::max(worst, std::abs(axb::resolvent_kernel(p, g) - want) /
                                  std::abs(want));
    }
  }
  report(2, "resolvent closed form (n=2), 20 random points", worst <= 1e-8,
         worst, "max rel err", wall() - t0);
}

// 3. ODE residual of the radial profile
void criterion_3() {
  double t0 = wall(), worst = 0.0;
  for (int n : {1, 2, 3}) {
    for (Cx lambda : {Cx(-1.0, 0.0), Cx(-0.4, 0.42)}) {
      axb::ResolventParams p(n, lambda);
      for (int i = 0; i < 30; ++i) {
        double d = 1.01 * std::pow(20.0 / 1.01, i / 29.0);
        worst = std::max(worst, axb::ode_residual(p, d));
      }
    }
  }
  report(3, "ODE residual, d in [1.01, 20], n in {1,2,3}", worst <= 1e-4,
         worst, "max residual", wall() - t0);
}

// 4. continuation identity in the iteration order l
void criterion_4() {
  double t0 = wall(), worst = 0.0;
  int points = 0;
  for (double n : {1.5, 2.5}) {
    const int l0 = (n < 2.0) ? 1 : 2;
    for (Cx nu : {Cx(-1.0, 0.0), Cx(-0.3, -0.7)}) {
      for (double R : {0.1, 0.4, 0.9, 1.8, 3.0}) {
        Cx a = axb::f0_profile(n, l0, nu, R);
        Cx b = axb::f0_profile(n, l0 + 1, nu, R);
        worst = std::max(worst, std::abs(a - b) / std::abs(a));
        ++points;
      }
    }
  }
  report(4, "continuation identity l vs l+1, " + std::to_string(points) +
                " points",
         worst <= 1e-7, worst, "max rel err", wall() - t0);
}

// 5. small-R asymptotics of the radial profile
void criterion_5() {
  double t0 = wall();
  const double R = 1e-3;
  bool ok = true;
  double worst_dev = 0.0;
  for (int n : {2, 3}) {
    axb::ResolventParams p(n, Cx(-1.0, 0.0));
    double lead = std::pow(2.0, 0.5 * n - 1.0) * std::pow(M_PI, -0.5) *
                  std::tgamma(0.5 * (n - 1.0)) * std::pow(R, 1.0 - n);
    double dev = std::abs(std::abs(axb::f0_profile(p, R)) / lead - 1.0);
    worst_dev = std::max(worst_dev, dev);
    ok = ok && dev <= 0.05;
  }
  {
    axb::ResolventParams p(1, Cx(-1.0, 0.0));
    double lead = std::sqrt(2.0 / M_PI) * std::abs(std::log(R));
    double dev = std::abs(std::abs(axb::f0_profile(p, R)) / lead - 1.0);
    ok = ok && dev <= 0.2;
    worst_dev = std::max(worst_dev, dev);
  }
  report(5, "small-R asymptotics (n in {1,2,3} at R=1e-3)", ok, worst_dev,
         "max |ratio-1|", wall() - t0);
}

// 6. heat kernel: subordination path vs transferred Gaussian, and unit mass
void criterion_6() {
  double t0 = wall(), worst = 0.0;
  for (double t : {0.1, 1.0}) {
    auto psi = MultiplierProfile::gauss_heat(t);
    for (double R : {0.2, 0.5, 0.9, 1.5, 2.2}) {
      for (double x : {-0.6, 0.7}) {
        GroupPoint g0 = radial_point(2, R);
        GroupPoint g(2, x, g0.y);
        double Rg = axb::radial_distance(g);
        double want = std::exp(-x) * (Rg / std::sinh(Rg)) *
                      std::pow(4.0 * M_PI * t, -1.5) *
                      std::exp(-Rg * Rg / (4.0 * t));
        double got = axb::multiplier_kernel(2, 1, psi, g);
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
      }
    }
  }
  bool ok = worst <= 1e-6;
  // unit mass through the subordination path at t = 0.5
  {
    auto psi = MultiplierProfile::gauss_heat(0.5);
    axb::QuadSpec spec;
    spec.decay_hint = 2.0;
    spec.rel_tol = 1e-8;
    auto g = [&](double R) {
      GroupPoint p = radial_point(2, R);
      return std::abs(axb::multiplier_kernel(2, 1, psi, p, spec));
    };
    double mass = axb::integrate_radial(2, g, spec).value.real();
    ok = ok && std::abs(mass - 1.0) <= 1e-4;
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  report(6, "heat oracle: 20 points, t in {0.1,1}; mass = 1", ok, worst,
         "max dev", wall() - t0);
}

// 7. wave kernel vs transferred Euclidean wave kernel
void criterion_7() {
  double t0 = wall(), worst = 0.0;
  std::vector<GroupPoint> pts;
  for (double R : {0.1, 0.4, 1.0, 2.0, 3.5, 6.0}) pts.push_back(radial_point(2, R));
  worst = std::max(worst,
                   axb::cross_validate(4.0, 1.0, MultiplierProfile::bump_band(), pts));
  worst = std::max(worst,
                   axb::cross_validate(0.5, 2.0, MultiplierProfile::bump_low(), pts));
  worst = std::max(worst, axb::cross_validate(
                              16.0, 0.5, MultiplierProfile::bump_band(), pts));
  report(7, "wave oracle: (lambda,t) in {(4,1),(1/2,2),(16,1/2)}",
         worst <= 1e-4, worst, "max rel err", wall() - t0);
}

// 8. envelope constants for the localized wave kernels
void criterion_8() {
  double t0 = wall();
  bool ok = true;
  double worst_drift = 0.0;
  axb::QuadSpec q;
  q.rel_tol = 1e-7;
  auto run_one = [&](axb::EnvelopeSpec::Regime regime, int n, double lambda,
                     const std::vector<double>& Rs) {
    axb::EnvelopeSpec spec;
    spec.regime = regime;
    spec.n = n;
    spec.N = 4;
    const MultiplierProfile psi = (lambda > 1.0)
                                      ? MultiplierProfile::bump_band()
                                      : MultiplierProfile::bump_low();
    std::vector<double> rhos;
    for (double r : {-2.0, -0.5, 0.0, 0.5, 2.0, 6.0}) rhos.push_back(r / lambda);
    auto rep = axb::check_envelope(spec, psi, {lambda}, Rs, rhos, q);
    ok = ok && rep.pass;
    for (const auto& [k, v] : rep.details)
      if (k == "drift") worst_drift = std::max(worst_drift, v);
  };
  for (int n : {1, 2}) {
    for (double lambda : {0.5, 2.0, 8.0, 32.0}) {
      run_one(axb::EnvelopeSpec::Regime::large_R, n, lambda, {1.0, 2.5, 5.0});
      run_one(axb::EnvelopeSpec::Regime::small_R, n, lambda, {0.05, 0.3, 0.9});
      run_one(axb::EnvelopeSpec::Regime::small_R_improved, n, lambda,
              {0.05, 0.3, 0.9});
    }
  }
  report(8, "envelope fits finite and stable (n in {1,2}, 4 lambdas)", ok,
         worst_drift, "max drift", wall() - t0);
}

// 9. weighted L1 growth exponents of the rescaled wave kernel
void criterion_9() {
  double t0 = wall();
  bool ok = true;
  double worst_dev = 0.0;
  auto run_one = [&](double lambda, const MultiplierProfile& psi,
                     std::vector<double> ts, double want) {
    auto rep = axb::check_l1_growth(2, psi, lambda, 0.0, ts);
    double dev = std::abs(rep.growth_exponent_fit - want);
    worst_dev = std::max(worst_dev, dev);
    ok = ok && rep.pass && dev <= 0.3;
  };
  // high frequency, t <= lambda: exponent n/2 = 1; the law saturates only
  // once t dominates the t-independent tail mass, hence the large lambda
  run_one(64.0, MultiplierProfile::bump_band(), {6.4, 12.8, 25.6, 51.2, 64.0},
          1.0);
  // high frequency, t >= lambda: exponent 1
  run_one(2.0, MultiplierProfile::bump_band(), {4.0, 8.0, 16.0, 32.0, 40.0},
          1.0);
  // low frequency: exponent 1 for all t
  run_one(0.5, MultiplierProfile::bump_low(), {2.0, 4.0, 8.0, 16.0, 20.0},
          1.0);
  report(9, "L1 growth exponents over one decade of t (n=2)", ok, worst_dev,
         "max |slope-target|", wall() - t0);
}

// 10. elementary weighted integrals against their closed-form envelopes
void criterion_10() {
  double t0 = wall();
  double worst = 0.0;
  bool ok = true;
  for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
    double local = 0.0;
    for (double lambda : {0.25, 1.0, 4.0, 16.0, 64.0}) {
      for (double t : {0.0, 0.5, 2.0, 8.0, 32.0, 64.0}) {
        auto b = axb::elementary_bounds(alpha, lambda, t, 4.0);
        local = std::max({local, b.ratio0, b.ratioinf});
        ok = ok && std::isfinite(b.ratio0) && std::isfinite(b.ratioinf);
      }
    }
    // the fitted constant for this (alpha, N) must be uniform and moderate
    ok = ok && local < 10.0;
    worst = std::max(worst, local);
  }
  report(10, "elementary integral envelopes, uniform constant", ok, worst,
         "max ratio", wall() - t0);
}

// 11. sup-norm bound and its lambda-scaling
void criterion_11() {
  double t0 = wall();
  auto rep = axb::check_supnorm(2, {4.0, 16.0, 64.0}, {0.05, 0.5, 5.0});
  bool ok = rep.pass && rep.fitted_constant < 100.0;
  // scaling probe: doubling lambda at t = 1 scales the sup by ~ 2^{n/2+1} = 4
  auto sup_at = [&](double lam) {
    axb::QuadSpec q;
    q.rel_tol = 1e-7;
    double sup = 0.0;
    for (double R = 0.4; R <= 1.8; R += 0.4 / lam) {
      axb::WavePlan plan(2, 1, MultiplierProfile::bump_band(), lam, R, q);
      sup = std::max(sup, std::abs(plan.G(R - 1.0)));
    }
    return sup;
  };
  double scale = sup_at(32.0) / sup_at(16.0);
  ok = ok && scale > 2.0 && scale < 8.0;
  report(11, "sup-norm envelope and 2^{n/2+1} scaling probe", ok, scale,
         "doubling factor", wall() - t0);
}

// 12. radial density regimes and the n = 2 law
void criterion_12() {
  double t0 = wall();
  bool ok = true;
  double worst = 0.0;
  for (double R : {0.01, 0.1, 0.7, 2.0, 9.0, 17.0}) {
    double got = axb::radial_density(2, R).value.real();
    double want = 4.0 * M_PI * R * std::sinh(R);
    double dev = std::abs(got - want) / want;
    worst = std::max(worst, dev);
    ok = ok && dev <= 1e-10;
  }
  for (int n : {1, 2, 3}) {
    for (double R = 1e-3; R <= 1.0; R *= 3.0) {
      double r = axb::radial_density(n, R).value.real() / std::pow(R, n);
      ok = ok && r > 1.0 / 50.0 && r < 50.0;
    }
    for (double R = 1.0; R <= 20.0; R += 3.5) {
      double r = axb::radial_density(n, R).value.real() /
                 (R * std::exp(0.5 * n * R));
      ok = ok && r > 1.0 / 50.0 && r < 50.0;
    }
  }
  report(12, "radial density: regimes in band, n=2 exact law", ok, worst,
         "n=2 max rel err", wall() - t0);
}

// 13. CLI determinism
void criterion_13() {
  double t0 = wall();
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  auto run = [](const std::string& args) {
    int rc = std::system((std::string(AXB_CLI_PATH) + " " + args +
                          " > /dev/null 2>&1")
                             .c_str());
    return WEXITSTATUS(rc);
  };
  const std::string base =
      "kernel --n 2 --lambda 8 --t 1 --R 0.1:6:25 --format csv --threads ";
  bool ok = run(base + "1 -o /tmp/axb_acc_a.csv") == 0 &&
            run(base + "1 -o /tmp/axb_acc_b.csv") == 0 &&
            run(base + "8 -o /tmp/axb_acc_c.csv") == 0;
  std::string a = slurp("/tmp/axb_acc_a.csv");
  ok = ok && !a.empty() && a == slurp("/tmp/axb_acc_b.csv") &&
       a == slurp("/tmp/axb_acc_c.csv");
  report(13, "CLI determinism (repeat and threads=8)", ok, ok ? 0.0 : 1.0,
         "mismatch", wall() - t0);
}

}  // namespace

int main() {
  double t0 = wall();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_13();
  std::printf("%d/13 criteria passed (%.1f s total)\n", 13 - g_failures,
              wall() - t0);
  return g_failures == 0 ? 0 : 1;
}
