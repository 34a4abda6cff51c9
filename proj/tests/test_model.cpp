#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ruijlab/double_sine.hpp"
#include "ruijlab/model.hpp"

using namespace ruijlab;
namespace {
constexpr double kPi = std::numbers::pi;
const ModelParams kP(Periods(1.0, std::sqrt(2.0)), 0.6);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams(Periods(1.0, 1.0), -0.1), ParameterError);
  CHECK_THROWS_AS(ModelParams(Periods(1.0, 1.0), 2.5), ParameterError);
  CHECK_NOTHROW(ModelParams(Periods(Complex(1.0, 0.2), Complex(1.3, -0.1)), Complex(0.5, 0.1)));
}

TEST_CASE("conjugate coupling and dual data") {
  CHECK(std::abs(kP.g_star() - (kP.periods.sum() - kP.g)) == 0.0);
  CHECK(kP.nu_g() == doctest::Approx(0.6 / std::sqrt(2.0)).epsilon(1e-14));
  // the dual of the dual is the original parameter set
  ModelParams dd = kP.dual().dual();
  CHECK(std::abs(dd.periods.omega1 - kP.periods.omega1) < 1e-14);
  CHECK(std::abs(dd.periods.omega2 - kP.periods.omega2) < 1e-14);
  CHECK(std::abs(dd.g - kP.g) < 1e-14);
}

TEST_CASE("measure density vanishes at the origin and is built from the double sine") {
  CHECK(mu(Complex(0.0, 0.0), kP) == Complex(0.0, 0.0));
  Complex x(0.8, 0.1);
  Complex direct = s2(Complex(0, 1) * x, kP.periods) / s2(Complex(0, 1) * x + kP.g, kP.periods);
  CHECK(std::abs(mu(x, kP) - direct) < 1e-10 * std::abs(direct));
}

TEST_CASE("kernel factor is even and matches its double-sine form") {
  for (double x : {0.3, 1.2, 2.7}) {
    Complex a = kfun(Complex(x, 0.0), kP);
    Complex b = kfun(Complex(-x, 0.0), kP);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
  }
  Complex x(0.5, 0.2);
  Complex gs2 = 0.5 * kP.g_star();
  Complex direct = 1.0 / (s2(Complex(0, 1) * x + gs2, kP.periods) *
                          s2(-Complex(0, 1) * x + gs2, kP.periods));
  CHECK(std::abs(kfun(x, kP) - direct) < 1e-10 * std::abs(direct));
}

TEST_CASE("spectral-side functions equal the coordinate ones at dual parameters") {
  Complex lam(0.4, 0.05);
  CHECK(std::abs(k_hat(lam, kP) - kfun(lam, kP.dual())) < 1e-12);
  CHECK(std::abs(mu_hat(lam, kP) - mu(lam, kP.dual())) < 1e-12);
}

TEST_CASE("normalization constants satisfy the factorial recursion") {
  Complex d1 = d_n(1, kP);
  CHECK(std::abs(d_n(2, kP) - d1 * d1 / 2.0) < 1e-12 * std::abs(d1 * d1));
  CHECK(std::abs(d_n(3, kP) - d1 * d1 * d1 / 6.0) < 1e-12 * std::abs(d1 * d1 * d1));
  Complex ref = 1.0 / (std::sqrt(kP.periods.product()) * s2(kP.g, kP.periods));
  CHECK(std::abs(d1 - ref) < 1e-10 * std::abs(ref));
}

TEST_CASE("kernel decays and measure grows at the documented exponential rates") {
  double nu = kP.nu_g();
  double c = calibrate_amplitude(kP);
  CHECK(c > 0.0);
  for (double x : {5.0, 10.0, 20.0}) {
    CHECK(std::abs(kfun(Complex(x, 0.0), kP)) <= c * std::exp(-kPi * nu * x));
    CHECK(std::abs(mu(Complex(x, 0.0), kP)) <= c * std::exp(kPi * nu * x));
  }
}

TEST_CASE("measure asymptotics approach the oscillating exponential") {
  Complex ghat = kP.g_hat();
  Complex gs = kP.g_star();
  double nu = kP.nu_g();
  for (double ax : {20.0, 40.0}) {
    for (double sign : {1.0, -1.0}) {
      double x = sign * ax / nu;
      Complex ratio = mu(Complex(x, 0.0), kP) * std::exp(-kPi * ghat * std::abs(x)) *
                      std::exp(Complex(0.0, -sign) * kPi * ghat * gs * 0.5);
      CHECK(std::abs(ratio - 1.0) <= 10.0 / std::abs(x));
    }
  }
}

TEST_CASE("pole proximity is reported, not silently evaluated") {
  // mu has a pole where the denominator double sine hits its zero lattice:
  // i x + g = 0  =>  x = i g
  CHECK_THROWS_AS(mu(Complex(0.0, 0.6), kP), NearPoleError);
  // K has poles at x = +- i g*/2
  CHECK_THROWS_AS(kfun(Complex(0.0, 0.5 * kP.g_star().real()), kP), NearPoleError);
}

TEST_CASE("tuple products unfold into scalar factors") {
  ComplexTuple x({0.3, -0.5}), y({0.1, 0.7});
  Complex kk = kprod(x, y, kP);
  Complex ref = kfun(x[0] - y[0], kP) * kfun(x[0] - y[1], kP) * kfun(x[1] - y[0], kP) *
                kfun(x[1] - y[1], kP);
  CHECK(std::abs(kk - ref) < 1e-10 * std::abs(ref));
  Complex mm = muprod(y, kP);
  Complex mref = mu(y[0] - y[1], kP) * mu(y[1] - y[0], kP);
  CHECK(std::abs(mm - mref) < 1e-10 * std::abs(mref));
}

TEST_CASE("decay rates expose both sides") {
  DecayRates r = decay_rates(kP);
  CHECK(r.nu_g == doctest::Approx(kP.nu_g()));
  CHECK(r.nu_g_star == doctest::Approx(kP.nu_g_star()));
}
