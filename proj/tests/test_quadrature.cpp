#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ruijlab/quadrature.hpp"

using namespace ruijlab;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("two-sided exponential integrates to its closed form") {
  DecayProfile p;
  p.rate = kPi;
  Estimate e = integrate_line([](double y) { return std::exp(-kPi * std::abs(y)); }, p, {});
  CHECK(std::abs(e.value - 2.0 / kPi) < 1e-9);
  CHECK(e.err_est < 1e-7);
}

TEST_CASE("gaussian integrates to sqrt(pi)") {
  DecayProfile p;
  p.rate = 1.0;
  p.amplitude = 2.0;  // e^{-y^2} <= 2 e^{-|y|}
  Estimate e = integrate_line([](double y) { return std::exp(-y * y); }, p, {});
  CHECK(std::abs(e.value - std::sqrt(kPi)) < 1e-9);
}

TEST_CASE("oscillatory transform of the two-sided exponential") {
  // integral of e^{-|y|} e^{2 pi i f y} dy = 2 / (1 + 4 pi^2 f^2)
  for (double f : {0.5, 3.0, 10.0}) {
    DecayProfile p;
    p.rate = 1.0;
    p.osc_freqs = {f};
    Estimate e = integrate_line(
        [f](double y) {
          return std::exp(-std::abs(y)) * std::exp(std::complex<double>(0.0, 2.0 * kPi * f * y));
        },
        p, {});
    double ref = 2.0 / (1.0 + 4.0 * kPi * kPi * f * f);
    CHECK(std::abs(e.value - ref) < 1e-9);
  }
}

TEST_CASE("off-center decay is truncated correctly") {
  DecayProfile p;
  p.rate = 2.0;
  p.center = 7.0;
  Estimate e = integrate_line([](double y) { return std::exp(-2.0 * std::abs(y - 7.0)); }, p, {});
  CHECK(std::abs(e.value - 1.0) < 1e-9);
}

TEST_CASE("nested multidimensional product integrals") {
  for (int d : {1, 2, 3}) {
    std::vector<DecayProfile> ps(d);
    for (auto& p : ps) p.rate = kPi;
    Estimate e = integrate_multi(
        [](std::span<const double> y) {
          double s = 0.0;
          for (double v : y) s += std::abs(v);
          return std::exp(-kPi * s);
        },
        ps, {});
    CHECK(std::abs(e.value - std::pow(2.0 / kPi, d)) < 1e-7 * std::pow(2.0, d));
  }
}

TEST_CASE("asymmetric profiles follow their own variables") {
  std::vector<DecayProfile> ps(2);
  ps[0].rate = 1.0;
  ps[1].rate = 3.0;
  auto f = [](std::span<const double> y) {
    return std::exp(-std::abs(y[0]) - 3.0 * std::abs(y[1]));
  };
  Estimate e = integrate_multi(f, ps, {});
  CHECK(std::abs(e.value - 2.0 * (2.0 / 3.0)) < 1e-8);
  // swapped profile order with swapped integrand gives the same value
  std::vector<DecayProfile> qs = {ps[1], ps[0]};
  Estimate e2 = integrate_multi(
      [](std::span<const double> y) {
        return std::exp(-3.0 * std::abs(y[0]) - std::abs(y[1]));
      },
      qs, {});
  CHECK(std::abs(e.value - e2.value) < 1e-9);
}

TEST_CASE("quasi-random strategy handles four dimensions") {
  std::vector<DecayProfile> ps(4);
  for (auto& p : ps) p.rate = 2.0;
  QuadratureSpec spec;
  spec.multi_dim_strategy = MultiDimStrategy::quasi_monte_carlo;
  Estimate e = integrate_multi(
      [](std::span<const double> y) {
        double s = 0.0;
        for (double v : y) s += std::abs(v);
        return std::exp(-2.0 * s);
      },
      ps, spec);
  CHECK(std::abs(e.value - 1.0) < 2e-3);
  CHECK(e.err_est > 0.0);
}

TEST_CASE("fixed tensor strategy agrees with the adaptive one") {
  std::vector<DecayProfile> ps(2);
  for (auto& p : ps) p.rate = kPi;
  QuadratureSpec spec;
  spec.multi_dim_strategy = MultiDimStrategy::tensor_fixed;
  auto f = [](std::span<const double> y) {
    return std::exp(-(y[0] * y[0] + y[1] * y[1]));
  };
  for (auto& p : ps) {
    p.rate = 1.0;
    p.amplitude = 2.0;
  }
  Estimate a = integrate_multi(f, ps, spec);
  CHECK(std::abs(a.value - kPi) < 1e-8);
}

TEST_CASE("nested strategy refuses more than three dimensions") {
  std::vector<DecayProfile> ps(4);
  for (auto& p : ps) p.rate = 1.0;
  CHECK_THROWS_AS(
      integrate_multi([](std::span<const double>) { return std::complex<double>(1.0); },
                      ps, {}),
      StrategyError);
}

TEST_CASE("exhausted split budget raises a tolerance error") {
  QuadratureSpec spec;
  spec.max_subdivisions = 4;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-14;
  CHECK_THROWS_AS(
      integrate_finite([](double y) { return std::complex<double>(std::cos(200.0 * y * y)); },
                       0.0, 20.0, spec),
      ToleranceError);
}

TEST_CASE("non-finite integrand values are reported, not propagated") {
  CHECK_THROWS_AS(
      integrate_finite([](double y) { return std::complex<double>(1.0 / y); }, -1.0, 1.0, {}),
      NonFiniteError);
}

TEST_CASE("results are bitwise deterministic") {
  DecayProfile p;
  p.rate = 1.0;
  p.osc_freqs = {2.0};
  auto f = [](double y) {
    return std::exp(-std::abs(y)) * std::complex<double>(std::cos(4.0 * kPi * y), 0.3);
  };
  Estimate a = integrate_line(f, p, {});
  Estimate b = integrate_line(f, p, {});
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
  CHECK(a.err_est == b.err_est);
}

TEST_CASE("spec validation rejects nonsense") {
  QuadratureSpec s;
  s.abs_tol = -1.0;
  CHECK_THROWS_AS(s.validate(), ParameterError);
  QuadratureSpec s2;
  s2.qmc_samples = 2;
  CHECK_THROWS_AS(s2.validate(), ParameterError);
}
