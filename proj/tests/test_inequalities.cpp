#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ruijlab/inequalities.hpp"

using namespace ruijlab;
namespace {

// flat-loop reference for the nested-sum recursion
double s_fn_flat(const LevelTuples& y) {
  double s = 0.0;
  for (std::size_t m = 1; m < y.size(); ++m) {
    const auto& cur = y[m];
    const auto& prev = y[m - 1];
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = 0; j < cur.size(); ++j)
        if (i != j) s += std::abs(cur[i] - cur[j]);
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = 0; j < prev.size(); ++j) s -= std::abs(cur[i] - prev[j]);
  }
  return s;
}

double norm1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

LevelTuples random_levels(Rng& rng, int n, double bound) {
  LevelTuples y(n);
  for (int k = 0; k < n; ++k) {
    y[k].resize(k + 1);
    for (auto& v : y[k]) v = rng.uniform(-bound, bound);
  }
  return y;
}

}  // namespace

TEST_CASE("combinatorial constants: exact values and factorial sandwich") {
  CHECK(c_n(1) == 0.0);
  CHECK(c_n(2) == 1.0);
  CHECK(c_n(3) == 4.0);
  CHECK(c_n(4) == 15.0);
  CHECK(c_n(5) == 64.0);
  CHECK(c_n(6) == 325.0);
  double fact = 1.0;
  for (int n = 2; n <= 12; ++n) {
    fact *= (n - 1);
    CHECK(c_n(n) >= fact);
    CHECK(c_n(n) < fact * std::numbers::e);
  }
}

TEST_CASE("nested-sum recursion matches the flat-loop reference") {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      LevelTuples y = random_levels(rng, n, 3.0);
      CHECK(s_fn(y) == doctest::Approx(s_fn_flat(y)).epsilon(1e-12));
    }
}

TEST_CASE("top-level sum matches its flat-loop reference") {
  Rng rng(12);
  for (int n = 1; n <= 5; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      LevelTuples y = random_levels(rng, n, 2.0);
      std::vector<double> t(n);
      for (auto& v : t) v = rng.uniform(-2.0, 2.0);
      double ref = s_fn_flat(y);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i != j) ref += std::abs(t[i] - t[j]);
          ref -= std::abs(t[i] - y[n - 1][j]);
        }
      CHECK(t_fn(y, t) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("refined triangle inequality holds for random draws") {
  Rng rng(13);
  for (int rep = 0; rep < 20000; ++rep) {
    double y1 = rng.uniform(-5.0, 5.0), y2 = rng.uniform(-5.0, 5.0);
    double y = rng.uniform(-5.0, 5.0), eps = rng.uniform(0.0, 2.0);
    CHECK(check_triangle_refinement(y1, y2, y, eps));
  }
  CHECK_THROWS_AS(check_triangle_refinement(1.0, 2.0, 0.5, 2.5), ParameterError);
  CHECK_THROWS_AS(check_triangle_refinement(1.0, 2.0, 0.5, -0.1), ParameterError);
}

TEST_CASE("level-sum bound holds for random draws") {
  Rng rng(14);
  for (int n = 2; n <= 6; ++n)
    for (int rep = 0; rep < 2000; ++rep) {
      LevelTuples y = random_levels(rng, n, 4.0);
      double eps = rng.uniform(0.0, 2.0 * (n - 1));
      CHECK(check_s_bound(y, eps));
    }
  LevelTuples y = random_levels(rng, 3, 1.0);
  CHECK_THROWS_AS(check_s_bound(y, 4.5), ParameterError);
}

TEST_CASE("top-level bound holds for random draws") {
  Rng rng(15);
  for (int n = 2; n <= 6; ++n)
    for (int rep = 0; rep < 2000; ++rep) {
      LevelTuples y = random_levels(rng, n, 4.0);
      std::vector<double> t(n);
      for (auto& v : t) v = rng.uniform(-4.0, 4.0);
      double r = rng.uniform(0.0, 1.0);
      CHECK(check_t_bound(y, t, r));
    }
}

TEST_CASE("net truncation rates and admissibility guards") {
  ModelParams p(Periods(1.0, std::sqrt(2.0)), 0.6);
  double eps = 0.5;
  // outermost level with an applied operator
  double outer = net_decay_rate(3, 3, 0.1, 0.01, eps, p);
  CHECK(outer == doctest::Approx(1.0 - 0.1 - eps));
  // outermost level of the bare wave-function integral
  double outer_psi = net_decay_rate(3, 3, 0.1, 0.01, eps, p, true);
  CHECK(outer_psi == doctest::Approx(2.0 - 0.01 - eps));
  // inner level
  double inner = net_decay_rate(3, 2, 0.1, 0.01, eps, p);
  CHECK(inner == doctest::Approx(eps / c_n(3) - 0.01));
  CHECK_THROWS_AS(net_decay_rate(3, 3, 0.6, 0.01, 0.5, p), ParameterError);
  CHECK_THROWS_AS(net_decay_rate(3, 2, 0.1, 0.2, 0.5, p), ParameterError);
}

TEST_CASE("random generator is deterministic and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    double v = c.uniform(-2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
}

TEST_CASE("malformed level tuples are rejected") {
  LevelTuples bad = {{1.0}, {2.0}};  // second level must have two entries
  CHECK_THROWS_AS(s_fn(bad), ParameterError);
}
