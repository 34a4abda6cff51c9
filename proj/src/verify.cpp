#include "ruijlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "ruijlab/double_sine.hpp"
#include "ruijlab/inequalities.hpp"
#include "ruijlab/kernel_table.hpp"
#include "ruijlab/operators.hpp"
#include "ruijlab/wavefunction.hpp"

namespace ruijlab {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

CheckReport make_report(std::string relation_id, const ModelParams& params, int n,
                        std::vector<Complex> sample, Complex lhs, Complex rhs,
                        double budget, double rel_floor, std::uint64_t seed,
                        Clock::time_point t0) {
  CheckReport r;
  r.relation_id = std::move(relation_id);
  r.params = params;
  r.n = n;
  r.sample = std::move(sample);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  r.rel_err = r.abs_err / scale;
  r.err_budget = budget;
  r.tolerance = std::max(3.0 * budget, rel_floor * scale);
  r.passed = r.abs_err <= std::max(r.tolerance, r.err_budget);
  r.seed = seed;
  r.runtime_ms = ms_since(t0);
  return r;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 0xCBF29CE484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t hash_params_u64(const ModelParams& params) {
  double v[6] = {params.periods.omega1.real(), params.periods.omega1.imag(),
                 params.periods.omega2.real(), params.periods.omega2.imag(),
                 params.g.real(),              params.g.imag()};
  return fnv1a(v, sizeof(v));
}

// Real tuple with all pairwise separations at least min_sep (rejection draw).
std::vector<Complex> draw_separated(Rng& rng, int n, double bound, double min_sep) {
  std::vector<Complex> v(n);
  for (int attempt = 0; attempt < 200; ++attempt) {
    for (int i = 0; i < n; ++i) v[i] = Complex(rng.uniform(-bound, bound), 0.0);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(v[i] - v[j]) < min_sep) { ok = false; break; }
    if (ok) return v;
  }
  for (int i = 0; i < n; ++i) v[i] = Complex(-0.8 + 1.6 * i / std::max(1, n - 1), 0.0);
  return v;
}

Complex table_k_at(const KernelTable& table, Complex a, double y) {
  if (a.imag() == 0.0) return table.k(a.real() - y);
  return table.k_off(a, y);
}

}  // namespace

std::string params_hash(const ModelParams& params) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash_params_u64(params)));
  return std::string(buf);
}

std::vector<CheckReport> check_s2_suite(const ModelParams& params,
                                        const QuadratureSpec& spec, std::uint64_t seed,
                                        int samples) {
  const Periods& per = params.periods;
  const bool real_pers = per.real_positive();
  const double rel_floor = real_pers ? 1e-10 : 1e-8;
  Rng rng(seed);
  std::vector<CheckReport> out;

  auto eval = [&](Complex z) { return s2(z, per, spec); };

  for (int i = 0; i < samples; ++i) {
    Complex z = (0.15 + 0.7 * rng.uniform(0.0, 1.0)) * per.sum() +
                kI * rng.uniform(-0.5, 0.5);
    double scale = std::max(1.0, std::abs(z));
    double budget = 5e-13 * scale;

    {
      auto t0 = Clock::now();
      Complex lhs = eval(z);
      Complex rhs = 2.0 * std::sin(kPi * z / per.omega2) * eval(z + per.omega1);
      out.push_back(make_report("s2_shift_omega1", params, 1, {z}, lhs, rhs, budget,
                                rel_floor, seed, t0));
    }
    {
      auto t0 = Clock::now();
      Complex lhs = eval(z);
      Complex rhs = 2.0 * std::sin(kPi * z / per.omega1) * eval(z + per.omega2);
      out.push_back(make_report("s2_shift_omega2", params, 1, {z}, lhs, rhs, budget,
                                rel_floor, seed, t0));
    }
    {
      auto t0 = Clock::now();
      Complex lhs = eval(z) * eval(per.sum() - z);
      out.push_back(make_report("s2_inversion", params, 1, {z}, lhs, 1.0, budget,
                                rel_floor, seed, t0));
    }
    {
      auto t0 = Clock::now();
      Complex lhs = eval(z) * eval(-z);
      Complex rhs = -4.0 * std::sin(kPi * z / per.omega1) * std::sin(kPi * z / per.omega2);
      out.push_back(make_report("s2_reflection", params, 1, {z}, lhs, rhs, budget,
                                rel_floor, seed, t0));
    }
    {
      auto t0 = Clock::now();
      Complex lhs = eval(z);
      Complex rhs = s2(z, per.swapped(), spec);
      out.push_back(make_report("s2_period_swap", params, 1, {z}, lhs, rhs, budget,
                                rel_floor, seed, t0));
    }
    {
      auto t0 = Clock::now();
      double gamma = rng.uniform(0.5, 2.0);
      Complex lhs = s2(gamma * z, Periods(gamma * per.omega1, gamma * per.omega2), spec);
      Complex rhs = eval(z);
      out.push_back(make_report("s2_homogeneity", params, 1, {z, Complex(gamma, 0.0)},
                                lhs, rhs, budget, rel_floor, seed, t0));
    }
  }
  {
    auto t0 = Clock::now();
    Complex lhs = eval(per.omega1);
    Complex rhs = std::sqrt(per.omega2 / per.omega1);
    out.push_back(make_report("s2_special_value", params, 1, {per.omega1}, lhs, rhs,
                              1e-12, 1e-10, seed, t0));
  }
  return out;
}

std::vector<CheckReport> check_fourier_k(const ModelParams& params,
                                         const std::vector<Complex>& lambda_grid,
                                         const QuadratureSpec& spec,
                                         std::uint64_t seed) {
  std::vector<CheckReport> out;
  const double nu = params.nu_g();
  auto table = shared_kernel_table(params);
  const double amp = calibrate_shared_amplitude(params);
  const Complex prefactor =
      std::sqrt(params.periods.product()) * s2(params.g, params.periods, spec);

  for (Complex lam : lambda_grid) {
    auto t0 = Clock::now();
    const double gap = std::abs(lam.imag());
    if (!(gap < 0.5 * nu))
      throw DomainError("fourier check: |Im lambda| must be < nu_g / 2");

    DecayProfile profile;
    profile.rate = kPi * nu - 2.0 * kPi * gap;
    profile.amplitude = amp;
    profile.osc_freqs = {std::abs(lam.real())};
    Estimate lhs = integrate_line(
        [&](double x) { return std::exp(2.0 * kPi * kI * lam * x) * table->k(x); },
        profile, spec);
    Complex rhs = prefactor * k_hat(lam, params, spec);

    double rel_floor = (gap > 0.4 * 0.5 * nu) ? 1e-5 : 1e-8;
    double budget = lhs.err_est + 1e-10 * std::max(1.0, std::abs(rhs));
    out.push_back(make_report("fourier_k", params, 1, {lam}, lhs.value, rhs, budget,
                              rel_floor, seed, t0));
  }
  return out;
}

std::vector<CheckReport> check_qq_commutativity(int n, const ModelParams& params,
                                                int samples, const QuadratureSpec& spec,
                                                std::uint64_t seed) {
  if (n < 1 || n > 2) throw ParameterError("qq check implemented for n in {1,2}");
  Rng rng(seed);
  std::vector<CheckReport> out;
  const double nu = params.nu_g();
  const double rel_floor = (n == 1) ? 1e-6 : 1e-4;

  for (int i = 0; i < samples; ++i) {
    auto x = draw_separated(rng, n, 1.0, 0.15);
    auto z = draw_separated(rng, n, 1.0, 0.15);
    Complex lam(rng.uniform(-0.5, 0.5), 0.0);
    Complex rho(rng.uniform(-0.5, 0.5), 0.0);
    if (i % 3 == 1) {
      lam += kI * 0.15 * nu * rng.uniform(-1.0, 1.0);
      rho += kI * 0.15 * nu * rng.uniform(-1.0, 1.0);
    }

    auto t0 = Clock::now();
    Estimate a = composed_qq_kernel(ComplexTuple(x), ComplexTuple(z), lam, rho, params, spec);
    Estimate b = composed_qq_kernel(ComplexTuple(x), ComplexTuple(z), rho, lam, params, spec);

    std::vector<Complex> sample = x;
    sample.insert(sample.end(), z.begin(), z.end());
    sample.push_back(lam);
    sample.push_back(rho);
    out.push_back(make_report("qq_commutativity", params, n, std::move(sample), a.value,
                              b.value, a.err_est + b.err_est, rel_floor, seed, t0));
  }
  return out;
}

std::vector<CheckReport> check_ql_exchange(const ModelParams& params, int samples,
                                           const QuadratureSpec& spec,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckReport> out;
  const double nu = params.nu_g();
  auto table = shared_kernel_table(params);
  const double amp = std::max(1.0, calibrate_shared_amplitude(params));

  for (int i = 0; i < samples; ++i) {
    auto xv = draw_separated(rng, 2, 1.0, 0.15);
    Complex z(rng.uniform(-1.0, 1.0), 0.0);
    Complex lam(rng.uniform(-0.4, 0.4), 0.0);
    Complex rho(rng.uniform(-0.4, 0.4), 0.0);
    if (i % 3 == 2) lam += kI * 0.45 * 0.5 * nu;  // strip-interior imaginary part

    const double gap = std::abs((lam - rho).imag());
    if (!(gap < 0.5 * nu))
      throw DomainError("ql check: |Im(lambda - rho)| must be < nu_g / 2");

    auto t0 = Clock::now();
    const Complex x1 = xv[0], x2 = xv[1];
    const Complex xbar = x1 + x2;

    // Kernel of Q_2(lam) . L_2(rho) at (x1, x2; z): integral over y in R^2.
    DecayProfile p2;
    p2.rate = kPi * nu - 2.0 * kPi * gap;
    p2.center = 0.5 * (x1.real() + x2.real());
    p2.amplitude = std::pow(amp, 5.0);
    p2.osc_freqs = {std::abs(lam.real()) + std::abs(rho.real())};
    std::vector<DecayProfile> profiles2(2, p2);
    MultiIntegrand f2 = [&](std::span<const double> y) -> Complex {
      Complex ybar = Complex(y[0] + y[1], 0.0);
      Complex v = std::exp(2.0 * kPi * kI * (lam * (xbar - ybar) + rho * (ybar - z)));
      for (int a = 0; a < 2; ++a) {
        v *= table_k_at(*table, x1, y[a]);
        v *= table_k_at(*table, x2, y[a]);
        v *= table->k(y[a] - z.real());
      }
      v *= table->mu(y[0] - y[1]) * table->mu(y[1] - y[0]);
      return v;
    };
    Estimate lhs_int = integrate_multi(f2, profiles2, spec);
    Complex lhs_norm = d_n(2, params, spec) * d_n(1, params, spec);
    Complex lhs = lhs_int.value * lhs_norm;

    // K^(lam - rho) x kernel of L_2(rho) . Q_1(lam): integral over w in R.
    DecayProfile p1;
    p1.rate = 3.0 * kPi * nu - 2.0 * kPi * gap;
    p1.center = 0.5 * (x1.real() + x2.real());
    p1.amplitude = std::pow(amp, 3.0);
    p1.osc_freqs = {std::abs(lam.real()) + std::abs(rho.real())};
    Estimate rhs_int = integrate_line(
        [&](double w) -> Complex {
          Complex v = std::exp(2.0 * kPi * kI * (rho * (xbar - w) + lam * (w - z)));
          v *= table_k_at(*table, x1, w);
          v *= table_k_at(*table, x2, w);
          v *= table->k(w - z.real());
          return v;
        },
        p1, spec);
    Complex d1 = d_n(1, params, spec);
    Complex rhs_norm = k_hat(lam - rho, params, spec) * d1 * d1;
    Complex rhs = rhs_int.value * rhs_norm;

    double budget =
        lhs_int.err_est * std::abs(lhs_norm) + rhs_int.err_est * std::abs(rhs_norm);
    out.push_back(make_report("ql_exchange", params, 2, {x1, x2, z, lam, rho}, lhs, rhs,
                              budget, 1e-5, seed, t0));
  }
  return out;
}

namespace {

// Eigen-relation sample data shared by the Q and dual-Q checks.
struct EigenSample {
  std::vector<Complex> lambda;  // spectral tuple of the wave function
  std::vector<Complex> x;       // coordinate tuple
  Complex s;                    // spectral parameter of the applied operator
};

EigenSample draw_eigen_sample(Rng& rng, int n, double nu_strip, bool complex_s) {
  EigenSample es;
  auto l = draw_separated(rng, n, 0.5, 0.1);
  auto x = draw_separated(rng, n, 1.0, 0.15);
  es.lambda = l;
  es.x = x;
  es.s = Complex(rng.uniform(-0.5, 0.5), 0.0);
  if (complex_s) es.s += kI * 0.2 * 0.5 * nu_strip;
  return es;
}

}  // namespace

std::vector<CheckReport> check_q_eigen(int n, const ModelParams& params, int samples,
                                       const QuadratureSpec& spec, std::uint64_t seed) {
  if (n < 1 || n > 2) throw ParameterError("q eigen check implemented for n in {1,2}");
  Rng rng(seed);
  std::vector<CheckReport> out;
  const double rel_floor = (n == 1) ? 1e-8 : 1e-4;

  for (int i = 0; i < samples; ++i) {
    EigenSample es = draw_eigen_sample(rng, n, params.nu_g(), n == 1 && i % 2 == 1);
    ComplexTuple lt(es.lambda), xt(es.x);

    auto t0 = Clock::now();
    WaveSpec base;
    base.params = params;
    base.lambda = lt;
    base.x = xt;
    base.spec = spec;
    Estimate at_x = psi(base);

    FunctionOnTuples f;
    f.arity = n;
    std::shared_ptr<PairFunctionCache> cache;
    if (n == 2) {
      // Translation covariance reduces the two-particle wave function to one
      // cached function of the coordinate difference.
      cache = std::make_shared<PairFunctionCache>(
          [base](Complex d) {
            WaveSpec w = base;
            w.x = ComplexTuple({0.5 * d, -0.5 * d});
            return psi(w).value;
          },
          es.lambda[0] + es.lambda[1], 0.8 * params.g_star().real());
    }
    f.evaluator = [&, cache](const ComplexTuple& y) -> Complex {
      if (cache) return (*cache)(y[0], y[1]);
      WaveSpec w = base;
      w.x = y;
      return psi(w).value;
    };
    for (Complex lj : es.lambda) f.osc_freqs_hint.push_back(std::abs(lj.real()));
    Complex dom = es.lambda[0];
    for (Complex lj : es.lambda)
      if (std::abs((es.s - lj).imag()) > std::abs((es.s - dom).imag())) dom = lj;
    f.dominant_spectral = dom;
    f.err_hint = std::max(at_x.err_est, n == 2 ? 10.0 * spec.abs_tol : 0.0);

    OperatorHandle op(OperatorKind::baxter_q, n, es.s, params, spec);
    Estimate lhs = apply(op, f, xt);

    Complex eig = 1.0;
    for (Complex lj : es.lambda) eig *= k_hat(es.s - lj, params, spec);
    Complex rhs = eig * at_x.value;

    std::vector<Complex> sample = es.lambda;
    sample.insert(sample.end(), es.x.begin(), es.x.end());
    sample.push_back(es.s);
    double budget = lhs.err_est + std::abs(eig) * at_x.err_est;
    out.push_back(make_report("q_eigen", params, n, std::move(sample), lhs.value, rhs,
                              budget, rel_floor, seed, t0));
  }
  return out;
}

std::vector<CheckReport> check_dual_q_eigen(int n, const ModelParams& params,
                                            int samples, const QuadratureSpec& spec,
                                            std::uint64_t seed) {
  if (n < 1 || n > 2) throw ParameterError("dual q eigen check implemented for n in {1,2}");
  Rng rng(seed);
  std::vector<CheckReport> out;
  const double rel_floor = (n == 1) ? 1e-8 : 1e-4;
  const double nu_dual = params.dual().nu_g();

  for (int i = 0; i < samples; ++i) {
    EigenSample es = draw_eigen_sample(rng, n, nu_dual, n == 1 && i % 2 == 1);
    ComplexTuple lt(es.lambda), xt(es.x);

    auto t0 = Clock::now();
    WaveSpec base;
    base.params = params;
    base.lambda = lt;
    base.x = xt;
    base.spec = spec;
    Estimate at_l = psi(base);

    // The spectral-side operator acts on the wave function as a function of
    // its spectral tuple, with the coordinates held fixed.
    FunctionOnTuples f;
    f.arity = n;
    std::shared_ptr<PairFunctionCache> cache;
    if (n == 2) {
      // In the spectral variables the wave function is translation covariant
      // with phase set by the coordinate sum, so the same reduction applies.
      cache = std::make_shared<PairFunctionCache>(
          [base](Complex d) {
            WaveSpec w = base;
            w.lambda = ComplexTuple({0.5 * d, -0.5 * d});
            return psi(w).value;
          },
          es.x[0] + es.x[1], 0.8 * params.nu_g());
    }
    f.evaluator = [&, cache](const ComplexTuple& gamma) -> Complex {
      if (cache) return (*cache)(gamma[0], gamma[1]);
      WaveSpec w = base;
      w.lambda = gamma;
      return psi(w).value;
    };
    for (Complex xj : es.x) f.osc_freqs_hint.push_back(std::abs(xj.real()));
    Complex dom = es.x[0];
    for (Complex xj : es.x)
      if (std::abs((es.s - xj).imag()) > std::abs((es.s - dom).imag())) dom = xj;
    f.dominant_spectral = dom;
    f.err_hint = std::max(at_l.err_est, n == 2 ? 10.0 * spec.abs_tol : 0.0);

    OperatorHandle op(OperatorKind::baxter_q_dual, n, es.s, params, spec);
    Estimate lhs = apply(op, f, lt);

    Complex eig = 1.0;
    for (Complex xj : es.x) eig *= kfun(es.s - xj, params, spec);
    Complex rhs = eig * at_l.value;

    std::vector<Complex> sample = es.lambda;
    sample.insert(sample.end(), es.x.begin(), es.x.end());
    sample.push_back(es.s);
    double budget = lhs.err_est + std::abs(eig) * at_l.err_est;
    out.push_back(make_report("dual_q_eigen", params, n, std::move(sample), lhs.value,
                              rhs, budget, rel_floor, seed, t0));
  }
  return out;
}

std::vector<CheckReport> check_duality(int n, const ModelParams& params, int samples,
                                       const QuadratureSpec& spec, std::uint64_t seed) {
  if (n < 2 || n > 3) throw ParameterError("duality check implemented for n in {2,3}");
  if (!params.periods.real_positive())
    throw DomainError("duality check requires real positive periods");
  Rng rng(seed);
  std::vector<CheckReport> out;
  const double rel_floor = (n == 2) ? 1e-6 : 1e-3;

  for (int i = 0; i < samples; ++i) {
    auto l = draw_separated(rng, n, 0.6, 0.1);
    auto x = draw_separated(rng, n, 1.0, 0.15);

    auto t0 = Clock::now();
    WaveSpec w;
    w.params = params;
    w.lambda = ComplexTuple(l);
    w.x = ComplexTuple(x);
    w.spec = spec;
    Estimate a = psi(w);
    Estimate b = psi_dual(w);

    std::vector<Complex> sample = l;
    sample.insert(sample.end(), x.begin(), x.end());
    out.push_back(make_report("duality", params, n, std::move(sample), a.value, b.value,
                              a.err_est + b.err_est, rel_floor, seed, t0));
  }
  return out;
}

std::vector<CheckReport> check_macdonald(int n, int r, const ModelParams& params,
                                         int samples, const QuadratureSpec& spec,
                                         std::uint64_t seed) {
  if (n < 1 || n > 2) throw ParameterError("difference-operator check implemented for n in {1,2}");
  if (r < 1 || r > n) throw ParameterError("need 1 <= r <= n");
  if (!(params.g.real() < params.periods.omega2.real()))
    throw DomainError("difference-operator check requires Re g < Re omega2");
  if (!(params.periods.omega1.real() < 0.5 * params.g_star().real()))
    throw DomainError("coordinate shift exits the analyticity strip");
  Rng rng(seed | 1);
  std::vector<CheckReport> out;
  const double rel_floor = (n == 1) ? 1e-12 : 1e-4;
  const Complex w1 = params.periods.omega1;

  for (int i = 0; i < samples; ++i) {
    auto l = draw_separated(rng, n, 0.5, 0.1);
    auto x = draw_separated(rng, n, 1.0, 0.25);

    auto t0 = Clock::now();
    WaveSpec base;
    base.params = params;
    base.lambda = ComplexTuple(l);
    base.x = ComplexTuple(x);
    base.spec = spec;
    Estimate at_x = psi(base);

    double err_sum = 0.0;
    std::shared_ptr<PairFunctionCache> cache;
    if (n == 2)
      cache = std::make_shared<PairFunctionCache>(
          [base](Complex d) {
            WaveSpec w = base;
            w.x = ComplexTuple({0.5 * d, -0.5 * d});
            return psi(w).value;
          },
          ComplexTuple(l).sum(), 0.8 * params.g_star().real());
    auto f = [&](const ComplexTuple& y) -> Complex {
      if (cache) {
        err_sum += 10.0 * spec.abs_tol;
        return (*cache)(y[0], y[1]);
      }
      WaveSpec w = base;
      w.x = y;
      Estimate e = psi(w);
      err_sum += e.err_est;
      return e.value;
    };
    Complex lhs = macdonald_apply(r, f, base.x, params);

    std::vector<Complex> expvals(n);
    for (int j = 0; j < n; ++j) expvals[j] = std::exp(2.0 * kPi * l[j] * w1);
    Complex eig = elementary_symmetric(r, ComplexTuple(expvals));
    Complex rhs = eig * at_x.value;

    std::vector<Complex> sample = l;
    sample.insert(sample.end(), x.begin(), x.end());
    double budget = 20.0 * err_sum + std::abs(eig) * at_x.err_est;
    out.push_back(make_report("macdonald_r" + std::to_string(r), params, n,
                              std::move(sample), lhs, rhs, budget, rel_floor, seed, t0));
  }
  return out;
}

std::vector<CheckReport> check_lambda_symmetry(int n, const ModelParams& params,
                                               int samples, const QuadratureSpec& spec,
                                               std::uint64_t seed) {
  if (n < 2 || n > 3) throw ParameterError("symmetry check implemented for n in {2,3}");
  Rng rng(seed);
  std::vector<CheckReport> out;
  const double rel_floor = (n == 2) ? 1e-6 : 1e-3;

  for (int i = 0; i < samples; ++i) {
    auto l = draw_separated(rng, n, 0.6, 0.1);
    auto x = draw_separated(rng, n, 1.0, 0.15);

    auto t0 = Clock::now();
    WaveSpec w;
    w.params = params;
    w.lambda = ComplexTuple(l);
    w.x = ComplexTuple(x);
    w.spec = spec;
    Estimate a = psi(w);

    // transpose the last two spectral components
    std::vector<std::size_t> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    std::swap(perm[n - 2], perm[n - 1]);
    WaveSpec ws = w;
    ws.lambda = w.lambda.permuted(perm);
    Estimate b = psi(ws);

    std::vector<Complex> sample = l;
    sample.insert(sample.end(), x.begin(), x.end());
    out.push_back(make_report("lambda_symmetry", params, n, std::move(sample), a.value,
                              b.value, a.err_est + b.err_est, rel_floor, seed, t0));
  }
  return out;
}

namespace {

struct Job {
  std::string suite;
  std::function<std::vector<CheckReport>()> fn;
};

bool suite_selected(const std::string& suite, const std::vector<std::string>& filter) {
  if (filter.empty()) return true;
  for (const auto& f : filter)
    if (suite.find(f) != std::string::npos || f.find(suite) != std::string::npos)
      return true;
  return false;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RUIJ_LAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 2;
}

}  // namespace

VerifyRun run_all(const VerifyConfig& config) {
  const Periods p_real(1.0, std::sqrt(2.0));
  const Periods p_shift(0.3, 1.0);
  const Periods p_cplx(Complex(1.0, 0.2), Complex(1.3, -0.1));
  const std::vector<Periods> period_grid = {p_real, p_shift, p_cplx};
  const std::vector<Complex> g_grid = {0.4, 0.6, Complex(0.5, 0.1)};

  QuadratureSpec tight = config.spec;
  tight.abs_tol = std::min(tight.abs_tol, 1e-12);
  tight.rel_tol = std::min(tight.rel_tol, 1e-11);
  QuadratureSpec mid = config.spec;
  mid.abs_tol = std::min(mid.abs_tol, 1e-9);
  QuadratureSpec loose = config.spec;
  loose.abs_tol = std::max(config.spec.abs_tol, 1e-7);
  loose.rel_tol = std::max(config.spec.rel_tol, 1e-6);

  auto job_seed = [&](const std::string& suite, const ModelParams& pars) {
    std::uint64_t h = fnv1a(suite.data(), suite.size(), config.seed ^ 0x9E3779B97F4A7C15ULL);
    return h ^ hash_params_u64(pars);
  };

  std::vector<Job> jobs;
  auto add = [&](const std::string& suite, std::function<std::vector<CheckReport>()> fn) {
    if (suite_selected(suite, config.check_filter)) jobs.push_back({suite, std::move(fn)});
  };

  for (const Periods& per : period_grid) {
    ModelParams pars(per, 0.6);
    add("s2_suite", [=] { return check_s2_suite(pars, tight, job_seed("s2_suite", pars), 5); });
  }

  for (const Periods& per : period_grid)
    for (Complex g : g_grid) {
      ModelParams pars(per, g);
      double half = 0.5 * pars.nu_g();
      std::vector<Complex> grid = {0.0, 0.3, Complex(0.15, 0.2 * half), -0.3};
      add("fourier_k",
          [=] { return check_fourier_k(pars, grid, mid, job_seed("fourier_k", pars)); });
    }

  {
    ModelParams pr(p_real, 0.6);
    ModelParams pc(p_cplx, Complex(0.5, 0.1));
    add("qq_commutativity",
        [=] { return check_qq_commutativity(1, pr, 3, mid, job_seed("qq1", pr)); });
    add("qq_commutativity",
        [=] { return check_qq_commutativity(1, pc, 2, mid, job_seed("qq1", pc)); });
    add("qq_commutativity",
        [=] { return check_qq_commutativity(2, pr, 1, loose, job_seed("qq2", pr)); });
    add("ql_exchange",
        [=] { return check_ql_exchange(pr, 1, loose, job_seed("ql", pr)); });
    add("q_eigen", [=] { return check_q_eigen(1, pr, 2, mid, job_seed("qe1", pr)); });
    add("q_eigen", [=] { return check_q_eigen(2, pr, 1, loose, job_seed("qe2", pr)); });
    add("dual_q_eigen",
        [=] { return check_dual_q_eigen(1, pr, 2, mid, job_seed("dqe1", pr)); });
    add("dual_q_eigen",
        [=] { return check_dual_q_eigen(2, pr, 1, loose, job_seed("dqe2", pr)); });
    add("lambda_symmetry",
        [=] { return check_lambda_symmetry(2, pr, 2, mid, job_seed("sym", pr)); });
  }

  for (Complex g : g_grid) {
    ModelParams pars(p_real, g);
    add("duality", [=] { return check_duality(2, pars, 2, mid, job_seed("dual", pars)); });
  }
  {
    ModelParams pm(p_shift, 0.4);
    add("duality", [=] { return check_duality(2, pm, 1, mid, job_seed("dual", pm)); });
    add("macdonald", [=] { return check_macdonald(1, 1, pm, 2, mid, job_seed("mac1", pm)); });
    add("macdonald", [=] { return check_macdonald(2, 1, pm, 1, loose, job_seed("mac21", pm)); });
    add("macdonald", [=] { return check_macdonald(2, 2, pm, 1, loose, job_seed("mac22", pm)); });
  }

  // Each job writes into its own slot, so the aggregate is independent of the
  // thread schedule.
  std::vector<std::vector<CheckReport>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  int workers = std::min<int>(worker_count(config.max_threads),
                              std::max<std::size_t>(jobs.size(), 1));
  auto drain = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      results[i] = jobs[i].fn();
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
  }

  VerifyRun run;
  for (auto& r : results)
    for (auto& rep : r) run.reports.push_back(std::move(rep));
  std::stable_sort(run.reports.begin(), run.reports.end(),
                   [](const CheckReport& a, const CheckReport& b) {
                     return a.relation_id < b.relation_id;
                   });
  run.total = static_cast<int>(run.reports.size());
  for (const auto& rep : run.reports) {
    if (!rep.passed) ++run.failed;
    run.max_rel_err = std::max(run.max_rel_err, rep.rel_err);
  }
  return run;
}

}  // namespace ruijlab
