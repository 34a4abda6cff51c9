#include "ruijlab/wavefunction.hpp"

#include <cmath>
#include <numbers>

#include "ruijlab/inequalities.hpp"
#include "ruijlab/kernel_table.hpp"

namespace ruijlab {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double max_spectral_gap(const ComplexTuple& lambda) {
  double gap = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (std::size_t k = j + 1; k < lambda.size(); ++k)
      gap = std::max(gap, std::abs((lambda[j] - lambda[k]).imag()));
  return gap;
}

}  // namespace

PairFunctionCache::PairFunctionCache(std::function<Complex(Complex)> diagonal,
                                     Complex c, double strip_height)
    : diag_(std::move(diagonal)), c_(c), strip_(strip_height) {
  if (!(strip_ > 0.0)) throw ParameterError("pair cache needs a positive strip height");
}

Complex PairFunctionCache::operator()(Complex u1, Complex u2) const {
  const Complex d = u1 - u2;
  const Complex phase = std::exp(kPi * kI * c_ * (u1 + u2));
  const double im = d.imag();
  if (!(std::abs(im) < strip_))
    throw DomainError("pair cache: difference leaves the analyticity strip");
  std::shared_ptr<ChebLineCache> line;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = lines_.find(im);
    if (it == lines_.end()) {
      double margin = std::max(strip_ - std::abs(im), 0.15 * strip_);
      double width = 0.6 * margin;
      auto f = diag_;
      it = lines_
               .emplace(im, std::make_shared<ChebLineCache>(
                                [f, im](double t) { return f(Complex(t, im)); }, width))
               .first;
    }
    line = it->second;
  }
  return phase * (*line)(d.real());
}

double theta(double eps, int n, const ModelParams& params) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("theta: eps must lie in (0,1)");
  if (n < 1) throw ParameterError("theta: n must be >= 1");
  return params.nu_g() * eps / (4.0 * factorial(n - 1) * std::numbers::e);
}

void WaveSpec::validate() const {
  const int nn = n();
  if (nn < 1 || nn > 3)
    throw ParameterError("wave function implemented for 1 <= n <= 3");
  if (int(x.size()) != nn) throw ParameterError("coordinate/spectral arity mismatch");
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0,1)");
  const double half_strip = 0.5 * params.g_star().real();
  for (const auto& xi : x)
    if (!(std::abs(xi.imag()) < half_strip))
      throw DomainError("coordinate outside the analyticity strip |Im x| < Re(g*)/2");
  if (nn >= 2) {
    const double th = theta(eps, nn, params);
    if (!(max_spectral_gap(lambda) < th))
      throw DomainError("spectral gap violates |Im(l_j - l_k)| < theta(eps)");
  }
}

namespace {

struct WaveContext {
  const WaveSpec& w;
  std::shared_ptr<const KernelTable> table;
  double amplitude;
  double nu;
  std::shared_ptr<PairFunctionCache> psi2;  // two-argument slice, n = 3 only
  double psi2_err = 0.0;
};

// psi at recursion level k: the outer tuple has k entries (complex only at
// the top level), lower levels are reached through real integration tuples.
Estimate psi_level(const WaveContext& ctx, int k, const std::vector<Complex>& xk) {
  const WaveSpec& w = ctx.w;
  if (k == 1) return {std::exp(2.0 * kPi * kI * w.lambda[0] * xk[0]), 0.0};
  if (k == 2 && ctx.psi2) return {(*ctx.psi2)(xk[0], xk[1]), ctx.psi2_err};

  const int n = w.n();
  const int j = k - 1;  // dimension of the integration tuple at this level
  const Complex lk = w.lambda[k - 1];
  const Complex lprev = w.lambda[k - 2];
  const double nu = ctx.nu;
  const double gap = std::abs((lk - lprev).imag());
  const double delta_l = 2.0 * max_spectral_gap(w.lambda) / nu;

  // Pairwise bound: k kernel factors against 2(j-1) measure growth factors;
  // the recursion-wide bound covers the regime where that degenerates.
  double coeff = double(k) - 2.0 * double(j - 1) - 2.0 * gap / nu;
  double bound = (j == n - 1) ? (2.0 - delta_l - w.eps) : (w.eps / c_n(n) - delta_l);
  double rate = kPi * nu * std::max(coeff, bound);
  if (!(rate > 0.0)) throw DomainError("psi: level decay rate not positive");

  DecayProfile profile;
  profile.rate = rate;
  profile.amplitude = std::pow(ctx.amplitude, double(k));
  for (const auto& xi : xk) profile.center += xi.real();
  profile.center /= double(k);
  profile.osc_freqs = {std::abs(lk.real()) + std::abs(lprev.real())};
  std::vector<DecayProfile> profiles(j, profile);

  QuadratureSpec qs = w.spec;
  qs.abs_tol = w.spec.abs_tol * std::pow(0.05, double(n - k));
  Complex xbar = 0.0;
  for (const auto& xi : xk) xbar += xi;

  double inner_err = 0.0;
  MultiIntegrand integrand = [&](std::span<const double> y) -> Complex {
    Complex ybar = 0.0;
    for (double yj : y) ybar += yj;
    Complex v = std::exp(2.0 * kPi * kI * lk * (xbar - ybar));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < j; ++b) {
        const Complex& xa = xk[a];
        v *= (xa.imag() == 0.0) ? ctx.table->k(xa.real() - y[b])
                                : ctx.table->k_off(xa, y[b]);
      }
    for (int a = 0; a < j; ++a)
      for (int b = 0; b < j; ++b)
        if (a != b) v *= ctx.table->mu(y[a] - y[b]);
    std::vector<Complex> yc(y.begin(), y.end());
    Estimate inner = psi_level(ctx, k - 1, yc);
    inner_err = std::max(inner_err, inner.err_est);
    return v * inner.value;
  };

  Estimate e = integrate_multi(integrand, profiles, qs);
  Complex norm = d_n(j, w.params);
  e.value *= norm;
  e.err_est = e.err_est * std::abs(norm) + 5.0 * inner_err;
  return e;
}

}  // namespace

Estimate psi(const WaveSpec& w) {
  w.validate();
  WaveContext ctx{w, shared_kernel_table(w.params),
                  std::max(1.0, calibrate_shared_amplitude(w.params)), w.params.nu_g()};
  if (w.n() == 3) {
    // The two-particle inner function is translation covariant, so the whole
    // recursion below the top level reduces to one function of the pair
    // difference, interpolated instead of re-integrated at every outer point.
    WaveSpec inner;
    inner.params = w.params;
    inner.lambda = ComplexTuple({w.lambda[0], w.lambda[1]});
    inner.spec = w.spec;
    inner.spec.abs_tol = w.spec.abs_tol * 0.05;
    inner.eps = w.eps;
    ctx.psi2 = std::make_shared<PairFunctionCache>(
        [inner](Complex d) {
          WaveSpec ws = inner;
          ws.x = ComplexTuple({0.5 * d, -0.5 * d});
          return psi(ws).value;
        },
        w.lambda[0] + w.lambda[1], 0.8 * w.params.g_star().real());
    ctx.psi2_err = 10.0 * inner.spec.abs_tol;
  }
  return psi_level(ctx, w.n(), w.x.values());
}

Estimate psi_dual(const WaveSpec& w) {
  WaveSpec dual;
  dual.params = w.params.dual();
  dual.lambda = w.x;
  dual.x = w.lambda;
  dual.spec = w.spec;
  dual.eps = w.eps;
  return psi(dual);
}

Estimate psi_mixed(const WaveSpec& w) {
  w.validate();
  if (!w.params.periods.real_positive())
    throw DomainError("psi_mixed requires real positive periods");
  const int n = w.n();
  if (n == 1) return {std::exp(2.0 * kPi * kI * w.lambda[0] * w.x[0]), 0.0};

  const ModelParams pars = w.params;
  const ModelParams dual = pars.dual();
  auto table = shared_kernel_table(pars);
  auto table_hat = shared_kernel_table(dual);
  const int m = n - 1;
  const Complex ln = w.lambda[n - 1];
  const Complex xn = w.x[n - 1];
  const double nu = pars.nu_g();
  const double nu_hat = dual.nu_g();  // = Re g* for these parameters

  Complex xbar = 0.0, lbar = 0.0;
  for (int i = 0; i < m; ++i) {
    xbar += w.x[i];
    lbar += w.lambda[i];
  }

  DecayProfile py, pg;
  py.rate = kPi * nu * (1.0 - w.eps - 2.0 * std::abs(ln.imag()) / nu);
  pg.rate = kPi * nu_hat * (1.0 - w.eps - 2.0 * std::abs(xn.imag()) / nu_hat);
  if (!(py.rate > 0.0) || !(pg.rate > 0.0))
    throw DomainError("psi_mixed: decay rates not positive");
  py.center = xbar.real() / double(m);
  pg.center = lbar.real() / double(m);
  py.amplitude = pg.amplitude = calibrate_shared_amplitude(pars);
  py.osc_freqs = {std::abs(ln.real())};
  pg.osc_freqs = {std::abs(xn.real())};
  std::vector<DecayProfile> profiles;
  for (int i = 0; i < m; ++i) profiles.push_back(py);
  for (int i = 0; i < m; ++i) profiles.push_back(pg);

  QuadratureSpec qs = w.spec;
  if (2 * m > 3) qs.multi_dim_strategy = MultiDimStrategy::quasi_monte_carlo;

  double inner_err = 0.0;
  MultiIntegrand integrand = [&](std::span<const double> yv) -> Complex {
    std::vector<Complex> y(yv.begin(), yv.begin() + m);
    std::vector<Complex> gamma(yv.begin() + m, yv.end());
    Complex ybar = 0.0, gbar = 0.0;
    for (int i = 0; i < m; ++i) {
      ybar += y[i];
      gbar += gamma[i];
    }
    Complex v = std::exp(2.0 * kPi * kI * (ln * (xbar - ybar) + xn * (lbar - gbar)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        v *= table->k_off(w.x[i], yv[j]);
        v *= table_hat->k_off(w.lambda[i], yv[m + j]);
      }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) {
          v *= table->mu(yv[i] - yv[j]);
          v *= table_hat->mu(yv[m + i] - yv[m + j]);
        }
    // wave function at spectral tuple gamma, coordinates y
    WaveSpec inner;
    inner.params = pars;
    inner.lambda = ComplexTuple(gamma);
    inner.x = ComplexTuple(y);
    inner.spec = w.spec;
    inner.spec.abs_tol = w.spec.abs_tol * 0.05;
    inner.eps = w.eps;
    Estimate pe = psi(inner);
    inner_err = std::max(inner_err, pe.err_est);
    return v * pe.value;
  };

  Estimate e = integrate_multi(integrand, profiles, qs);
  Complex norm = std::exp(2.0 * kPi * kI * ln * xn) * d_n(m, pars) * d_n(m, dual);
  e.value *= norm;
  e.err_est = e.err_est * std::abs(norm) + 5.0 * inner_err;
  return e;
}

}  // namespace ruijlab
