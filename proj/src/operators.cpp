#include "ruijlab/operators.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ruijlab {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Complex table_k(const KernelTable& table, Complex a, double y) {
  // K is even, so K(a - y) = K(y - a) and one offset cache serves both.
  if (a.imag() == 0.0) return table.k(a.real() - y);
  return table.k_off(a, y);
}

}  // namespace

Complex q_kernel(const ComplexTuple& x, const ComplexTuple& y, Complex lambda,
                 const ModelParams& params, const QuadratureSpec& spec) {
  if (x.size() != y.size()) throw ParameterError("q_kernel: tuple sizes must match");
  return std::exp(2.0 * kPi * kI * lambda * (x.sum() - y.sum())) *
         kprod(x, y, params, spec) * muprod(y, params, spec);
}

Complex lambda_kernel(const ComplexTuple& x, const ComplexTuple& y, Complex lambda,
                      const ModelParams& params, const QuadratureSpec& spec) {
  if (x.size() != y.size() + 1)
    throw ParameterError("lambda_kernel: output tuple must be one shorter");
  return std::exp(2.0 * kPi * kI * lambda * (x.sum() - y.sum())) *
         kprod(x, y, params, spec) * muprod(y, params, spec);
}

Estimate apply(const OperatorHandle& op, const FunctionOnTuples& f,
               const ComplexTuple& x) {
  const ModelParams pars = op.acting_params();
  const int n = op.n;
  const int m = op.input_arity();
  if (f.arity != m) throw ParameterError("apply: function arity mismatch");
  if (int(x.size()) != n) throw ParameterError("apply: point arity mismatch");

  const Complex s = op.spectral;
  const double nu = pars.nu_g();
  const double gap = f.dominant_spectral ? std::abs((s - *f.dominant_spectral).imag())
                                         : std::abs(s.imag());
  const bool is_q = (m == n);
  if (is_q && !(gap < 0.5 * nu))
    throw DomainError("apply: spectral parameter outside the Q-operator strip");

  if (m == 0) {
    // Lambda_1 has no integration: (Lambda_1(s) f)(x) = e^{2 pi i s x} f().
    ComplexTuple none;
    Complex v = std::exp(2.0 * kPi * kI * s * x.sum()) * f.evaluator(none);
    return {v, f.err_hint * std::abs(v)};
  }

  // Per-variable truncation rate: the pairwise bound (n K-factors against the
  // 2(m-1) mu growth factors), or the wave-type bound when that degenerates.
  const double eps = 0.5;
  double crude = kPi * nu * (n - 2.0 * (m - 1)) - 2.0 * kPi * gap + f.decay_rate_hint;
  double wave = is_q ? kPi * nu * (1.0 - 2.0 * gap / nu - eps)
                     : kPi * nu * (2.0 - 2.0 * gap / nu - eps);
  double rate = std::max(crude, wave);
  if (!(rate > 0.0)) throw DomainError("apply: combined decay rate not positive");

  double center = 0.0;
  for (const auto& xi : x) center += xi.real();
  center /= double(n);

  DecayProfile profile;
  profile.rate = rate;
  profile.center = center;
  profile.amplitude = std::pow(calibrate_shared_amplitude(pars), double(n));
  profile.osc_freqs.push_back(std::abs(s.real()));
  for (double h : f.osc_freqs_hint) profile.osc_freqs.push_back(std::abs(s.real()) + h);
  std::vector<DecayProfile> profiles(m, profile);

  auto table = shared_kernel_table(pars);
  const Complex xbar = x.sum();
  MultiIntegrand integrand = [&](std::span<const double> y) -> Complex {
    Complex ybar = 0.0;
    for (double yj : y) ybar += yj;
    Complex v = std::exp(2.0 * kPi * kI * s * (xbar - ybar));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) v *= table_k(*table, x[i], y[j]);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) v *= table->mu(y[i] - y[j]);
    std::vector<Complex> yc(y.begin(), y.end());
    return v * f.evaluator(ComplexTuple(std::move(yc)));
  };

  Estimate e = integrate_multi(integrand, profiles, op.spec);
  Complex norm = d_n(m, pars);
  e.value *= norm;
  e.err_est = e.err_est * std::abs(norm) + f.err_hint * (1.0 + std::abs(e.value));
  return e;
}

namespace {

void for_each_subset(int n, int r, const std::function<void(const std::vector<int>&)>& cb) {
  std::vector<int> idx(r);
  std::function<void(int, int)> rec = [&](int start, int k) {
    if (k == r) {
      cb(idx);
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

Complex macdonald_apply(int r, const std::function<Complex(const ComplexTuple&)>& f,
                        const ComplexTuple& x, const ModelParams& params) {
  const int n = static_cast<int>(x.size());
  if (r < 0 || r > n) throw ParameterError("macdonald_apply: need 0 <= r <= n");
  const Complex w1 = params.periods.omega1;
  const Complex w2 = params.periods.omega2;
  const Complex g = params.g;

  Complex total = 0.0;
  for_each_subset(n, r, [&](const std::vector<int>& subset) {
    std::vector<bool> in(n, false);
    for (int i : subset) in[i] = true;
    Complex coeff = 1.0;
    for (int i = 0; i < n; ++i) {
      if (!in[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (in[j]) continue;
        Complex diff = x[i] - x[j];
        Complex den = std::sinh(kPi / w2 * diff);
        if (std::abs(den) < 1e-12)
          throw SingularCoefficientError("macdonald_apply: coinciding coordinates");
        coeff *= std::sinh(kPi / w2 * (diff - kI * g)) / den;
      }
    }
    ComplexTuple shifted = x;
    for (int i : subset) shifted[i] -= kI * w1;
    total += coeff * f(shifted);
  });
  return total;
}

Complex elementary_symmetric(int r, const ComplexTuple& z) {
  const int n = static_cast<int>(z.size());
  if (r < 0 || r > n) throw ParameterError("elementary_symmetric: need 0 <= r <= n");
  std::vector<Complex> e(r + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int k = std::min(r, i + 1); k >= 1; --k) e[k] += z[i] * e[k - 1];
  return e[r];
}

namespace {

Complex sin_ratio(Complex a, Complex b) {
  Complex den = std::sin(b);
  if (std::abs(den) < 1e-12)
    throw SingularCoefficientError("kernel identity: vanishing sine denominator");
  return std::sin(a) / den;
}

Complex identity_sum_x(const ComplexTuple& x, const ComplexTuple& y, Complex alpha,
                       int r) {
  const int n = static_cast<int>(x.size());
  Complex sum = 0.0;
  for_each_subset(n, r, [&](const std::vector<int>& subset) {
    std::vector<bool> in(n, false);
    for (int i : subset) in[i] = true;
    Complex p = 1.0;
    for (int i = 0; i < n; ++i) {
      if (!in[i]) continue;
      for (int j = 0; j < n; ++j)
        if (!in[j]) p *= sin_ratio(x[i] - x[j] - alpha, x[i] - x[j]);
      for (std::size_t a = 0; a < y.size(); ++a)
        p *= sin_ratio(x[i] - y[a] + alpha, x[i] - y[a]);
    }
    sum += p;
  });
  return sum;
}

Complex identity_sum_y(const ComplexTuple& x, const ComplexTuple& y, Complex alpha,
                       int r) {
  const int m = static_cast<int>(y.size());
  if (r < 0 || r > m) return 0.0;
  Complex sum = 0.0;
  for_each_subset(m, r, [&](const std::vector<int>& subset) {
    std::vector<bool> in(m, false);
    for (int a : subset) in[a] = true;
    Complex p = 1.0;
    for (int a = 0; a < m; ++a) {
      if (!in[a]) continue;
      for (int b = 0; b < m; ++b)
        if (!in[b]) p *= sin_ratio(y[a] - y[b] + alpha, y[a] - y[b]);
      for (std::size_t i = 0; i < x.size(); ++i)
        p *= sin_ratio(x[i] - y[a] + alpha, x[i] - y[a]);
    }
    sum += p;
  });
  return sum;
}

}  // namespace

Complex kernel_identity_residual(const ComplexTuple& x, const ComplexTuple& y,
                                 Complex alpha, int r) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());
  if (r < 0 || r > n) throw ParameterError("kernel identity: need 0 <= r <= n");
  if (m != n && m != n - 1)
    throw ParameterError("kernel identity: y must have n or n-1 components");
  Complex lhs = identity_sum_x(x, y, alpha, r);
  Complex rhs = identity_sum_y(x, y, alpha, r);
  if (m == n - 1) rhs += identity_sum_y(x, y, alpha, r - 1);
  return lhs - rhs;
}

Estimate composed_qq_kernel(const ComplexTuple& x, const ComplexTuple& z, Complex lambda,
                            Complex rho, const ModelParams& params,
                            const QuadratureSpec& spec) {
  const int n = static_cast<int>(x.size());
  if (int(z.size()) != n) throw ParameterError("composed_qq_kernel: size mismatch");
  const double nu = params.nu_g();
  const double gap = std::abs((lambda - rho).imag());
  if (!(gap < nu))
    throw DomainError("composed_qq_kernel: |Im(lambda - rho)| must be < nu_g");

  auto table = shared_kernel_table(params);
  const Complex xbar = x.sum(), zbar = z.sum();
  const Complex tail = muprod(z, params, spec);

  DecayProfile profile;
  profile.rate = 2.0 * kPi * (nu - gap);
  profile.amplitude = std::pow(calibrate_shared_amplitude(params), double(n));
  for (const auto& xi : x) profile.center += xi.real();
  for (const auto& zi : z) profile.center += zi.real();
  profile.center /= double(2 * n);
  profile.osc_freqs = {std::abs((lambda - rho).real())};
  std::vector<DecayProfile> profiles(n, profile);

  MultiIntegrand integrand = [&](std::span<const double> y) -> Complex {
    Complex ybar = 0.0;
    for (double yj : y) ybar += yj;
    Complex v = std::exp(2.0 * kPi * kI * (lambda * (xbar - ybar) + rho * (ybar - zbar)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        v *= table_k(*table, x[i], y[j]);
        v *= table_k(*table, z[i], y[j]);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) v *= table->mu(y[i] - y[j]);
    return v;
  };

  Estimate e = integrate_multi(integrand, profiles, spec);
  Complex norm = d_n(n, params, spec);
  norm *= norm;
  e.value *= norm * tail;
  e.err_est *= std::abs(norm * tail);
  return e;
}

}  // namespace ruijlab
