#include "ruijlab/model.hpp"

#include <cmath>

namespace ruijlab {

namespace {

const Complex kI(0.0, 1.0);

// zero / pole disposition of a single S2 factor at argument z
enum class Disposition { regular, zero, pole };

Disposition dispose(Complex z, const Periods& periods, const QuadratureSpec& spec) {
  double radius = spec.singularity_radius > 0.0 ? spec.singularity_radius
                                                : periods.default_singularity_radius();
  SingularityInfo info = classify_point(z, periods, radius);
  if (info.is_zero) return Disposition::zero;
  if (info.is_pole) return Disposition::pole;
  return Disposition::regular;
}

}  // namespace

Complex mu(Complex x, const ModelParams& params, const QuadratureSpec& spec) {
  const Periods& w = params.periods;
  Complex num = kI * x;
  Complex den = kI * x + params.g;
  Disposition dn = dispose(num, w, spec);
  Disposition dd = dispose(den, w, spec);
  if (dn == Disposition::pole || dd == Disposition::zero)
    throw NearPoleError("mu: argument near a pole", x, 0.0);
  if (dn == Disposition::zero || dd == Disposition::pole) return 0.0;
  return std::exp(log_s2(num, w, spec) - log_s2(den, w, spec));
}

Complex kfun(Complex x, const ModelParams& params, const QuadratureSpec& spec) {
  const Periods& w = params.periods;
  Complex zp = kI * x + params.g_star() / 2.0;
  Complex zm = -kI * x + params.g_star() / 2.0;
  Disposition dp = dispose(zp, w, spec);
  Disposition dm = dispose(zm, w, spec);
  if (dp == Disposition::zero || dm == Disposition::zero)
    throw NearPoleError("kfun: argument near a pole", x, 0.0);
  if (dp == Disposition::pole || dm == Disposition::pole) return 0.0;
  return std::exp(-log_s2(zp, w, spec) - log_s2(zm, w, spec));
}

Complex mu_hat(Complex lam, const ModelParams& params, const QuadratureSpec& spec) {
  return mu(lam, params.dual(), spec);
}

Complex k_hat(Complex lam, const ModelParams& params, const QuadratureSpec& spec) {
  return kfun(lam, params.dual(), spec);
}

Complex kprod(const ComplexTuple& x, const ComplexTuple& y, const ModelParams& params,
              const QuadratureSpec& spec) {
  Complex out = 1.0;
  for (const auto& xi : x)
    for (const auto& yj : y) out *= kfun(xi - yj, params, spec);
  return out;
}

Complex muprod(const ComplexTuple& y, const ModelParams& params,
               const QuadratureSpec& spec) {
  Complex out = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (i != j) out *= mu(y[i] - y[j], params, spec);
  return out;
}

Complex muprime(const ComplexTuple& x, const ModelParams& params,
                const QuadratureSpec& spec) {
  Complex out = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) out *= mu(x[i] - x[j], params, spec);
  return out;
}

Complex d_n(int n, const ModelParams& params, const QuadratureSpec& spec) {
  if (n < 0) throw ParameterError("d_n: n must be non-negative");
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  Complex log_unit = 0.5 * std::log(params.periods.product()) +
                     log_s2(params.g, params.periods, spec);
  return std::exp(-double(n) * log_unit) / fact;
}

DecayRates decay_rates(const ModelParams& params) {
  return {params.nu_g(), params.nu_g_star()};
}

double calibrate_amplitude(const ModelParams& params, const QuadratureSpec& spec) {
  const double pi = 3.14159265358979323846;
  const double nu = params.nu_g();
  double best = 0.0;
  for (int i = 1; i <= 24; ++i) {
    double x = 0.45 * i / nu;  // coarse grid reaching ~11/nu on both sides
    for (double s : {-1.0, 1.0}) {
      double ax = std::abs(s * x);
      best = std::max(best, std::abs(kfun(s * x, params, spec)) * std::exp(pi * nu * ax));
      best = std::max(best, std::abs(mu(s * x, params, spec)) * std::exp(-pi * nu * ax));
    }
  }
  return 1.2 * best;
}

}  // namespace ruijlab
