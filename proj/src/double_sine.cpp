#include "ruijlab/double_sine.hpp"

#include <cmath>
#include <numbers>

namespace ruijlab {

namespace {

using Cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

}  // namespace

std::complex<double> log_two_sin_pi(std::complex<double> u) {
  const Cplx i(0.0, 1.0);
  if (u.imag() > 8.0)
    return -i * kPi * u + i * (kPi / 2.0) + std::log(1.0 - std::exp(2.0 * i * kPi * u));
  if (u.imag() < -8.0)
    return i * kPi * u - i * (kPi / 2.0) + std::log(1.0 - std::exp(-2.0 * i * kPi * u));
  return std::log(2.0 * std::sin(kPi * u));
}

std::complex<double> log_s2_strip(std::complex<double> z, const Periods& periods,
                                  const QuadratureSpec& spec) {
  const Cplx w1 = periods.omega1, w2 = periods.omega2;
  const Cplx w = w1 + w2;
  const double margin = 0.05 * w.real();
  if (!(z.real() > margin && z.real() < w.real() - margin))
    throw DomainError("log_s2_strip: Re z outside the central strip");

  const Cplx a = 2.0 * z - w;
  const Cplx s2sum = w1 * w1 + w2 * w2;
  const Cplx s4sum = w1 * w1 * w1 * w1 + w2 * w2 * w2 * w2;
  const Cplx p = w1 * w2;

  // Small-t piece: integrand = c0 + c2 t^2 + O(t^4); the direct formula
  // cancels catastrophically there.
  const double scale = std::max({1.0, std::abs(a), std::abs(w1), std::abs(w2)});
  const double t0 = 1e-3 / scale;
  const Cplx c0 = a * (a * a - s2sum) / (12.0 * p);
  const Cplx c2 = a / (2.0 * p) *
                  (a * a * a * a / 120.0 - a * a * s2sum / 36.0 + s2sum * s2sum / 36.0 -
                   p * p / 36.0 - s4sum / 120.0);
  const Cplx head = c0 * t0 + c2 * t0 * t0 * t0 / 3.0;

  // Exponential decay rate of the sinh ratio along the positive real t-axis.
  const double delta = w.real() - std::abs(a.real());
  const double tol = std::max(spec.abs_tol * 0.1, 1e-14);
  const double T = std::log(1e2 / tol) / delta + 5.0 / delta;

  auto integrand = [&](double t) -> Cplx {
    Cplx ct(t, 0.0);
    return std::sinh(a * ct) / (2.0 * ct * std::sinh(w1 * ct) * std::sinh(w2 * ct)) -
           a / (2.0 * p * ct * ct);
  };
  QuadratureSpec qs = spec;
  qs.abs_tol = tol;
  qs.rel_tol = std::max(spec.rel_tol * 0.1, 1e-13);
  // ~1.3 oscillation cycles per initial panel (11+ nodes per cycle); the
  // adaptive splitter refines from there.
  double panel = std::min({(T - t0) / 8.0, 8.0 / (1.0 + std::abs(a.imag())),
                           25.0 / (1.0 + std::abs(a))});
  Estimate body = integrate_finite(integrand, t0, T, qs, panel);

  // Analytic tail of the subtracted 1/t^2 term (the sinh ratio tail is below tol).
  const Cplx tail = -a / (2.0 * p * T);
  return head + body.value + tail;
}

std::complex<double> log_s2(std::complex<double> z, const Periods& periods,
                            const QuadratureSpec& spec, LadderDirection dir) {
  double radius = spec.singularity_radius > 0.0 ? spec.singularity_radius
                                                : periods.default_singularity_radius();
  SingularityInfo info = classify_point(z, periods, radius);
  if (info.is_pole)
    throw NearPoleError("log_s2: argument near a pole of the double sine", z,
                        info.distance);
  if (info.is_zero)
    throw DomainError("log_s2: argument on the zero lattice of the double sine");

  Cplx shift = (dir == LadderDirection::omega1) ? periods.omega1 : periods.omega2;
  Cplx denom = (dir == LadderDirection::omega1) ? periods.omega2 : periods.omega1;
  const Cplx w = periods.sum();
  const double margin = 0.05 * w.real();
  const double strip_hi = w.real() - margin;
  // A shift period that nearly spans the strip would oscillate; use the other.
  if (shift.real() > 0.8 * (strip_hi - margin)) std::swap(shift, denom);

  auto rung = [&](Cplx at, Cplx& step) -> Cplx {
    // log(2 sin(pi at / denom)), falling back to the other shift relation when
    // this sine factor is numerically zero (at on a multiple of denom).
    Cplx u = at / denom;
    if (std::abs(u.imag()) < 1e-8 && std::abs(u.real() - std::round(u.real())) < 1e-8) {
      step = denom;
      return log_two_sin_pi(at / shift);
    }
    step = shift;
    return log_two_sin_pi(u);
  };

  Cplx acc = 0.0;
  Cplx zz = z;
  int guard = 0;
  while (zz.real() <= margin) {
    Cplx step;
    acc += rung(zz, step);
    zz += step;
    if (++guard > 200000) throw ToleranceError("log_s2: ladder failed to converge");
  }
  while (zz.real() >= strip_hi) {
    Cplx step;
    Cplx prev = zz - shift;
    Cplx u = prev / denom;
    if (std::abs(u.imag()) < 1e-8 && std::abs(u.real() - std::round(u.real())) < 1e-8) {
      prev = zz - denom;
      acc -= log_two_sin_pi(prev / shift);
    } else {
      acc -= log_two_sin_pi(u);
    }
    zz = prev;
    if (++guard > 200000) throw ToleranceError("log_s2: ladder failed to converge");
  }
  return acc + log_s2_strip(zz, periods, spec);
}

std::complex<double> s2(std::complex<double> z, const Periods& periods,
                        const QuadratureSpec& spec, LadderDirection dir) {
  double radius = spec.singularity_radius > 0.0 ? spec.singularity_radius
                                                : periods.default_singularity_radius();
  SingularityInfo info = classify_point(z, periods, radius);
  if (info.is_pole)
    throw NearPoleError("s2: argument near a pole of the double sine", z, info.distance);
  if (info.is_zero) return 0.0;
  return std::exp(log_s2(z, periods, spec, dir));
}

std::complex<double> hyperbolic_gamma(std::complex<double> z, const Periods& periods,
                                      const QuadratureSpec& spec) {
  const Cplx i(0.0, 1.0);
  return s2(i * z + periods.sum() / 2.0, periods, spec);
}

}  // namespace ruijlab
