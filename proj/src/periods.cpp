#include "ruijlab/periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ruijlab {

namespace {

struct LatticeHit {
  int m = 0;
  int k = 0;
  double dist = std::numeric_limits<double>::infinity();
  std::complex<double> point{0.0, 0.0};
};

void consider(LatticeHit& best, std::complex<double> w, std::complex<double> o1,
              std::complex<double> o2, long m, long k, long mmin, long kmin) {
  if (m < mmin || k < kmin) return;
  std::complex<double> p = double(m) * o1 + double(k) * o2;
  double d = std::abs(w - p);
  if (d < best.dist) {
    best.dist = d;
    best.m = static_cast<int>(m);
    best.k = static_cast<int>(k);
    best.point = p;
  }
}

// Nearest point of {m o1 + k o2 : m >= mmin, k >= kmin} to w.
LatticeHit nearest_lattice(std::complex<double> w, std::complex<double> o1,
                           std::complex<double> o2, long mmin, long kmin) {
  LatticeHit best;
  const double det = o1.real() * o2.imag() - o1.imag() * o2.real();
  const double scale = std::abs(o1) * std::abs(o2);

  auto best_k_for_m = [&](long m) {
    std::complex<double> r = w - double(m) * o1;
    double k0 = (r.real() * o2.real() + r.imag() * o2.imag()) / std::norm(o2);
    for (long dk = -1; dk <= 1; ++dk)
      consider(best, w, o1, o2, m, std::lround(k0) + dk, mmin, kmin);
    consider(best, w, o1, o2, m, kmin, mmin, kmin);
  };

  if (std::abs(det) > 1e-8 * scale) {
    // Periods independent over the reals: invert the 2x2 system and probe the
    // rounding neighbourhood (with index clamping for the constrained corner).
    double m0 = (w.real() * o2.imag() - w.imag() * o2.real()) / det;
    for (long dm = -2; dm <= 2; ++dm) {
      long m = std::max(mmin, std::lround(m0) + dm);
      best_k_for_m(m);
    }
    best_k_for_m(mmin);
  } else {
    // (Nearly) collinear periods, e.g. both real: scan m along the line.
    std::complex<double> u = o1 / std::abs(o1);
    double t = w.real() * u.real() + w.imag() * u.imag();
    long mmax = std::lround(std::max(0.0, t / std::abs(o1))) + 2;
    mmax = std::min(mmax, 200000L);
    for (long m = mmin; m <= mmax; ++m) best_k_for_m(m);
  }
  return best;
}

}  // namespace

SingularityInfo classify_point(std::complex<double> z, const Periods& periods,
                               double radius) {
  if (radius <= 0.0) radius = periods.default_singularity_radius();
  // zeros at -(m w1 + k w2), m,k >= 0; poles at m w1 + k w2, m,k >= 1
  LatticeHit zero = nearest_lattice(-z, periods.omega1, periods.omega2, 0, 0);
  LatticeHit pole = nearest_lattice(z, periods.omega1, periods.omega2, 1, 1);

  SingularityInfo info;
  if (zero.dist <= pole.dist) {
    info.distance = zero.dist;
    info.m = zero.m;
    info.k = zero.k;
    info.lattice_point = -zero.point;
    info.is_zero = zero.dist <= radius;
  } else {
    info.distance = pole.dist;
    info.m = pole.m;
    info.k = pole.k;
    info.lattice_point = pole.point;
    info.is_pole = pole.dist <= radius;
  }
  return info;
}

}  // namespace ruijlab
