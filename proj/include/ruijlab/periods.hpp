#ifndef RUIJLAB_PERIODS_HPP
#define RUIJLAB_PERIODS_HPP

#include <complex>

#include "ruijlab/errors.hpp"

namespace ruijlab {

// Quasi-period pair (omega_1, omega_2), both with positive real part.
struct Periods {
  std::complex<double> omega1{1.0, 0.0};
  std::complex<double> omega2{1.0, 0.0};

  Periods() = default;
  Periods(std::complex<double> o1, std::complex<double> o2) : omega1(o1), omega2(o2) {
    if (!(o1.real() > 0.0) || !(o2.real() > 0.0))
      throw ParameterError("periods must have positive real part");
  }

  std::complex<double> sum() const { return omega1 + omega2; }
  std::complex<double> product() const { return omega1 * omega2; }
  Periods swapped() const { return Periods(omega2, omega1); }
  bool real_positive() const {
    return omega1.imag() == 0.0 && omega2.imag() == 0.0;
  }
  double default_singularity_radius() const { return 1e-6 * std::abs(sum()); }
};

// Location of z relative to the zero lattice {-m w1 - k w2 : m,k >= 0} and
// the pole lattice {m w1 + k w2 : m,k >= 1} of the double sine function.
struct SingularityInfo {
  bool is_zero = false;
  bool is_pole = false;
  int m = 0;                         // lattice indices of the nearest point
  int k = 0;
  double distance = 0.0;             // distance to nearest zero or pole
  std::complex<double> lattice_point{0.0, 0.0};
};

// Classifies z against both lattices; flags are set when the distance to the
// corresponding lattice is below `radius` (<=0 means the default radius).
SingularityInfo classify_point(std::complex<double> z, const Periods& periods,
                               double radius = 0.0);

}  // namespace ruijlab

#endif
