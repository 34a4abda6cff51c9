#ifndef RUIJLAB_DOUBLE_SINE_HPP
#define RUIJLAB_DOUBLE_SINE_HPP

#include <complex>

#include "ruijlab/periods.hpp"
#include "ruijlab/quadrature.hpp"

namespace ruijlab {

enum class LadderDirection { omega1, omega2 };

// log S2(z | omega) via the contour-integral representation, valid only on
// the central strip margin < Re z < Re(w1+w2) - margin.
std::complex<double> log_s2_strip(std::complex<double> z, const Periods& periods,
                                  const QuadratureSpec& spec = {});

// log S2(z | omega) for arbitrary z away from the zero/pole lattices, reached
// from the central strip by the shift relations (log accumulated factor by
// factor, never as a principal log of the full product).
std::complex<double> log_s2(std::complex<double> z, const Periods& periods,
                            const QuadratureSpec& spec = {},
                            LadderDirection dir = LadderDirection::omega1);

// S2(z | omega); returns exactly 0 on (within singularity radius of) the zero
// lattice and throws NearPoleError near the pole lattice.
std::complex<double> s2(std::complex<double> z, const Periods& periods,
                        const QuadratureSpec& spec = {},
                        LadderDirection dir = LadderDirection::omega1);

// Hyperbolic gamma normalization: G(z) = S2(i z + (w1+w2)/2).
std::complex<double> hyperbolic_gamma(std::complex<double> z, const Periods& periods,
                                      const QuadratureSpec& spec = {});

// Stable log(2 sin(pi u)) for large |Im u| (principal value per factor).
std::complex<double> log_two_sin_pi(std::complex<double> u);

}  // namespace ruijlab

#endif
