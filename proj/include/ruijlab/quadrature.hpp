#ifndef RUIJLAB_QUADRATURE_HPP
#define RUIJLAB_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "ruijlab/errors.hpp"

namespace ruijlab {

// Value plus an a-posteriori absolute error estimate.
struct Estimate {
  std::complex<double> value{0.0, 0.0};
  double err_est = 0.0;
};

enum class MultiDimStrategy { nested_adaptive, quasi_monte_carlo, tensor_fixed };

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-10;
  int max_subdivisions = 20000;     // global panel-split budget per call
  double truncation_safety = 0.2;   // fraction added to the truncation radius
  double osc_panel_factor = 0.25;   // initial panel width = factor / frequency
  MultiDimStrategy multi_dim_strategy = MultiDimStrategy::nested_adaptive;
  int qmc_samples = 1 << 16;
  double singularity_radius = 0.0;  // 0 = derive from the period scale

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw ParameterError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw ParameterError("max_subdivisions must be >= 1");
    if (!(truncation_safety >= 0.0 && truncation_safety < 1.0))
      throw ParameterError("truncation_safety must lie in [0,1)");
    if (!(osc_panel_factor > 0.0)) throw ParameterError("osc_panel_factor must be positive");
    if (qmc_samples < 16) throw ParameterError("qmc_samples too small");
  }
};

// Describes |f(y)| <~ amplitude * exp(-rate * |y - center|) with oscillation
// frequencies given in cycles per unit length (|Re lambda| for e^{2 pi i l y}).
struct DecayProfile {
  double rate = 1.0;
  std::vector<double> osc_freqs;
  double center = 0.0;
  double amplitude = 1.0;

  double truncation_radius(const QuadratureSpec& spec) const;
};

using LineIntegrand = std::function<std::complex<double>(double)>;
using MultiIntegrand = std::function<std::complex<double>(std::span<const double>)>;

// Adaptive Gauss-Kronrod integral over a finite interval.
Estimate integrate_finite(const LineIntegrand& f, double a, double b,
                          const QuadratureSpec& spec, double max_panel_width = 0.0);

// Integral over the whole real line, truncated according to `profile`.
Estimate integrate_line(const LineIntegrand& f, const DecayProfile& profile,
                        const QuadratureSpec& spec);

// Integral over R^d, d = profiles.size() (d <= 3 nested adaptive, d <= 6 QMC).
Estimate integrate_multi(const MultiIntegrand& f,
                         const std::vector<DecayProfile>& profiles,
                         const QuadratureSpec& spec);

}  // namespace ruijlab

#endif
