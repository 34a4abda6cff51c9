#ifndef RUIJLAB_MODEL_HPP
#define RUIJLAB_MODEL_HPP

#include <complex>

#include "ruijlab/complex_tuple.hpp"
#include "ruijlab/double_sine.hpp"
#include "ruijlab/periods.hpp"
#include "ruijlab/quadrature.hpp"

namespace ruijlab {

// Coupling g and periods, with the dual data derived from them.
struct ModelParams {
  Periods periods;
  Complex g{0.5, 0.0};

  ModelParams() = default;
  ModelParams(Periods p, Complex coupling) : periods(p), g(coupling) {
    if (!(g.real() > 0.0) || !(g.real() < periods.sum().real()))
      throw ParameterError("coupling must satisfy 0 < Re g < Re(w1+w2)");
    if (!(nu_g() > 0.0)) throw ParameterError("Re(g / (w1 w2)) must be positive");
  }

  Complex g_star() const { return periods.sum() - g; }
  Complex g_hat() const { return g / periods.product(); }
  Complex g_hat_star() const { return g_star() / periods.product(); }
  double nu_g() const { return g_hat().real(); }
  double nu_g_star() const { return g_hat_star().real(); }
  Periods periods_hat() const {
    return Periods(1.0 / periods.omega2, 1.0 / periods.omega1);
  }
  // Bispectrally dual parameter set (spectral side).
  ModelParams dual() const { return ModelParams(periods_hat(), g_hat_star()); }
};

// Measure density mu(x) = S2(i x) / S2(i x + g); zero at x = 0, poles off the
// real axis only.
Complex mu(Complex x, const ModelParams& params, const QuadratureSpec& spec = {});

// Kernel factor K(x) = 1 / (S2(i x + g*/2) S2(-i x + g*/2)).
Complex kfun(Complex x, const ModelParams& params, const QuadratureSpec& spec = {});

// Dual-side mu / K (same formulas with the dual parameter set).
Complex mu_hat(Complex lam, const ModelParams& params, const QuadratureSpec& spec = {});
Complex k_hat(Complex lam, const ModelParams& params, const QuadratureSpec& spec = {});

// K(x_tuple, y_tuple) = prod_{i,j} K(x_i - y_j)
Complex kprod(const ComplexTuple& x, const ComplexTuple& y, const ModelParams& params,
              const QuadratureSpec& spec = {});
// mu(y_tuple) = prod_{i != j} mu(y_i - y_j)
Complex muprod(const ComplexTuple& y, const ModelParams& params,
               const QuadratureSpec& spec = {});
// mu'(x_tuple) = prod_{i < j} mu(x_i - x_j)
Complex muprime(const ComplexTuple& x, const ModelParams& params,
                const QuadratureSpec& spec = {});

// Normalization d_n = (1/n!) [sqrt(w1 w2) S2(g)]^{-n}.
Complex d_n(int n, const ModelParams& params, const QuadratureSpec& spec = {});

struct DecayRates {
  double nu_g;       // coordinate-side rate: |K| <~ C e^{-pi nu_g |x|}
  double nu_g_star;  // spectral-side rate
};
DecayRates decay_rates(const ModelParams& params);

// Empirical constant C with |K(x)| <= C e^{-pi nu_g |x|} and
// |mu(x)| <= C e^{+pi nu_g |x|} on a coarse real grid (1.2x observed max).
double calibrate_amplitude(const ModelParams& params, const QuadratureSpec& spec = {});

}  // namespace ruijlab

#endif
