#ifndef RUIJLAB_WAVEFUNCTION_HPP
#define RUIJLAB_WAVEFUNCTION_HPP

#include <map>
#include <memory>
#include <mutex>

#include "ruijlab/complex_tuple.hpp"
#include "ruijlab/kernel_table.hpp"
#include "ruijlab/model.hpp"
#include "ruijlab/operators.hpp"
#include "ruijlab/quadrature.hpp"

namespace ruijlab {

// Cache of a translation-covariant pair function F with
// F(u1 + a, u2 + a) = e^{2 pi i c a} F(u1, u2), so F is determined by the
// diagonal slice d -> F(d/2, -d/2), which is interpolated panel-wise per
// imaginary offset of d.  `strip_height` bounds |Im d| for analyticity.
class PairFunctionCache {
 public:
  PairFunctionCache(std::function<Complex(Complex)> diagonal, Complex c,
                    double strip_height);

  Complex operator()(Complex u1, Complex u2) const;

 private:
  std::function<Complex(Complex)> diag_;
  Complex c_;
  double strip_;
  mutable std::map<double, std::shared_ptr<ChebLineCache>> lines_;  // key: Im d
  mutable std::mutex mutex_;
};

// Admissible width for pairwise spectral imaginary parts at budget split eps:
// theta(eps) = nu_g * eps / (4 (n-1)! e).
double theta(double eps, int n, const ModelParams& params);

struct WaveSpec {
  ModelParams params;
  ComplexTuple lambda;  // spectral tuple, |Im(l_j - l_k)| < theta(eps, n)
  ComplexTuple x;       // coordinates, |Im x_j| < Re(g*) / 2
  QuadratureSpec spec;
  double eps = 0.5;     // decay-budget split used for strips and truncation

  int n() const { return static_cast<int>(lambda.size()); }
  void validate() const;
};

// n-particle wave function via the raising-operator recursion
// psi_n = Lambda_n(l_n) psi_{n-1}, psi_1 = e^{2 pi i l_1 x_1}.  n <= 3.
Estimate psi(const WaveSpec& w);

// Spectral-side recursion (dual parameters, x and lambda exchanged).
Estimate psi_dual(const WaveSpec& w);

// Mixed representation e^{2 pi i l_n x_n} Q_{n-1}(l_n) Q'_{n-1}(x_n) psi_{n-1}
// (Q' the spectral-side operator); requires real positive periods.
Estimate psi_mixed(const WaveSpec& w);

}  // namespace ruijlab

#endif
