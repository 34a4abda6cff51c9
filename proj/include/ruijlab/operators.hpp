#ifndef RUIJLAB_OPERATORS_HPP
#define RUIJLAB_OPERATORS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ruijlab/complex_tuple.hpp"
#include "ruijlab/kernel_table.hpp"
#include "ruijlab/model.hpp"
#include "ruijlab/quadrature.hpp"

namespace ruijlab {

enum class OperatorKind { baxter_q, raising, baxter_q_dual, raising_dual };

// Integral operator Q_n(lambda) / Lambda_n(lambda) or their spectral-side
// counterparts (which act on functions of the spectral tuple).
struct OperatorHandle {
  OperatorKind kind = OperatorKind::baxter_q;
  int n = 1;                 // size of the output tuple
  Complex spectral{0.0, 0.0};  // lambda for Q/Lambda, coordinate x for duals
  ModelParams params;
  QuadratureSpec spec;

  OperatorHandle(OperatorKind k, int n_, Complex s, ModelParams p, QuadratureSpec q = {})
      : kind(k), n(n_), spectral(s), params(std::move(p)), spec(q) {
    if (n < 1) throw ParameterError("operator order must be >= 1");
  }

  bool dual() const {
    return kind == OperatorKind::baxter_q_dual || kind == OperatorKind::raising_dual;
  }
  // parameters the kernel functions of this operator are built from
  ModelParams acting_params() const { return dual() ? params.dual() : params; }
  int input_arity() const {
    return (kind == OperatorKind::baxter_q || kind == OperatorKind::baxter_q_dual)
               ? n
               : n - 1;
  }
};

// Function of a real m-tuple together with honest decay/oscillation metadata
// used to choose truncation radii and panel sizes.
struct FunctionOnTuples {
  std::function<Complex(const ComplexTuple&)> evaluator;
  int arity = 1;
  double decay_rate_hint = 0.0;              // own exponential decay, if any
  std::vector<double> osc_freqs_hint;        // cycle frequencies (|Re lambda_j|)
  std::optional<Complex> dominant_spectral;  // spectral parameter with largest |Im|
  double err_hint = 0.0;                     // evaluation error of the function itself
};

// Kernel values (without the d_n normalization constant).
Complex q_kernel(const ComplexTuple& x, const ComplexTuple& y, Complex lambda,
                 const ModelParams& params, const QuadratureSpec& spec = {});
Complex lambda_kernel(const ComplexTuple& x, const ComplexTuple& y, Complex lambda,
                      const ModelParams& params, const QuadratureSpec& spec = {});

// (op f)(x), including the d_m normalization.
Estimate apply(const OperatorHandle& op, const FunctionOnTuples& f,
               const ComplexTuple& x);

// (M_r f)(x) with M_r the difference operator with -i w1 shifts.
Complex macdonald_apply(int r, const std::function<Complex(const ComplexTuple&)>& f,
                        const ComplexTuple& x, const ModelParams& params);

// e_r(z_1, ..., z_n)
Complex elementary_symmetric(int r, const ComplexTuple& z);

// LHS - RHS of the trigonometric kernel identity; y.size() == x.size() gives
// the full identity, y.size() == x.size() - 1 the degenerate one.
Complex kernel_identity_residual(const ComplexTuple& x, const ComplexTuple& y,
                                 Complex alpha, int r);

// Kernel of Q_n(lambda) Q_n(rho) at (x, z): d_n^2 Int Q(x,y;lambda) Q(y,z;rho) dy.
Estimate composed_qq_kernel(const ComplexTuple& x, const ComplexTuple& z, Complex lambda,
                            Complex rho, const ModelParams& params,
                            const QuadratureSpec& spec = {});

}  // namespace ruijlab

#endif
