#ifndef RUIJLAB_KERNEL_TABLE_HPP
#define RUIJLAB_KERNEL_TABLE_HPP

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "ruijlab/model.hpp"

namespace ruijlab {

// Panel-wise Chebyshev interpolant of an analytic function on the real line.
// Panels are built lazily; values are independent of build order.
class ChebLineCache {
 public:
  ChebLineCache() = default;
  ChebLineCache(std::function<Complex(double)> f, double panel_width, int degree = 32);

  Complex operator()(double t) const;

 private:
  const std::vector<Complex>& panel(long p) const;

  std::function<Complex(double)> f_;
  double width_ = 1.0;
  int degree_ = 32;
  std::vector<double> nodes_;    // Chebyshev points of the second kind on [0,1]
  std::vector<double> bary_;     // barycentric weights
  mutable std::unordered_map<long, std::vector<Complex>> panels_;
  // held by pointer so the cache stays movable
  mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

// Fast evaluation of K and mu along horizontal lines in the complex plane.
// K and mu are analytic in a strip around the real axis, so panel-wise
// Chebyshev interpolation converges geometrically.
class KernelTable {
 public:
  explicit KernelTable(ModelParams params, QuadratureSpec build_spec = tight_spec());

  Complex k(double t) const { return k_line_(t); }
  Complex mu(double t) const { return mu_line_(t); }
  // K(c - t) for a fixed complex offset c (new offsets get their own cache).
  Complex k_off(Complex c, double t) const;

  const ModelParams& params() const { return params_; }

  static QuadratureSpec tight_spec() {
    QuadratureSpec s;
    s.abs_tol = 1e-12;
    s.rel_tol = 1e-11;
    return s;
  }

 private:
  ModelParams params_;
  QuadratureSpec spec_;
  double width_;
  ChebLineCache k_line_;
  ChebLineCache mu_line_;
  mutable std::map<std::pair<double, double>, std::shared_ptr<ChebLineCache>> offsets_;
  mutable std::mutex mutex_;
};

// Process-wide memo of kernel tables keyed by model parameters.
std::shared_ptr<const KernelTable> shared_kernel_table(const ModelParams& params);

// Memoized calibrate_amplitude (the decay-bound constant C for K and mu).
double calibrate_shared_amplitude(const ModelParams& params);

}  // namespace ruijlab

#endif
