#ifndef RUIJLAB_INEQUALITIES_HPP
#define RUIJLAB_INEQUALITIES_HPP

#include <cstdint>
#include <vector>

#include "ruijlab/errors.hpp"
#include "ruijlab/model.hpp"

namespace ruijlab {

// Triangular array of real level tuples y_1, ..., y_n with dim(y_k) = k.
using LevelTuples = std::vector<std::vector<double>>;

// c_1 = 0, c_n = (n-1)(c_{n-1} + 1); satisfies (n-1)! <= c_n < (n-1)! e, n >= 2.
double c_n(int n);

// S_1 = 0; S_n = sum_{i != j} |y_i^n - y_j^n| - sum_{i,j} |y_i^n - y_j^{n-1}| + S_{n-1}.
double s_fn(const LevelTuples& y);

// T_n = sum_{i != j} |t_i - t_j| - sum_{i,j} |t_i - y_j^n| + S_n.
double t_fn(const LevelTuples& y, const std::vector<double>& t);

// |y1 - y2| - |y1 - y| - |y2 - y| <= eps (|y1| + |y2| - |y|), eps in [0,2].
bool check_triangle_refinement(double y1, double y2, double y, double eps);

// S_n <= (n - 1 + eps) ||y_n|| - (eps / c_n) sum_{k<n} ||y_k||, eps in [0, 2(n-1)].
bool check_s_bound(const LevelTuples& y, double eps);

// T_n <= (n + r) ||t|| - (1-r)/(2 n c_n) sum_k ||y_k|| - r |sum_j (t_j - y_j^n)|,
// r in [0, 1].
bool check_t_bound(const LevelTuples& y, const std::vector<double>& t, double r);

// Per-level exponential decay coefficient (units of pi * nu_g * ||y_level||)
// of the truncation bounds used by the operator / wave-function integrals:
// outermost level gives -(1 - delta_Q - eps) when a Q operator is applied
// (or -(2 - delta_L - eps) for the bare wave-function integral when
// psi_only), inner levels give -(eps / c_n - delta_L).  Throws ParameterError
// if the admissibility conditions delta_Q < 1 - eps or
// delta_L < eps / ((n-1)! e) fail.
double net_decay_rate(int n, int level, double delta_q, double delta_l, double eps,
                      const ModelParams& params, bool psi_only = false);

// Small deterministic RNG used by the fuzz checks and the verify suites
// (bit-identical across platforms, unlike std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}
  std::uint64_t next_u64();
  double uniform(double a, double b);

 private:
  std::uint64_t state_;
};

}  // namespace ruijlab

#endif
