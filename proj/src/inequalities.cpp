#include "ruijlab/inequalities.hpp"

#include <cmath>

namespace ruijlab {

namespace {

double norm1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

void validate_levels(const LevelTuples& y) {
  if (y.empty()) throw ParameterError("level tuples must be non-empty");
  for (std::size_t k = 0; k < y.size(); ++k)
    if (y[k].size() != k + 1)
      throw ParameterError("level tuple k must have exactly k components");
}

}  // namespace

double c_n(int n) {
  if (n < 1) throw ParameterError("c_n: n must be >= 1");
  double c = 0.0;
  for (int k = 2; k <= n; ++k) c = (k - 1) * (c + 1.0);
  return c;
}

double s_fn(const LevelTuples& y) {
  validate_levels(y);
  double s = 0.0;
  for (std::size_t lvl = 1; lvl < y.size(); ++lvl) {
    const auto& cur = y[lvl];
    const auto& prev = y[lvl - 1];
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = 0; j < cur.size(); ++j)
        if (i != j) s += std::abs(cur[i] - cur[j]);
    for (double ci : cur)
      for (double pj : prev) s -= std::abs(ci - pj);
  }
  return s;
}

double t_fn(const LevelTuples& y, const std::vector<double>& t) {
  validate_levels(y);
  const std::size_t n = y.size();
  if (t.size() != n) throw ParameterError("t_fn: t must have n components");
  double v = s_fn(y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) v += std::abs(t[i] - t[j]);
      v -= std::abs(t[i] - y[n - 1][j]);
    }
  return v;
}

bool check_triangle_refinement(double y1, double y2, double y, double eps) {
  if (eps < 0.0 || eps > 2.0) throw ParameterError("eps must lie in [0,2]");
  double lhs = std::abs(y1 - y2) - std::abs(y1 - y) - std::abs(y2 - y);
  double rhs = eps * (std::abs(y1) + std::abs(y2) - std::abs(y));
  return lhs <= rhs + 1e-12 * (1.0 + std::abs(rhs));
}

bool check_s_bound(const LevelTuples& y, double eps) {
  validate_levels(y);
  const int n = static_cast<int>(y.size());
  if (eps < 0.0 || eps > 2.0 * (n - 1))
    throw ParameterError("eps must lie in [0, 2(n-1)]");
  double rhs = (n - 1 + eps) * norm1(y[n - 1]);
  if (n >= 2) {
    double tail = 0.0;
    for (int k = 0; k < n - 1; ++k) tail += norm1(y[k]);
    rhs -= eps / c_n(n) * tail;
  }
  return s_fn(y) <= rhs + 1e-10 * (1.0 + std::abs(rhs));
}

bool check_t_bound(const LevelTuples& y, const std::vector<double>& t, double r) {
  validate_levels(y);
  if (r < 0.0 || r > 1.0) throw ParameterError("r must lie in [0,1]");
  const int n = static_cast<int>(y.size());
  if (t.size() != std::size_t(n)) throw ParameterError("t must have n components");
  double tail = 0.0;
  for (int k = 0; k < n; ++k) tail += norm1(y[k]);
  double drift = 0.0;
  for (int j = 0; j < n; ++j) drift += t[j] - y[n - 1][j];
  double rhs = (n + r) * norm1(t) - (1.0 - r) / (2.0 * n * c_n(n)) * tail -
               r * std::abs(drift);
  return t_fn(y, t) <= rhs + 1e-10 * (1.0 + std::abs(rhs));
}

double net_decay_rate(int n, int level, double delta_q, double delta_l, double eps,
                      const ModelParams& params, bool psi_only) {
  if (n < 1 || level < 1 || level > n)
    throw ParameterError("net_decay_rate: need 1 <= level <= n");
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0,1)");
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;
  const double e_const = 2.718281828459045;
  if (!psi_only && !(delta_q < 1.0 - eps))
    throw ParameterError("inadmissible: delta_Q must be < 1 - eps");
  if (n >= 2 && !(delta_l < eps / (fact * e_const)))
    throw ParameterError("inadmissible: delta_L must be < eps / ((n-1)! e)");
  (void)params;
  if (level == n) return psi_only ? (2.0 - delta_l - eps) : (1.0 - delta_q - eps);
  return eps / c_n(n) - delta_l;
}

std::uint64_t Rng::next_u64() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double a, double b) {
  double u = double(next_u64() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

}  // namespace ruijlab
