#ifndef RUIJLAB_VERIFY_HPP
#define RUIJLAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ruijlab/model.hpp"
#include "ruijlab/quadrature.hpp"

namespace ruijlab {

// Outcome of one identity check at one sample point.
struct CheckReport {
  std::string relation_id;
  ModelParams params;
  int n = 1;                     // tuple size of the checked relation
  std::vector<Complex> sample;   // flattened input point (coordinates, spectral)
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;        // 3x quadrature budget, floored per relation
  double err_budget = 0.0;       // sum of quadrature err_est on both sides
  bool passed = false;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
};

// Individual suites.  Failures are recorded in the reports, never thrown;
// each suite draws its samples from its own generator seeded by `seed`.
std::vector<CheckReport> check_s2_suite(const ModelParams& params,
                                        const QuadratureSpec& spec,
                                        std::uint64_t seed, int samples = 5);
std::vector<CheckReport> check_fourier_k(const ModelParams& params,
                                         const std::vector<Complex>& lambda_grid,
                                         const QuadratureSpec& spec,
                                         std::uint64_t seed);
std::vector<CheckReport> check_qq_commutativity(int n, const ModelParams& params,
                                                int samples, const QuadratureSpec& spec,
                                                std::uint64_t seed);
std::vector<CheckReport> check_ql_exchange(const ModelParams& params, int samples,
                                           const QuadratureSpec& spec,
                                           std::uint64_t seed);
std::vector<CheckReport> check_q_eigen(int n, const ModelParams& params, int samples,
                                       const QuadratureSpec& spec, std::uint64_t seed);
std::vector<CheckReport> check_dual_q_eigen(int n, const ModelParams& params,
                                            int samples, const QuadratureSpec& spec,
                                            std::uint64_t seed);
std::vector<CheckReport> check_duality(int n, const ModelParams& params, int samples,
                                       const QuadratureSpec& spec, std::uint64_t seed);
std::vector<CheckReport> check_macdonald(int n, int r, const ModelParams& params,
                                         int samples, const QuadratureSpec& spec,
                                         std::uint64_t seed);
std::vector<CheckReport> check_lambda_symmetry(int n, const ModelParams& params,
                                               int samples, const QuadratureSpec& spec,
                                               std::uint64_t seed);

struct VerifyConfig {
  std::uint64_t seed = 1;
  std::vector<std::string> check_filter;  // empty = run everything
  QuadratureSpec spec;
  int max_threads = 0;  // 0 = RUIJ_LAB_THREADS env var, else hardware
};

struct VerifyRun {
  std::vector<CheckReport> reports;
  int total = 0;
  int failed = 0;
  double max_rel_err = 0.0;
  bool passed() const { return failed == 0; }
};

// Runs every suite whose relation id starts with one of the filter entries
// over the default parameter grid.  Deterministic for a fixed seed: the job
// list and every sample draw depend only on the configuration.
VerifyRun run_all(const VerifyConfig& config);

// Stable hex hash of the six real parameter components (for report grouping).
std::string params_hash(const ModelParams& params);

}  // namespace ruijlab

#endif
