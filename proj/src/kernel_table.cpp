#include "ruijlab/kernel_table.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ruijlab {

ChebLineCache::ChebLineCache(std::function<Complex(double)> f, double panel_width,
                             int degree)
    : f_(std::move(f)), width_(panel_width), degree_(degree) {
  nodes_.resize(degree_ + 1);
  bary_.resize(degree_ + 1);
  for (int j = 0; j <= degree_; ++j) {
    nodes_[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / degree_));
    bary_[j] = (j % 2 == 0 ? 1.0 : -1.0);
  }
  bary_.front() *= 0.5;
  bary_.back() *= 0.5;
}

const std::vector<Complex>& ChebLineCache::panel(long p) const {
  std::lock_guard<std::mutex> lock(*mutex_);
  auto it = panels_.find(p);
  if (it != panels_.end()) return it->second;
  std::vector<Complex> vals(degree_ + 1);
  double a = double(p) * width_;
  for (int j = 0; j <= degree_; ++j) vals[j] = f_(a + width_ * nodes_[j]);
  return panels_.emplace(p, std::move(vals)).first->second;
}

Complex ChebLineCache::operator()(double t) const {
  long p = static_cast<long>(std::floor(t / width_));
  double u = t / width_ - double(p);
  const std::vector<Complex>& vals = panel(p);
  // barycentric interpolation at Chebyshev points of the second kind
  Complex num = 0.0;
  double den = 0.0;
  for (int j = 0; j <= degree_; ++j) {
    double diff = u - nodes_[j];
    if (std::abs(diff) < 1e-14) return vals[j];
    double w = bary_[j] / diff;
    num += w * vals[j];
    den += w;
  }
  return num / den;
}

namespace {

double kernel_panel_width(const ModelParams& params) {
  // Keep each panel well inside the analyticity strip of K and mu, whose
  // nearest singularities sit at distance ~min(Re g, Re g*/2, Re w_i).
  // Degree-32 panels keep interpolation error below ~1e-15 even when the
  // panel width equals the distance to the nearest singularity.
  double s = std::min({1.0, params.periods.omega1.real(), params.periods.omega2.real(),
                       params.g.real(), 0.5 * params.g_star().real()});
  return 0.8 * s;
}

}  // namespace

KernelTable::KernelTable(ModelParams params, QuadratureSpec build_spec)
    : params_(params), spec_(build_spec), width_(kernel_panel_width(params)) {
  ModelParams p = params_;
  QuadratureSpec s = spec_;
  k_line_ = ChebLineCache([p, s](double t) { return ruijlab::kfun(Complex(t, 0.0), p, s); },
                          width_);
  mu_line_ = ChebLineCache([p, s](double t) { return ruijlab::mu(Complex(t, 0.0), p, s); },
                           width_);
}

Complex KernelTable::k_off(Complex c, double t) const {
  if (c.imag() == 0.0) return k_line_(c.real() - t);
  std::shared_ptr<ChebLineCache> cache;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(c.real(), c.imag());
    auto it = offsets_.find(key);
    if (it == offsets_.end()) {
      ModelParams p = params_;
      QuadratureSpec s = spec_;
      it = offsets_
               .emplace(key, std::make_shared<ChebLineCache>(
                                 [p, s, c](double u) { return kfun(c - u, p, s); },
                                 width_))
               .first;
    }
    cache = it->second;
  }
  return (*cache)(t);
}

std::shared_ptr<const KernelTable> shared_kernel_table(const ModelParams& params) {
  static std::mutex registry_mutex;
  static std::map<std::array<double, 6>, std::shared_ptr<const KernelTable>> registry;
  std::array<double, 6> key = {params.periods.omega1.real(), params.periods.omega1.imag(),
                               params.periods.omega2.real(), params.periods.omega2.imag(),
                               params.g.real(),              params.g.imag()};
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto table = std::make_shared<const KernelTable>(params);
  registry.emplace(key, table);
  return table;
}

double calibrate_shared_amplitude(const ModelParams& params) {
  static std::mutex m;
  static std::map<std::array<double, 6>, double> memo;
  std::array<double, 6> key = {params.periods.omega1.real(), params.periods.omega1.imag(),
                               params.periods.omega2.real(), params.periods.omega2.imag(),
                               params.g.real(),              params.g.imag()};
  std::lock_guard<std::mutex> lock(m);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  double c = calibrate_amplitude(params);
  memo.emplace(key, c);
  return c;
}

}  // namespace ruijlab
