#include "ruijlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

namespace ruijlab {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  std::complex<double> kronrod{0.0, 0.0};
  double err = 0.0;
};

PanelResult gk15(const LineIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::complex<double> resg = 0.0, resk = 0.0;
  for (int i = 0; i < 8; ++i) {
    std::complex<double> fsum = f(c + h * kXgk[i]);
    if (kXgk[i] != 0.0) fsum += f(c - h * kXgk[i]);
    resk += kWgk[i] * fsum;
    if (i % 2 == 1) resg += kWg[i / 2] * fsum;  // odd indices are Gauss nodes
  }
  resk *= h;
  resg *= h;
  PanelResult r;
  r.kronrod = resk;
  r.err = std::abs(resk - resg);
  if (!std::isfinite(resk.real()) || !std::isfinite(resk.imag()))
    throw NonFiniteError("non-finite integrand value encountered");
  return r;
}

struct Segment {
  double a, b;
  std::complex<double> val;
  double err;
  long order;  // creation order, used as deterministic tie break
};

struct SegCmp {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.order > y.order;
  }
};

}  // namespace

double DecayProfile::truncation_radius(const QuadratureSpec& spec) const {
  if (!(rate > 0.0)) throw DomainError("decay rate must be positive for line truncation");
  double c = std::max(amplitude, 1.0);
  double tol = std::max(spec.abs_tol * 0.1, 1e-300);
  double r = std::log(c / tol) / (rate * (1.0 - spec.truncation_safety));
  return std::max(r, 1.0);
}

Estimate integrate_finite(const LineIntegrand& f, double a, double b,
                          const QuadratureSpec& spec, double max_panel_width) {
  spec.validate();
  if (!(b > a)) return {0.0, 0.0};

  long n0 = 8;
  if (max_panel_width > 0.0)
    n0 = std::max<long>(1, std::lround(std::ceil((b - a) / max_panel_width)));
  n0 = std::min<long>(n0, 100000);

  std::priority_queue<Segment, std::vector<Segment>, SegCmp> heap;
  long order = 0;
  std::complex<double> total = 0.0;
  double errsum = 0.0;
  for (long i = 0; i < n0; ++i) {
    double sa = a + (b - a) * double(i) / double(n0);
    double sb = a + (b - a) * double(i + 1) / double(n0);
    PanelResult p = gk15(f, sa, sb);
    heap.push({sa, sb, p.kronrod, p.err, order++});
    total += p.kronrod;
    errsum += p.err;
  }

  int splits = 0;
  auto tol = [&]() { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (errsum > tol() && splits < spec.max_subdivisions) {
    Segment s = heap.top();
    heap.pop();
    total -= s.val;
    errsum -= s.err;
    double m = 0.5 * (s.a + s.b);
    PanelResult l = gk15(f, s.a, m);
    PanelResult r = gk15(f, m, s.b);
    heap.push({s.a, m, l.kronrod, l.err, order++});
    heap.push({m, s.b, r.kronrod, r.err, order++});
    total += l.kronrod + r.kronrod;
    errsum += l.err + r.err;
    ++splits;
  }
  if (errsum > tol())
    throw ToleranceError("adaptive quadrature: subdivision budget exhausted");

  // deterministic left-to-right re-summation
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  std::complex<double> sum = 0.0;
  for (const auto& s : segs) sum += s.val;
  return {sum, errsum};
}

namespace {

double initial_panel_width(const DecayProfile& profile, const QuadratureSpec& spec) {
  double w = 1.0;
  for (double fq : profile.osc_freqs)
    if (fq > 0.0) w = std::min(w, spec.osc_panel_factor / fq);
  return w;
}

}  // namespace

Estimate integrate_line(const LineIntegrand& f, const DecayProfile& profile,
                        const QuadratureSpec& spec) {
  double r = profile.truncation_radius(spec);
  double w = initial_panel_width(profile, spec);
  Estimate e = integrate_finite(f, profile.center - r, profile.center + r, spec, w);
  double trunc = 2.0 * std::max(profile.amplitude, 1e-300) *
                 std::exp(-profile.rate * r) / profile.rate;
  e.err_est += trunc;
  return e;
}

namespace {

Estimate multi_nested(const MultiIntegrand& f, const std::vector<DecayProfile>& profiles,
                      const QuadratureSpec& spec) {
  const std::size_t d = profiles.size();
  std::vector<double> point(d);
  std::vector<double> inner_err(d, 0.0);

  std::vector<QuadratureSpec> level_spec(d, spec);
  for (std::size_t j = 1; j < d; ++j) {
    level_spec[j].abs_tol = spec.abs_tol * std::pow(0.1, double(j));
    level_spec[j].rel_tol = std::max(spec.rel_tol * 0.1, 1e-12);
  }

  std::function<Estimate(std::size_t)> rec = [&](std::size_t j) -> Estimate {
    LineIntegrand g = [&, j](double t) -> std::complex<double> {
      point[j] = t;
      if (j + 1 == d) return f(point);
      Estimate inner = rec(j + 1);
      inner_err[j + 1] = std::max(inner_err[j + 1], inner.err_est);
      return inner.value;
    };
    return integrate_line(g, profiles[j], level_spec[j]);
  };

  Estimate top = rec(0);
  // Inner-level error estimates propagate through the outer integrals against
  // a decaying kernel; 5^j is a conservative stand-in for that mass factor.
  for (std::size_t j = 1; j < d; ++j)
    top.err_est += inner_err[j] * std::pow(5.0, double(j));
  return top;
}

uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double halton(uint64_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * double(index % base);
    index /= base;
  }
  return r;
}

Estimate multi_qmc(const MultiIntegrand& f, const std::vector<DecayProfile>& profiles,
                   const QuadratureSpec& spec) {
  const std::size_t d = profiles.size();
  static const unsigned bases[6] = {2, 3, 5, 7, 11, 13};
  if (d > 6) throw StrategyError("QMC integration supports at most 6 dimensions");

  std::vector<double> radius(d), mass(d);
  for (std::size_t j = 0; j < d; ++j) {
    radius[j] = profiles[j].truncation_radius(spec);
    mass[j] = 1.0 - std::exp(-profiles[j].rate * radius[j]);
  }

  // one Cranley-Patterson rotation, fixed seed for reproducibility
  uint64_t seed = 0x243F6A8885A308D3ULL;
  std::vector<double> shift(d);
  for (std::size_t j = 0; j < d; ++j)
    shift[j] = double(splitmix64(seed) >> 11) * 0x1.0p-53;

  const long n = spec.qmc_samples;
  std::vector<double> y(d);
  std::complex<double> sum = 0.0, sum_half = 0.0;
  for (long i = 0; i < n; ++i) {
    double weight = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      double u = halton(uint64_t(i) + 1, bases[j]) + shift[j];
      u -= std::floor(u);
      // inverse CDF of the truncated Laplace density ~ exp(-rate |y|)
      double s = 2.0 * u - 1.0;
      double mag = -std::log1p(-std::abs(s) * mass[j]) / profiles[j].rate;
      y[j] = profiles[j].center + (s < 0.0 ? -mag : mag);
      double density = profiles[j].rate *
                       std::exp(-profiles[j].rate * mag) / (2.0 * mass[j]);
      weight /= density;
    }
    std::complex<double> v = f(y) * weight;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonFiniteError("non-finite QMC integrand value");
    sum += v;
    if (i < n / 2) sum_half += v;
  }
  Estimate e;
  e.value = sum / double(n);
  std::complex<double> half = sum_half / double(n / 2);
  e.err_est = std::max(std::abs(e.value - half), 1e-2 * std::abs(e.value));
  return e;
}

Estimate multi_tensor_fixed(const MultiIntegrand& f,
                            const std::vector<DecayProfile>& profiles,
                            const QuadratureSpec& spec) {
  const std::size_t d = profiles.size();
  struct Dim {
    std::vector<double> x, wk, wg;
  };
  std::vector<Dim> dims(d);
  double total_pts = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    double r = profiles[j].truncation_radius(spec);
    double w = initial_panel_width(profiles[j], spec);
    long np = std::max<long>(8, std::lround(std::ceil(2.0 * r / w)));
    np = std::min<long>(np, 4000);
    double a = profiles[j].center - r;
    double pw = 2.0 * r / double(np);
    for (long p = 0; p < np; ++p) {
      double c = a + (double(p) + 0.5) * pw;
      double h = 0.5 * pw;
      for (int i = 0; i < 8; ++i) {
        double gw = (i % 2 == 1) ? kWg[i / 2] : (i == 7 ? kWg[3] : 0.0);
        dims[j].x.push_back(c + h * kXgk[i]);
        dims[j].wk.push_back(h * kWgk[i]);
        dims[j].wg.push_back(h * gw);
        if (kXgk[i] != 0.0) {
          dims[j].x.push_back(c - h * kXgk[i]);
          dims[j].wk.push_back(h * kWgk[i]);
          dims[j].wg.push_back(h * gw);
        }
      }
    }
    total_pts *= double(dims[j].x.size());
  }
  if (total_pts > 4e7) throw StrategyError("tensor_fixed grid too large");

  std::vector<std::size_t> idx(d, 0);
  std::vector<double> y(d);
  std::complex<double> vk = 0.0, vg = 0.0;
  bool done = false;
  while (!done) {
    double wk = 1.0, wg = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      y[j] = dims[j].x[idx[j]];
      wk *= dims[j].wk[idx[j]];
      wg *= dims[j].wg[idx[j]];
    }
    std::complex<double> v = f(y);
    vk += wk * v;
    vg += wg * v;
    std::size_t j = 0;
    while (j < d && ++idx[j] == dims[j].x.size()) {
      idx[j] = 0;
      ++j;
    }
    done = (j == d);
  }
  return {vk, std::abs(vk - vg)};
}

}  // namespace

Estimate integrate_multi(const MultiIntegrand& f,
                         const std::vector<DecayProfile>& profiles,
                         const QuadratureSpec& spec) {
  spec.validate();
  const std::size_t d = profiles.size();
  if (d == 0) {
    std::vector<double> none;
    return {f(none), 0.0};
  }
  switch (spec.multi_dim_strategy) {
    case MultiDimStrategy::nested_adaptive:
      if (d > 3)
        throw StrategyError("nested adaptive integration limited to 3 dimensions");
      return multi_nested(f, profiles, spec);
    case MultiDimStrategy::quasi_monte_carlo:
      return multi_qmc(f, profiles, spec);
    case MultiDimStrategy::tensor_fixed:
      return multi_tensor_fixed(f, profiles, spec);
  }
  throw StrategyError("unknown integration strategy");
}

}  // namespace ruijlab
