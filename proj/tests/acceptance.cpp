// Acceptance harness: twelve pinned criteria, one PASS/FAIL line each.
// Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <string>
#include <vector>

#include "ruijlab/inequalities.hpp"
#include "ruijlab/model.hpp"
#include "ruijlab/operators.hpp"
#include "ruijlab/report_io.hpp"
#include "ruijlab/verify.hpp"

using namespace ruijlab;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

int g_failures = 0;
int g_index = 0;

void report_line(bool pass, const std::string& name, const std::string& detail,
                 double seconds, double budget_s) {
  ++g_index;
  if (!pass) ++g_failures;
  std::printf("[%2d] %s  %-34s %s, %.1fs (budget %.0fs)\n", g_index,
              pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(), seconds, budget_s);
  std::fflush(stdout);
}

double max_rel(const std::vector<CheckReport>& reports, const std::string& id_prefix = "") {
  double m = 0.0;
  for (const auto& r : reports)
    if (id_prefix.empty() || r.relation_id.rfind(id_prefix, 0) == 0)
      m = std::max(m, r.rel_err);
  return m;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return !reports.empty();
}

// Runs the given report producers concurrently and concatenates the results.
std::vector<CheckReport> gather(
    std::vector<std::function<std::vector<CheckReport>()>> tasks) {
  std::vector<std::future<std::vector<CheckReport>>> futs;
  for (auto& t : tasks) futs.push_back(std::async(std::launch::async, std::move(t)));
  std::vector<CheckReport> out;
  for (auto& f : futs) {
    auto part = f.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

QuadratureSpec tight_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-12;
  s.rel_tol = 1e-11;
  return s;
}
QuadratureSpec mid_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-9;
  return s;
}
QuadratureSpec loose_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-7;
  s.rel_tol = 1e-6;
  return s;
}

const ModelParams kReal(Periods(1.0, std::sqrt(2.0)), 0.6);

char buf[256];

void criterion_double_sine() {
  auto t0 = Clock::now();
  ModelParams pc(Periods(Complex(1.0, 0.2), Complex(1.3, -0.1)), 0.6);
  auto parts = gather({
      [] { return check_s2_suite(kReal, tight_spec(), 101, 100); },
      [pc] { return check_s2_suite(pc, tight_spec(), 102, 100); },
  });
  std::vector<CheckReport> real_r, cplx_r;
  for (auto& r : parts)
    (params_hash(r.params) == params_hash(kReal) ? real_r : cplx_r).push_back(r);
  double mr = max_rel(real_r), mc = max_rel(cplx_r);
  double mv = std::max(max_rel(real_r, "s2_special_value"),
                       max_rel(cplx_r, "s2_special_value"));
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(parts) && mr <= 1e-10 && mc <= 1e-8 && mv <= 1e-10 &&
              secs < 10.0;
  std::snprintf(buf, sizeof(buf), "rel(real)=%.1e rel(cplx)=%.1e value=%.1e", mr, mc, mv);
  report_line(pass, "double-sine identities", buf, secs, 10.0);
}

void criterion_fourier() {
  auto t0 = Clock::now();
  auto grid_for = [](const ModelParams& p) {
    std::vector<Complex> grid;
    double half = 0.5 * p.nu_g();
    for (int j = 0; j < 20; ++j) {
      double re = -0.75 + 1.5 * j / 19.0;
      double im = 0.4 * half * double((j % 5) - 2) / 2.0;
      grid.emplace_back(re, im);
    }
    return grid;
  };
  ModelParams p6(Periods(1.0, std::sqrt(2.0)), 0.6);
  ModelParams p8(Periods(1.0, std::sqrt(2.0)), 0.8);
  auto reports = gather({
      [=] { return check_fourier_k(p6, grid_for(p6), mid_spec(), 201); },
      [=] { return check_fourier_k(p8, grid_for(p8), mid_spec(), 202); },
  });
  double m = max_rel(reports);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(reports) && reports.size() == 40 && m <= 1e-6 && secs < 30.0;
  std::snprintf(buf, sizeof(buf), "rel=%.1e over %zu points", m, reports.size());
  report_line(pass, "kernel Fourier transform", buf, secs, 30.0);
}

void criterion_qq() {
  auto t0 = Clock::now();
  auto n1 = std::async(std::launch::async,
                       [] { return check_qq_commutativity(1, kReal, 20, mid_spec(), 301); });
  auto n2 = check_qq_commutativity(2, kReal, 5, loose_spec(), 302);
  auto r1 = n1.get();
  double m1 = max_rel(r1), m2 = max_rel(n2);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(r1) && all_passed(n2) && m1 <= 1e-6 && m2 <= 1e-4 &&
              secs < 300.0;
  std::snprintf(buf, sizeof(buf), "rel(n=1)=%.1e rel(n=2)=%.1e", m1, m2);
  report_line(pass, "transfer-kernel symmetry", buf, secs, 300.0);
}

void criterion_ql() {
  auto t0 = Clock::now();
  auto reports = check_ql_exchange(kReal, 5, loose_spec(), 401);
  double m = max_rel(reports);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(reports) && m <= 1e-5 && secs < 300.0;
  std::snprintf(buf, sizeof(buf), "rel=%.1e", m);
  report_line(pass, "transfer/raising exchange", buf, secs, 300.0);
}

void criterion_q_eigen() {
  auto t0 = Clock::now();
  auto n1 = std::async(std::launch::async,
                       [] { return check_q_eigen(1, kReal, 5, mid_spec(), 501); });
  auto n2 = check_q_eigen(2, kReal, 3, loose_spec(), 502);
  auto r1 = n1.get();
  double m1 = max_rel(r1), m2 = max_rel(n2);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(r1) && all_passed(n2) && m1 <= 1e-8 && m2 <= 1e-4 &&
              secs < 600.0;
  std::snprintf(buf, sizeof(buf), "rel(n=1)=%.1e rel(n=2)=%.1e", m1, m2);
  report_line(pass, "transfer-operator eigenvalue", buf, secs, 600.0);
}

void criterion_duality() {
  auto t0 = Clock::now();
  ModelParams pc(Periods(1.0, std::sqrt(2.0)), Complex(0.5, 0.1));
  auto parts = gather({
      [] { return check_duality(2, kReal, 7, mid_spec(), 601); },
      [pc] { return check_duality(2, pc, 3, mid_spec(), 602); },
      [] { return check_duality(3, kReal, 2, loose_spec(), 603); },
  });
  double m2 = 0.0, m3 = 0.0;
  int c2 = 0, c3 = 0;
  for (const auto& r : parts) {
    (r.n == 2 ? m2 : m3) = std::max(r.n == 2 ? m2 : m3, r.rel_err);
    ++(r.n == 2 ? c2 : c3);
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(parts) && c2 == 10 && c3 == 2 && m2 <= 1e-6 && m3 <= 1e-3 &&
              secs < 900.0;
  std::snprintf(buf, sizeof(buf), "rel(n=2)=%.1e rel(n=3)=%.1e", m2, m3);
  report_line(pass, "coordinate/spectral duality", buf, secs, 900.0);
}

void criterion_macdonald() {
  auto t0 = Clock::now();
  ModelParams pm(Periods(0.3, 1.0), 0.4);
  auto parts = gather({
      [pm] { return check_macdonald(1, 1, pm, 5, mid_spec(), 701); },
      [pm] { return check_macdonald(2, 1, pm, 3, loose_spec(), 702); },
      [pm] { return check_macdonald(2, 2, pm, 3, loose_spec(), 703); },
  });
  double m1 = 0.0, m2 = 0.0;
  for (const auto& r : parts) (r.n == 1 ? m1 : m2) = std::max(r.n == 1 ? m1 : m2, r.rel_err);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(parts) && m1 <= 1e-12 && m2 <= 1e-4 && secs < 600.0;
  std::snprintf(buf, sizeof(buf), "rel(n=1)=%.1e rel(n=2)=%.1e", m1, m2);
  report_line(pass, "difference-operator eigenvalue", buf, secs, 600.0);
}

void criterion_symmetry() {
  auto t0 = Clock::now();
  auto parts = gather({
      [] { return check_lambda_symmetry(2, kReal, 3, mid_spec(), 801); },
      [] { return check_lambda_symmetry(3, kReal, 2, loose_spec(), 802); },
  });
  double m2 = 0.0, m3 = 0.0;
  for (const auto& r : parts) (r.n == 2 ? m2 : m3) = std::max(r.n == 2 ? m2 : m3, r.rel_err);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = all_passed(parts) && m2 <= 1e-6 && m3 <= 1e-3 && secs < 600.0;
  std::snprintf(buf, sizeof(buf), "rel(n=2)=%.1e rel(n=3)=%.1e", m2, m3);
  report_line(pass, "spectral permutation symmetry", buf, secs, 600.0);
}

void criterion_kernel_identity() {
  auto t0 = Clock::now();
  Rng rng(901);
  Complex alpha(0.37, 0.11);
  auto draw = [&](int n) {
    std::vector<Complex> v(n);
    for (auto& c : v) c = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5));
    return ComplexTuple(v);
  };
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= n; ++r)
      for (int rep = 0; rep < 200; ++rep) {
        worst = std::max(worst,
                         std::abs(kernel_identity_residual(draw(n), draw(n), alpha, r)));
        if (n >= 2)
          worst = std::max(
              worst, std::abs(kernel_identity_residual(draw(n), draw(n - 1), alpha, r)));
      }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = worst <= 1e-10 && secs < 10.0;
  std::snprintf(buf, sizeof(buf), "residual=%.1e", worst);
  report_line(pass, "trigonometric kernel identity", buf, secs, 10.0);
}

void criterion_bounds() {
  auto t0 = Clock::now();
  bool ok = true;
  // exact small values and the factorial sandwich
  const double exact[] = {0.0, 1.0, 4.0, 15.0, 64.0, 325.0};
  for (int n = 1; n <= 6; ++n) ok = ok && (c_n(n) == exact[n - 1]);
  double fact = 1.0;
  for (int n = 2; n <= 12; ++n) {
    fact *= (n - 1);
    ok = ok && c_n(n) >= fact && c_n(n) < fact * std::numbers::e;
  }
  long violations = 0;
  Rng rng(1001);
  for (long rep = 0; rep < 1000000; ++rep) {
    double y1 = rng.uniform(-5.0, 5.0), y2 = rng.uniform(-5.0, 5.0);
    double y = rng.uniform(-5.0, 5.0), eps = rng.uniform(0.0, 2.0);
    if (!check_triangle_refinement(y1, y2, y, eps)) ++violations;
  }
  for (int n = 2; n <= 6; ++n) {
    Rng r2(1100 + n);
    for (long rep = 0; rep < 100000; ++rep) {
      LevelTuples yy(n);
      for (int k = 0; k < n; ++k) {
        yy[k].resize(k + 1);
        for (auto& v : yy[k]) v = r2.uniform(-4.0, 4.0);
      }
      std::vector<double> t(n);
      for (auto& v : t) v = r2.uniform(-4.0, 4.0);
      if (!check_s_bound(yy, r2.uniform(0.0, 2.0 * (n - 1)))) ++violations;
      if (!check_t_bound(yy, t, r2.uniform(0.0, 1.0))) ++violations;
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = ok && violations == 0 && secs < 120.0;
  std::snprintf(buf, sizeof(buf), "violations=%ld constants %s", violations,
                ok ? "exact" : "WRONG");
  report_line(pass, "combinatorial bound fuzzing", buf, secs, 120.0);
}

void criterion_asymptotics() {
  auto t0 = Clock::now();
  Complex ghat = kReal.g_hat();
  Complex gs = kReal.g_star();
  double nu = kReal.nu_g();
  double worst = 0.0;
  bool pass = true;
  for (double ax : {20.0, 40.0, 80.0})
    for (double sign : {1.0, -1.0}) {
      double x = sign * ax / nu;
      Complex ratio = mu(Complex(x, 0.0), kReal) * std::exp(-kPi * ghat * std::abs(x)) *
                      std::exp(Complex(0.0, -sign) * kPi * ghat * gs * 0.5);
      double dev = std::abs(ratio - 1.0);
      worst = std::max(worst, dev * std::abs(x));
      pass = pass && dev <= 10.0 / std::abs(x);
    }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  pass = pass && secs < 5.0;
  std::snprintf(buf, sizeof(buf), "max |x|*dev=%.2e (allowed 10)", worst);
  report_line(pass, "measure asymptotics", buf, secs, 5.0);
}

void criterion_determinism() {
  auto t0 = Clock::now();
  auto run = [] {
    VerifyConfig cfg;
    cfg.seed = 5;
    cfg.check_filter = {"s2_suite", "qq_commutativity"};
    cfg.max_threads = 4;
    return strip_runtime_fields(reports_to_json_text(run_all(cfg).reports));
  };
  std::string a = run(), b = run();
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = !a.empty() && a == b;
  std::snprintf(buf, sizeof(buf), "bodies %s", pass ? "identical" : "DIFFER");
  report_line(pass, "seeded run determinism", buf, secs, 120.0);
}

}  // namespace

int main() {
  criterion_double_sine();
  criterion_fourier();
  criterion_qq();
  criterion_ql();
  criterion_q_eigen();
  criterion_duality();
  criterion_macdonald();
  criterion_symmetry();
  criterion_kernel_identity();
  criterion_bounds();
  criterion_asymptotics();
  criterion_determinism();
  std::printf("%d of 12 criteria passed\n", 12 - g_failures);
  return g_failures;
}
