#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruijlab/config.hpp"
#include "ruijlab/double_sine.hpp"
#include "ruijlab/model.hpp"
#include "ruijlab/report_io.hpp"
#include "ruijlab/verify.hpp"
#include "ruijlab/wavefunction.hpp"

namespace {

using namespace ruijlab;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ComplexTuple parse_tuple(const std::vector<std::string>& parts) {
  std::vector<Complex> v;
  for (const auto& p : parts) v.push_back(parse_complex(p));
  return ComplexTuple(std::move(v));
}

struct EvalResult {
  Complex value;
  double err_est = 0.0;
};

EvalResult eval_target(const std::string& target, const CliConfig& cfg,
                       const std::string& z_text,
                       const std::vector<std::string>& lambda_text,
                       const std::vector<std::string>& x_text, double eps) {
  if (target == "s2") {
    if (z_text.empty()) throw ParameterError("eval s2 requires --z");
    Complex v = s2(parse_complex(z_text), Periods(cfg.omega1, cfg.omega2), cfg.spec);
    return {v, 1e-12 * std::max(1.0, std::abs(v))};
  }
  ModelParams pars = cfg.params();
  if (target == "mu" || target == "k") {
    if (z_text.empty() && x_text.empty())
      throw ParameterError("eval " + target + " requires --z or --x");
    Complex arg = z_text.empty() ? parse_complex(x_text.at(0)) : parse_complex(z_text);
    Complex v = (target == "mu") ? mu(arg, pars, cfg.spec) : kfun(arg, pars, cfg.spec);
    return {v, 1e-12 * std::max(1.0, std::abs(v))};
  }
  if (target == "khat") {
    if (lambda_text.empty() && z_text.empty())
      throw ParameterError("eval khat requires --lambda or --z");
    Complex arg = lambda_text.empty() ? parse_complex(z_text)
                                      : parse_complex(lambda_text.at(0));
    Complex v = k_hat(arg, pars, cfg.spec);
    return {v, 1e-12 * std::max(1.0, std::abs(v))};
  }
  if (target == "psi" || target == "psi_dual") {
    WaveSpec w;
    w.params = pars;
    w.lambda = parse_tuple(lambda_text);
    w.x = parse_tuple(x_text);
    w.spec = cfg.spec;
    w.eps = eps;
    Estimate e = (target == "psi") ? psi(w) : psi_dual(w);
    return {e.value, e.err_est};
  }
  throw ParameterError("unknown eval target: " + target);
}

int cmd_eval(const CliConfig& cfg, const std::string& target, const std::string& z_text,
             const std::vector<std::string>& lambda_text,
             const std::vector<std::string>& x_text, double eps) {
  auto t0 = Clock::now();
  EvalResult r = eval_target(target, cfg, z_text, lambda_text, x_text, eps);
  double ms = ms_since(t0);
  std::printf("value = %s\n", format_complex(r.value).c_str());
  std::printf("err_est = %.3e\n", r.err_est);
  std::printf("runtime_ms = %.3f\n", ms);
  if (!cfg.output_path.empty()) {
    nlohmann::json j;
    j["command"] = "eval";
    j["target"] = target;
    j["params"] = {{"omega1", {cfg.omega1.real(), cfg.omega1.imag()}},
                   {"omega2", {cfg.omega2.real(), cfg.omega2.imag()}},
                   {"g", {cfg.g.real(), cfg.g.imag()}}};
    if (!z_text.empty()) j["z"] = z_text;
    if (!lambda_text.empty()) j["lambda"] = lambda_text;
    if (!x_text.empty()) j["x"] = x_text;
    j["value"] = {r.value.real(), r.value.imag()};
    j["err_est"] = r.err_est;
    j["runtime_ms"] = ms;
    write_text_atomic(cfg.output_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(const CliConfig& cfg, int threads) {
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.check_filter = cfg.check_filter;
  vc.spec = cfg.spec;
  vc.max_threads = threads;
  VerifyRun run = run_all(vc);

  std::string base = cfg.output_path.empty() ? "verify_report" : cfg.output_path;
  write_reports_json(base + ".json", run.reports);
  write_summary_csv(base + ".csv", run.reports);

  std::printf("checks = %d\n", run.total);
  std::printf("failed = %d\n", run.failed);
  std::printf("max_rel_err = %.6e\n", run.max_rel_err);
  std::printf("report = %s.json / %s.csv\n", base.c_str(), base.c_str());
  return run.passed() ? 0 : 4;
}

int cmd_sweep(const CliConfig& cfg, const std::string& target, const std::string& axis,
              double lo, double hi, int steps, const std::string& z_text,
              const std::vector<std::string>& lambda_text,
              const std::vector<std::string>& x_text, double eps) {
  if (steps <= 0) {
    std::fprintf(stderr, "sweep: --steps must be positive\n");
    return 1;
  }
  std::ostringstream os;
  os << "axis_value,Re,Im,err_est\n";
  char buf[160];
  for (int i = 0; i < steps; ++i) {
    double v = (steps == 1) ? lo : lo + (hi - lo) * double(i) / double(steps - 1);
    CliConfig c = cfg;
    std::string z = z_text;
    std::vector<std::string> lt = lambda_text, xt = x_text;
    std::string vtext = format_complex(Complex(v, 0.0));
    if (axis == "g") {
      c.g = Complex(v, 0.0);
    } else if (axis == "x") {
      if (target == "psi" || target == "psi_dual") {
        if (xt.empty()) throw ParameterError("sweep over x needs --x for the fixed components");
        xt.back() = vtext;
      } else {
        z = vtext;
      }
    } else if (axis == "lambda") {
      if (target == "psi" || target == "psi_dual") {
        if (lt.empty()) throw ParameterError("sweep over lambda needs --lambda");
        lt.back() = vtext;
      } else {
        z = vtext;
      }
    } else {
      throw ParameterError("sweep axis must be one of x, lambda, g");
    }
    EvalResult r = eval_target(target, c, z, lt, xt, eps);
    std::snprintf(buf, sizeof(buf), "%.12g,%.15e,%.15e,%.3e\n", v, r.value.real(),
                  r.value.imag(), r.err_est);
    os << buf;
  }
  if (cfg.output_path.empty())
    std::fputs(os.str().c_str(), stdout);
  else
    write_text_atomic(cfg.output_path, os.str());
  return 0;
}

int cmd_report(const CliConfig& cfg, const std::string& input) {
  std::vector<CheckReport> reports = read_reports_json(input);
  if (cfg.output_format == "csv") {
    std::string csv = summary_csv(reports);
    if (cfg.output_path.empty())
      std::fputs(csv.c_str(), stdout);
    else
      write_text_atomic(cfg.output_path, csv);
    return 0;
  }
  int failed = 0;
  double max_rel = 0.0;
  for (const auto& r : reports) {
    if (!r.passed) ++failed;
    max_rel = std::max(max_rel, r.rel_err);
  }
  std::printf("reports = %zu\n", reports.size());
  std::printf("failed = %d\n", failed);
  std::printf("max_rel_err = %.6e\n", max_rel);
  if (!cfg.output_path.empty()) write_reports_json(cfg.output_path, reports);
  return 0;
}

struct CommonOpts {
  std::string config_file;
  std::string omega1, omega2, g;
  double abs_tol = -1.0, rel_tol = -1.0;
  std::string output, format;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_file, "key=value configuration file");
  sub->add_option("--omega1", o.omega1, "first period (a+bi)");
  sub->add_option("--omega2", o.omega2, "second period (a+bi)");
  sub->add_option("--g", o.g, "coupling (a+bi)");
  sub->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance");
  sub->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
  sub->add_option("--output", o.output, "output file path");
  sub->add_option("--format", o.format, "output format: json or csv");
  sub->add_option("--seed", o.seed, "random seed")->each([&](const std::string&) {
    o.seed_set = true;
  });
}

CliConfig resolve(const CommonOpts& o) {
  CliConfig cfg;
  if (!o.config_file.empty()) cfg.load_file(o.config_file);
  if (!o.omega1.empty()) cfg.omega1 = parse_complex(o.omega1);
  if (!o.omega2.empty()) cfg.omega2 = parse_complex(o.omega2);
  if (!o.g.empty()) cfg.g = parse_complex(o.g);
  if (o.abs_tol > 0.0) cfg.spec.abs_tol = o.abs_tol;
  if (o.rel_tol > 0.0) cfg.spec.rel_tol = o.rel_tol;
  if (!o.output.empty()) cfg.output_path = o.output;
  if (!o.format.empty()) cfg.apply("output_format", o.format);
  if (o.seed_set) cfg.seed = o.seed;
  cfg.spec.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for a quantum integrable many-body system"};
  app.require_subcommand(1);

  CommonOpts eval_o, verify_o, sweep_o, report_o;

  auto* eval = app.add_subcommand("eval", "evaluate a function at a point");
  std::string eval_target;
  std::string z_text;
  std::vector<std::string> lambda_text, x_text;
  double eps = 0.5;
  int n_opt = 0;
  eval->add_option("target", eval_target, "one of s2, mu, k, khat, psi, psi_dual")
      ->required();
  eval->add_option("--z", z_text, "scalar argument (a+bi)");
  eval->add_option("--lambda", lambda_text, "spectral tuple components");
  eval->add_option("--x", x_text, "coordinate tuple components");
  eval->add_option("--n", n_opt, "tuple size (checked against --lambda/--x)");
  eval->add_option("--eps", eps, "strip-budget split in (0,1)");
  add_common(eval, eval_o);

  auto* verify = app.add_subcommand("verify", "run the identity-check suites");
  std::vector<std::string> filter;
  int threads = 0;
  verify->add_option("--filter", filter, "restrict to matching relation ids");
  verify->add_option("--threads", threads, "worker thread cap");
  add_common(verify, verify_o);

  auto* sweep = app.add_subcommand("sweep", "tabulate a function along one axis");
  std::string sweep_target, axis;
  double lo = 0.0, hi = 1.0;
  int steps = 0;
  std::string sz_text;
  std::vector<std::string> slambda_text, sx_text;
  double seps = 0.5;
  sweep->add_option("target", sweep_target, "one of s2, mu, k, khat, psi, psi_dual")
      ->required();
  sweep->add_option("--axis", axis, "x, lambda, or g")->required();
  sweep->add_option("--min", lo, "axis start")->required();
  sweep->add_option("--max", hi, "axis end")->required();
  sweep->add_option("--steps", steps, "number of points")->required();
  sweep->add_option("--z", sz_text, "scalar argument (a+bi)");
  sweep->add_option("--lambda", slambda_text, "spectral tuple components");
  sweep->add_option("--x", sx_text, "coordinate tuple components");
  sweep->add_option("--eps", seps, "strip-budget split in (0,1)");
  add_common(sweep, sweep_o);

  auto* report = app.add_subcommand("report", "summarize a saved report file");
  std::string input;
  report->add_option("input", input, "JSON report file")->required();
  add_common(report, report_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (eval->parsed()) {
      CliConfig cfg = resolve(eval_o);
      if (n_opt > 0 && !lambda_text.empty() && int(lambda_text.size()) != n_opt)
        throw ParameterError("--n does not match the number of --lambda components");
      if (n_opt > 0 && !x_text.empty() && int(x_text.size()) != n_opt)
        throw ParameterError("--n does not match the number of --x components");
      return cmd_eval(cfg, eval_target, z_text, lambda_text, x_text, eps);
    }
    if (verify->parsed()) {
      CliConfig cfg = resolve(verify_o);
      for (const auto& f : filter) cfg.check_filter.push_back(f);
      return cmd_verify(cfg, threads);
    }
    if (sweep->parsed()) {
      CliConfig cfg = resolve(sweep_o);
      return cmd_sweep(cfg, sweep_target, axis, lo, hi, steps, sz_text, slambda_text,
                       sx_text, seps);
    }
    if (report->parsed()) {
      CliConfig cfg = resolve(report_o);
      return cmd_report(cfg, input);
    }
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 2;
  } catch (const ToleranceError& e) {
    std::fprintf(stderr, "tolerance error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
