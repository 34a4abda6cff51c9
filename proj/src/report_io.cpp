#include "ruijlab/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ruijlab {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json report_to_json(const CheckReport& r) {
  json j;
  j["relation_id"] = r.relation_id;
  j["params"] = {{"omega1", complex_to_json(r.params.periods.omega1)},
                 {"omega2", complex_to_json(r.params.periods.omega2)},
                 {"g", complex_to_json(r.params.g)}};
  j["n"] = r.n;
  json sample = json::array();
  for (Complex s : r.sample) sample.push_back(complex_to_json(s));
  j["sample"] = sample;
  j["lhs"] = complex_to_json(r.lhs);
  j["rhs"] = complex_to_json(r.rhs);
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err;
  j["tolerance"] = r.tolerance;
  j["err_budget"] = r.err_budget;
  j["passed"] = r.passed;
  j["runtime_ms"] = r.runtime_ms;
  j["seed"] = r.seed;
  return j;
}

CheckReport report_from_json(const json& j) {
  CheckReport r;
  r.relation_id = j.at("relation_id").get<std::string>();
  const json& p = j.at("params");
  r.params = ModelParams(Periods(complex_from_json(p.at("omega1")),
                                 complex_from_json(p.at("omega2"))),
                         complex_from_json(p.at("g")));
  r.n = j.at("n").get<int>();
  for (const auto& s : j.at("sample")) r.sample.push_back(complex_from_json(s));
  r.lhs = complex_from_json(j.at("lhs"));
  r.rhs = complex_from_json(j.at("rhs"));
  r.abs_err = j.at("abs_err").get<double>();
  r.rel_err = j.at("rel_err").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.err_budget = j.at("err_budget").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

}  // namespace

std::string reports_to_json_text(const std::vector<CheckReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<CheckReport> reports_from_json_text(const std::string& text) {
  json arr = json::parse(text);
  std::vector<CheckReport> out;
  for (const auto& j : arr) out.push_back(report_from_json(j));
  return out;
}

std::string strip_runtime_fields(const std::string& json_text) {
  json arr = json::parse(json_text);
  for (auto& j : arr) j["runtime_ms"] = 0.0;
  return arr.dump(2) + "\n";
}

std::string summary_csv(const std::vector<CheckReport>& reports) {
  struct Row {
    int n = 0;
    double max_rel_err = 0.0;
    double budget = 0.0;
    bool passed = true;
    double runtime_ms = 0.0;
  };
  using Key = std::tuple<std::string, int, std::string>;  // (relation_id, n, hash)
  std::map<Key, Row> rows;
  std::vector<Key> order;
  for (const auto& r : reports) {
    Key key{r.relation_id, r.n, params_hash(r.params)};
    auto it = rows.find(key);
    if (it == rows.end()) {
      it = rows.emplace(key, Row{}).first;
      it->second.n = r.n;
      order.push_back(key);
    }
    Row& row = it->second;
    row.max_rel_err = std::max(row.max_rel_err, r.rel_err);
    row.budget = std::max(row.budget, r.err_budget);
    row.passed = row.passed && r.passed;
    row.runtime_ms += r.runtime_ms;
  }
  std::ostringstream os;
  os << "relation_id,n,params_hash,max_rel_err,budget,passed,runtime_ms\n";
  char buf[128];
  for (const auto& key : order) {
    const Row& row = rows.at(key);
    std::snprintf(buf, sizeof(buf), "%.6e,%.6e,%s,%.3f", row.max_rel_err, row.budget,
                  row.passed ? "true" : "false", row.runtime_ms);
    os << std::get<0>(key) << ',' << row.n << ',' << std::get<2>(key) << ',' << buf
       << '\n';
  }
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + tmp.string());
    os << content;
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_reports_json(const std::string& path, const std::vector<CheckReport>& reports) {
  write_text_atomic(path, reports_to_json_text(reports));
}

std::vector<CheckReport> read_reports_json(const std::string& path) {
  return reports_from_json_text(read_text(path));
}

void write_summary_csv(const std::string& path, const std::vector<CheckReport>& reports) {
  write_text_atomic(path, summary_csv(reports));
}

}  // namespace ruijlab
