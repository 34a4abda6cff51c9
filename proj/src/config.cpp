#include "ruijlab/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ruijlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& text) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ParameterError("not a number: '" + text + "'");
  }
  if (pos != text.size()) throw ParameterError("trailing characters in '" + text + "'");
  return v;
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParameterError("empty complex literal");

  if (s.back() != 'i' && s.back() != 'I') return Complex(parse_real(s), 0.0);

  std::string body = s.substr(0, s.size() - 1);
  // Split at the sign of the imaginary part: the last '+' or '-' that is not
  // the leading sign and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    // purely imaginary: "bi", "i", "-i", "+i"
    if (body.empty() || body == "+") return Complex(0.0, 1.0);
    if (body == "-") return Complex(0.0, -1.0);
    return Complex(0.0, parse_real(body));
  }
  std::string re = body.substr(0, split);
  std::string im = body.substr(split);
  if (im == "+") return Complex(parse_real(re), 1.0);
  if (im == "-") return Complex(parse_real(re), -1.0);
  return Complex(parse_real(re), parse_real(im));
}

std::string format_complex(Complex z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.17g", z.real());
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParameterError("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParameterError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

void CliConfig::apply(const std::string& key, const std::string& value) {
  if (key == "omega1") omega1 = parse_complex(value);
  else if (key == "omega2") omega2 = parse_complex(value);
  else if (key == "g") g = parse_complex(value);
  else if (key == "abs_tol") spec.abs_tol = parse_real(value);
  else if (key == "rel_tol") spec.rel_tol = parse_real(value);
  else if (key == "max_subdivisions") spec.max_subdivisions = static_cast<int>(parse_real(value));
  else if (key == "qmc_samples") spec.qmc_samples = static_cast<int>(parse_real(value));
  else if (key == "strategy") {
    if (value == "nested_adaptive") spec.multi_dim_strategy = MultiDimStrategy::nested_adaptive;
    else if (value == "quasi_monte_carlo") spec.multi_dim_strategy = MultiDimStrategy::quasi_monte_carlo;
    else if (value == "tensor_fixed") spec.multi_dim_strategy = MultiDimStrategy::tensor_fixed;
    else throw ParameterError("unknown strategy: " + value);
  } else if (key == "output_path") output_path = value;
  else if (key == "output_format") {
    if (value != "json" && value != "csv") throw ParameterError("output_format must be json or csv");
    output_format = value;
  } else if (key == "seed") seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "check_filter") {
    check_filter.clear();
    std::istringstream iss(value);
    std::string tok;
    while (std::getline(iss, tok, ',')) {
      tok = trim(tok);
      if (!tok.empty()) check_filter.push_back(tok);
    }
  } else {
    throw ParameterError("unknown config key: " + key);
  }
}

void CliConfig::load_file(const std::string& path) {
  for (const auto& [k, v] : parse_key_value_file(path)) apply(k, v);
}

}  // namespace ruijlab
