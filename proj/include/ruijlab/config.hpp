#ifndef RUIJLAB_CONFIG_HPP
#define RUIJLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ruijlab/model.hpp"
#include "ruijlab/quadrature.hpp"

namespace ruijlab {

// Complex literal in "a+bi" form (also plain "a", "bi", "i", "-i").
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

// Flat key=value file with '#' comments and blank lines; later keys override
// earlier ones.  Throws ParameterError on malformed lines.
std::map<std::string, std::string> parse_key_value_file(const std::string& path);

// Resolved command-line / config-file settings.
struct CliConfig {
  Complex omega1{1.0, 0.0};
  Complex omega2{1.4142135623730951, 0.0};
  Complex g{0.6, 0.0};
  QuadratureSpec spec;
  std::string output_path;
  std::string output_format = "json";  // json | csv
  std::uint64_t seed = 1;
  std::vector<std::string> check_filter;

  ModelParams params() const { return ModelParams(Periods(omega1, omega2), g); }

  // Applies one key=value entry (config-file vocabulary); unknown keys throw.
  void apply(const std::string& key, const std::string& value);
  void load_file(const std::string& path);
};

}  // namespace ruijlab

#endif
