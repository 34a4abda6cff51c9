#ifndef RUIJLAB_REPORT_IO_HPP
#define RUIJLAB_REPORT_IO_HPP

#include <string>
#include <vector>

#include "ruijlab/verify.hpp"

namespace ruijlab {

// JSON array serialization of check reports; parse(serialize(r)) reproduces
// every field exactly (doubles are emitted with round-trip precision).
std::string reports_to_json_text(const std::vector<CheckReport>& reports);
std::vector<CheckReport> reports_from_json_text(const std::string& text);

// Same JSON text with runtime fields zeroed (for determinism comparisons).
std::string strip_runtime_fields(const std::string& json_text);

// Per-suite CSV summary; columns:
// relation_id,n,params_hash,max_rel_err,budget,passed,runtime_ms
std::string summary_csv(const std::vector<CheckReport>& reports);

// Writes via a temporary file in the same directory followed by a rename.
void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

void write_reports_json(const std::string& path, const std::vector<CheckReport>& reports);
std::vector<CheckReport> read_reports_json(const std::string& path);
void write_summary_csv(const std::string& path, const std::vector<CheckReport>& reports);

}  // namespace ruijlab

#endif
