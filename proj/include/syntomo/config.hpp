#pragma once

// Run configuration for the command-line surface: a TOML subset parser
// ([profile], [truncation] and [run] tables, unknown keys rejected),
// the invariant suites behind `syntomo run`, and deterministic report
// emission (stable key order, write-then-rename).

#include <string>

#include <json.hpp>

#include "syntomo/pipeline.hpp"

namespace syntomo {

struct RunConfig {
  PipelineConfig pipeline;
  std::string suite = "all";    // operators | rings | homology | chain | herr | all
  std::string format = "json";  // json | table
  std::string out;              // empty: stdout
  int threads = 1;              // accepted for interface stability; execution is sequential

  void validate() const;  // throws config_error naming the offending field
};

// Parse the TOML subset.  Tables: [profile] (kind = "A"|"B", p, e, i),
// [truncation] (M, n_work, slack, margin), [run] (r, d, suite, seed,
// format, out, threads).  Unknown tables or keys throw config_error with
// the field name in the message.
RunConfig parse_run_config(const std::string& toml_text);
RunConfig load_run_config(const std::string& path);

struct SuiteReport {
  nlohmann::json doc;
  bool passed = false;
};

// Run one named invariant suite (or "all") and assemble the report
// document: config echo, per-check results with measured exponents,
// cohomology tables, edge certificates, and a band-doubling stability
// record.
SuiteReport run_suite(const RunConfig& cfg);

// Single cohomology table of one named complex.
SuiteReport cohomology_report(const RunConfig& cfg, const std::string& complex_name);

// Herr complex tables at M and 2M with a stability verdict.
SuiteReport herr_report(const RunConfig& cfg);

// Kummer vs cyclotomic annulus complexes: elementary-divisor multisets
// in the certified degrees (profile B only).
SuiteReport compare_report(const RunConfig& cfg);

// x^2 = rhs over Z_p by the preconditioned contraction, checked against
// exhaustive search modulo p^digits.
SuiteReport solve_implicit_report(uint32_t p, long long rhs, int digits);

// Deterministic serialization of a report document.
std::string render_report(const nlohmann::json& doc, const std::string& format);

// Write content to path via a temporary file and rename, so readers
// never observe a partial report.
void write_report_atomic(const std::string& path, const std::string& content);

}  // namespace syntomo
