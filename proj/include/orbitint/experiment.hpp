#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "orbitint/heights.hpp"
#include "orbitint/scanner.hpp"

namespace orbitint {

// A validated batch description: a list of jobs plus the run-wide seed and
// resource limits.  `doc` keeps the original document (key order preserved)
// so reports can echo inputs exactly as given.
struct experiment_config {
    nlohmann::ordered_json doc;
    std::uint64_t seed = 0;
    compute_limits limits;
};

// Parse and validate a configuration document.  Top-level fields:
//   jobs  (required array; each entry has "kind" plus per-kind parameters)
//   seed  (optional unsigned integer, default 0)
//   precision_cap_bits / height_budget_bits / degree_budget (optional limits)
// Job kinds: GammaScan, GammaScanNaive, Census, BoundTerm, RemarkGrid,
// InvFunReport, RamGrowth, FuzzSuite.  Every job is checked against its
// kind's schema (required fields present, expressions/points/places/rationals
// parseable, ranges sane) before anything runs; any problem raises
// config_invalid whose index() is the offending job's position (-1 for
// top-level problems).
experiment_config parse_experiment_config(const std::string& json_text);

// Execute every job and assemble one report document.  Jobs run concurrently;
// the report lists them in input order.  A job that fails with a typed error
// is recorded as {"status":"error", ...} without aborting the others.  The
// returned bytes are a deterministic function of (config, seed): exact values
// are serialized symbolically (term lists) alongside decimal enclosures, and
// no wall-clock data enters the document (per-job timings go to stderr).
std::string run_experiment(const experiment_config& cfg);

// Same report as a structured document (run_experiment returns its dump).
nlohmann::ordered_json run_experiment_json(const experiment_config& cfg);

// Per-index verdict table of a scan as CSV with header
//   n,membership,lambda_sum_decimal,threshold_lo,threshold_hi
// (an infinite proximity sum prints "inf").
std::string scan_csv(const scan_report& rep);

}  // namespace orbitint
