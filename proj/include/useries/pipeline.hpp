#pragma once

#include <string>

#include "useries/io.hpp"

namespace useries {

/// Flat run configuration; file format is one `key=value` per line with `#`
/// comments, and every field can be overridden by a CLI flag.
struct RunConfig {
  std::string eps = "1/4";     // rational or decimal string
  int S = 8;                   // series depth (blocks)
  std::int64_t N0 = 3;         // lemma base frequency
  std::int64_t N_cap = std::int64_t(1) << 16;
  double tol = 1e-9;           // quadrature tolerance for reports
  int trials = 5;              // random test sets per verification
  std::uint64_t seed = 0;      // verification RNG seed
  std::string mode = "rearrange";  // rearrange | usual
  int Q = 4;                   // stages (rearrange) / selections (usual)
  std::string out_dir = ".";   // artifact directory
};

Rat config_eps(const RunConfig& c);       // parsed + validated
LemmaConfig config_lemma(const RunConfig& c);
void validate_config(const RunConfig& c);

RunConfig load_config(const std::string& path);
void apply_config_entry(RunConfig& c, const std::string& key,
                        const std::string& value);
std::string config_to_string(const RunConfig& c);

/// Named built-in targets ("zero", "signum", "sawtooth", "f<j>") or a path
/// to a step-function JSON file.
Integrand resolve_target(const std::string& spec);

/// Runs the basic construction on one step function; returns
/// {"output": LemmaOutput, "report": verification report}.
Json cmd_lemma(const RunConfig& c, const StepFunction& f);

struct PipelineArtifacts {
  Json series;
  Json weight;
  Json result;  // rearrangement plan or usual-sense selection
  std::string trace_csv;
  bool pass = true;
};

/// End-to-end run: series to depth S, weight at eps, then the selected mode
/// against the target; deterministic given the config.
PipelineArtifacts cmd_pipeline(const RunConfig& c, const Integrand& target);

/// Writes the artifact files (series.json, weight.json, plan.json or
/// selection.json, trace.csv) under c.out_dir.
void write_artifacts(const RunConfig& c, const PipelineArtifacts& a);

}  // namespace useries
