#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace denselab {

// One batch of independent trials. Every trial draws its randomness from a
// stream derived from (seed, trial index), so results are identical whatever
// the job count, and rows are emitted in trial order.
struct ExperimentSpec {
  std::string id;                  // see experiment_ids()
  std::string model = "euclidean2";
  long trials = 100;
  std::uint64_t seed = 2026;
  int jobs = 1;
  int word_length = 0;             // 0: the experiment's own default
  double delta = 0.1;              // arc gap for the ping-pong experiments
  int pieces = 2;                  // piece count for the ping-pong experiments
};

struct ExperimentResult {
  std::string id;
  std::string csv_header;
  std::vector<std::string> json_rows;  // one JSON object per trial, in order
  std::vector<std::string> csv_rows;
  std::string summary_json;            // deterministic aggregates, no timing
};

const std::vector<std::string>& experiment_ids();

ExperimentResult run_experiment(const ExperimentSpec& spec);

// writes rows.jsonl, rows.csv and summary.json (all deterministic) plus
// timing.json (wall clock, intentionally quarantined from the rest)
void write_experiment(const ExperimentResult& result, const std::string& out_dir, double wall_ms);

}  // namespace denselab
